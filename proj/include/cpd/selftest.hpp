#ifndef CPD_SELFTEST_HPP
#define CPD_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cpd {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;  ///< first failure description, empty when passed
};

/// Runs the eleven seeded property suites (each on instances_per_suite
/// randomly generated instances) and returns one result per suite:
///   1 compound_transpose_diag    transpose/diagonal/identity laws of minors
///   2 compound_product           multiplicativity of the compound
///   3 symmetrizer_selector       symmetrization/selection matrix algebra
///   4 null_basis_kr_power_rank   minor-vector matrix k-rank and power rank
///   5 permanental_stack_kernel   detecting-matrix kernel dimension and gap
///   6 null_basis_orthogonality   orthogonality/normal laws of minor vectors
///   7 null_basis_zero_pattern    zero patterns of C' B rows
///   8 polarized_compound_laws    multilinearity/symmetry/diagonal laws
///   9 polarized_product_rule     factored form on composed slices
///  10 detecting_factorization    detecting matrix as Khatri-Rao product
///  11 pair_rank_union            pair rank tests, counts, and solvability
std::vector<SuiteResult> run_property_suites(int instances_per_suite = 20);

/// Quick: the property suites at 20 instances each.  Full: 40 instances
/// plus the frozen-reference end-to-end checks.  Prints one PASS/FAIL line
/// per item to out; returns true when everything passed.
bool run_selftest(bool full, std::ostream& out);

}  // namespace cpd

#endif  // CPD_SELFTEST_HPP
