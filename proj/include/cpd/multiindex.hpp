#ifndef CPD_MULTIINDEX_HPP
#define CPD_MULTIINDEX_HPP

#include <cstdint>
#include <vector>

namespace cpd {

/// Kind of a length-k tuple family over {1, ..., n}:
///  - Strict:        strictly increasing tuples, C(n, k) of them;
///  - NonDecreasing: non-decreasing tuples, C(n + k - 1, k) of them;
///  - All:           every tuple, n^k of them.
/// Families are ordered lexicographically and ranked 1-based.
enum class IndexKind { Strict, NonDecreasing, All };

/// C(n, k) with overflow checking; throws CpdError(Overflow) if the value
/// does not fit in a signed 64-bit integer, CpdError(InvalidDims) for n < 0
/// or k < 0.  C(n, k) = 0 when k > n.
long long binomial(int n, int k);

/// \brief One enumerated tuple family with O(1) rank/unrank by lookup.
///
/// Entries are 1-based values in {1..n}; tuples are stored in lexicographic
/// order and ranks are 1-based.
class IndexFamily {
 public:
  /// Enumerates the family of length-k tuples over {1..n}.  Requires
  /// k >= 1 and n >= 1 (CpdError(InvalidDims) otherwise); a Strict family
  /// with k > n is empty.  Throws CpdError(TooLarge) if the family would
  /// exceed 50 million tuples.
  static IndexFamily enumerate(IndexKind kind, int k, int n);

  IndexKind kind() const { return kind_; }
  int tuple_length() const { return k_; }
  int ground_size() const { return n_; }
  long long size() const { return static_cast<long long>(tuples_.size()); }

  /// Tuple at 1-based rank i; CpdError(NotMember) when out of range.
  const std::vector<int>& tuple(long long i) const;

  /// 1-based rank of a tuple; CpdError(NotMember) if the tuple does not
  /// belong to the family (wrong length, out-of-range entries, or wrong
  /// ordering for the kind).
  long long rank(const std::vector<int>& t) const;

  bool contains(const std::vector<int>& t) const;

  const std::vector<std::vector<int>>& tuples() const { return tuples_; }

 private:
  IndexFamily(IndexKind kind, int k, int n) : kind_(kind), k_(k), n_(n) {}

  IndexKind kind_;
  int k_;
  int n_;
  std::vector<std::vector<int>> tuples_;
};

/// All k! orderings of the entries of t obtained by permuting positions;
/// repeated values yield repeated tuples (the list always has exactly
/// (length of t)! entries).  Requires 1 <= length <= 10.
std::vector<std::vector<int>> multiset_permutations(const std::vector<int>& t);

/// Sorts a copy of t into non-decreasing order.
std::vector<int> sort_tuple(const std::vector<int>& t);

}  // namespace cpd

#endif  // CPD_MULTIINDEX_HPP
