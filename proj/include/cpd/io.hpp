#ifndef CPD_IO_HPP
#define CPD_IO_HPP

#include <string>

#include "cpd/tensor.hpp"

namespace cpd {

/// Text tensor format:
///   tensor3 I J K
/// followed by I*J*K whitespace-separated reals, slice by slice (k
/// outermost), each slice row by row.  Values are written with 17
/// significant digits so doubles round-trip exactly.
Tensor3 read_tensor(const std::string& path);
void write_tensor(const std::string& path, const Tensor3& t);

/// Text factor format:
///   cpd I J K R
///   A   (I lines of R values)
///   B   (J lines of R values)
///   C   (K lines of R values)
Cpd read_factors(const std::string& path);
void write_factors(const std::string& path, const Cpd& cpd);

/// Formats one double with 17 significant digits (shortest exact form
/// printf offers portably).
std::string format_value(double value);

}  // namespace cpd

#endif  // CPD_IO_HPP
