#include "cpd/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cpd/errors.hpp"

namespace cpd {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw CpdError(Errc::IoError, "cannot open '" + path + "' for reading");
  }
  return in;
}

double read_value(std::istream& in, const std::string& path) {
  double value = 0.0;
  if (!(in >> value)) {
    throw CpdError(Errc::FormatError,
                   "'" + path + "': expected a numeric value");
  }
  return value;
}

int read_positive_int(std::istream& in, const std::string& path,
                      const char* what) {
  long long value = 0;
  if (!(in >> value) || value < 1 || value > 1'000'000) {
    throw CpdError(Errc::FormatError, "'" + path + "': bad " +
                                          std::string(what) + " field");
  }
  return static_cast<int>(value);
}

void expect_no_trailing(std::istream& in, const std::string& path) {
  std::string token;
  if (in >> token) {
    throw CpdError(Errc::FormatError,
                   "'" + path + "': trailing content '" + token + "'");
  }
}

void read_matrix_block(std::istream& in, const std::string& path,
                       const char* label, Eigen::MatrixXd& out) {
  std::string token;
  if (!(in >> token) || token != label) {
    throw CpdError(Errc::FormatError, "'" + path + "': expected block '" +
                                          std::string(label) + "'");
  }
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) = read_value(in, path);
    }
  }
}

}  // namespace

std::string format_value(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

Tensor3 read_tensor(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string magic;
  if (!(in >> magic) || magic != "tensor3") {
    throw CpdError(Errc::FormatError,
                   "'" + path + "': missing 'tensor3' header");
  }
  const int i = read_positive_int(in, path, "I");
  const int j = read_positive_int(in, path, "J");
  const int k = read_positive_int(in, path, "K");
  if (static_cast<long long>(i) * j * k > 100'000'000LL) {
    throw CpdError(Errc::FormatError, "'" + path + "': tensor too large");
  }
  Tensor3 t(i, j, k);
  for (int kk = 0; kk < k; ++kk) {
    for (int ii = 0; ii < i; ++ii) {
      for (int jj = 0; jj < j; ++jj) {
        t.set(ii, jj, kk, read_value(in, path));
      }
    }
  }
  expect_no_trailing(in, path);
  return t;
}

void write_tensor(const std::string& path, const Tensor3& t) {
  std::ostringstream out;
  out << "tensor3 " << t.extent1() << ' ' << t.extent2() << ' '
      << t.extent3() << '\n';
  for (int k = 0; k < t.extent3(); ++k) {
    for (int i = 0; i < t.extent1(); ++i) {
      for (int j = 0; j < t.extent2(); ++j) {
        if (j > 0) out << ' ';
        out << format_value(t.at(i, j, k));
      }
      out << '\n';
    }
  }
  std::ofstream file(path);
  if (!file || !(file << out.str()) || !file.flush()) {
    throw CpdError(Errc::IoError, "cannot write '" + path + "'");
  }
}

Cpd read_factors(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string magic;
  if (!(in >> magic) || magic != "cpd") {
    throw CpdError(Errc::FormatError, "'" + path + "': missing 'cpd' header");
  }
  const int i = read_positive_int(in, path, "I");
  const int j = read_positive_int(in, path, "J");
  const int k = read_positive_int(in, path, "K");
  const int r = read_positive_int(in, path, "R");
  Cpd cpd;
  cpd.A.resize(i, r);
  cpd.B.resize(j, r);
  cpd.C.resize(k, r);
  read_matrix_block(in, path, "A", cpd.A);
  read_matrix_block(in, path, "B", cpd.B);
  read_matrix_block(in, path, "C", cpd.C);
  expect_no_trailing(in, path);
  return cpd;
}

void write_factors(const std::string& path, const Cpd& cpd) {
  std::ostringstream out;
  out << "cpd " << cpd.A.rows() << ' ' << cpd.B.rows() << ' ' << cpd.C.rows()
      << ' ' << cpd.rank() << '\n';
  const auto write_block = [&out](const char* label,
                                  const Eigen::MatrixXd& m) {
    out << label << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (j > 0) out << ' ';
        out << format_value(m(i, j));
      }
      out << '\n';
    }
  };
  write_block("A", cpd.A);
  write_block("B", cpd.B);
  write_block("C", cpd.C);
  std::ofstream file(path);
  if (!file || !(file << out.str()) || !file.flush()) {
    throw CpdError(Errc::IoError, "cannot write '" + path + "'");
  }
}

}  // namespace cpd
