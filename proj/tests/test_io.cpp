#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cpd/errors.hpp"
#include "cpd/io.hpp"
#include "cpd/rng.hpp"
#include "cpd/tensor.hpp"

namespace {

using cpd::Cpd;
using cpd::CpdError;
using cpd::Errc;
using cpd::read_factors;
using cpd::read_tensor;
using cpd::Rng;
using cpd::Tensor3;
using cpd::write_factors;
using cpd::write_tensor;

class IoTest : public ::testing::Test {
 protected:
  std::string path(const std::string& name) {
    return ::testing::TempDir() + "cpd_io_" + name;
  }

  void write_text(const std::string& file, const std::string& text) {
    std::ofstream out(file);
    out << text;
  }

  void TearDown() override {
    for (const auto& f : created_) std::remove(f.c_str());
  }

  std::string track(const std::string& file) {
    created_.push_back(file);
    return file;
  }

  std::vector<std::string> created_;
};

TEST_F(IoTest, TensorRoundTripIsExact) {
  Rng rng(81);
  Tensor3 t(3, 4, 2);
  for (int k = 0; k < 2; ++k) t.set_slice(k, rng.normal_matrix(3, 4));
  // Values designed to expose short-format rounding.
  t.set(0, 0, 0, 1.0 / 3.0);
  t.set(1, 2, 1, -0.1);
  t.set(2, 3, 0, 1e-300);
  t.set(2, 0, 1, 3.141592653589793);
  const std::string file = track(path("tensor_roundtrip.txt"));
  write_tensor(file, t);
  const Tensor3 back = read_tensor(file);
  ASSERT_EQ(back.extent1(), 3);
  ASSERT_EQ(back.extent2(), 4);
  ASSERT_EQ(back.extent3(), 2);
  EXPECT_EQ((back.data() - t.data()).norm(), 0.0) << "round trip must be exact";
}

TEST_F(IoTest, TensorHeaderFormat) {
  Tensor3 t(2, 3, 1);
  t.set(1, 2, 0, 42.5);
  const std::string file = track(path("tensor_header.txt"));
  write_tensor(file, t);
  std::ifstream in(file);
  std::string word;
  int i = 0, j = 0, k = 0;
  in >> word >> i >> j >> k;
  EXPECT_EQ(word, "tensor3");
  EXPECT_EQ(i, 2);
  EXPECT_EQ(j, 3);
  EXPECT_EQ(k, 1);
  double value = 0.0;
  for (int n = 0; n < 6; ++n) in >> value;
  EXPECT_DOUBLE_EQ(value, 42.5);  // last value: row-major slice order
}

TEST_F(IoTest, MissingFileIsIoError) {
  try {
    read_tensor(path("does_not_exist.txt"));
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::IoError);
    EXPECT_TRUE(e.is_input_error());
  }
}

TEST_F(IoTest, BadHeaderIsFormatError) {
  const std::string file = track(path("bad_header.txt"));
  write_text(file, "matrix 2 2 2\n1 2 3 4 5 6 7 8\n");
  try {
    read_tensor(file);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::FormatError);
  }
}

TEST_F(IoTest, TruncatedValuesIsFormatError) {
  const std::string file = track(path("truncated.txt"));
  write_text(file, "tensor3 2 2 2\n1 2 3 4 5\n");
  EXPECT_THROW(read_tensor(file), CpdError);
}

TEST_F(IoTest, GarbageValueIsFormatError) {
  const std::string file = track(path("garbage.txt"));
  write_text(file, "tensor3 1 1 2\n1.5 banana\n");
  try {
    read_tensor(file);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::FormatError);
  }
}

TEST_F(IoTest, NonPositiveDimensionIsFormatError) {
  const std::string file = track(path("bad_dims.txt"));
  write_text(file, "tensor3 0 2 2\n");
  EXPECT_THROW(read_tensor(file), CpdError);
}

TEST_F(IoTest, FactorsRoundTripIsExact) {
  Rng rng(82);
  Cpd cpd;
  cpd.A = rng.normal_matrix(3, 2);
  cpd.B = rng.normal_matrix(4, 2);
  cpd.C = rng.normal_matrix(5, 2);
  const std::string file = track(path("factors_roundtrip.txt"));
  write_factors(file, cpd);
  const Cpd back = read_factors(file);
  EXPECT_EQ((back.A - cpd.A).norm(), 0.0);
  EXPECT_EQ((back.B - cpd.B).norm(), 0.0);
  EXPECT_EQ((back.C - cpd.C).norm(), 0.0);
}

TEST_F(IoTest, FactorsHeaderFormat) {
  Cpd cpd;
  cpd.A = Eigen::MatrixXd::Identity(2, 2);
  cpd.B = Eigen::MatrixXd::Identity(3, 2);
  cpd.C = Eigen::MatrixXd::Identity(2, 2);
  const std::string file = track(path("factors_header.txt"));
  write_factors(file, cpd);
  std::ifstream in(file);
  std::string word;
  int i = 0, j = 0, k = 0, r = 0;
  in >> word >> i >> j >> k >> r;
  EXPECT_EQ(word, "cpd");
  EXPECT_EQ(i, 2);
  EXPECT_EQ(j, 3);
  EXPECT_EQ(k, 2);
  EXPECT_EQ(r, 2);
}

TEST_F(IoTest, FactorsBadHeaderIsFormatError) {
  const std::string file = track(path("factors_bad.txt"));
  write_text(file, "tensor3 2 2 2 2\n");
  try {
    read_factors(file);
    FAIL() << "expected CpdError";
  } catch (const CpdError& e) {
    EXPECT_EQ(e.code(), Errc::FormatError);
  }
}

TEST(FormatValue, RoundTripsThroughParsing) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 3.141592653589793, 1e300,
                   -0.0, 42.0}) {
    const std::string s = cpd::format_value(v);
    EXPECT_EQ(std::stod(s), v) << "formatted as " << s;
  }
}

}  // namespace
