#include "cpd/golden.hpp"

namespace cpd {
namespace golden {

Tensor3 worked_tensor() {
  Eigen::MatrixXd t1(4, 4), t2(4, 4), t3(4, 4), t4(4, 4);
  t1 << 1, 1, 1, 1,
        1, 1, 1, 0,
        1, 1, 1, 0,
        0, 0, 0, 0;
  t2 << 1, 1, 1, 0,
        1, 1, 1, 0,
        1, 4, 1, 0,
        0, 0, 0, 0;
  t3 = t1.transpose();
  t4 << 1, 1, 1, 0,
        1, 1, 3, 0,
        1, 1, 1, 0,
        0, 0, 0, 0;
  return Tensor3::from_slices({t1, t2, t3, t4});
}

Cpd worked_factors() {
  Cpd cpd;
  cpd.A.resize(4, 5);
  cpd.A << 1, 1, 0, 0, 0,
           1, 0, 1, 0, 0,
           1, 0, 0, 1, 0,
           0, 0, 0, 0, 1;
  cpd.B.resize(4, 5);
  cpd.B << 1, 0, 0, 0, 1,
           1, 0, 0, 1, 0,
           1, 0, 1, 0, 0,
           0, 1, 0, 0, 0;
  cpd.C.resize(4, 5);
  cpd.C << 1, 1, 0, 0, 0,
           1, 0, 0, 3, 0,
           1, 0, 0, 0, 1,
           1, 0, 2, 0, 0;
  return cpd;
}

Eigen::MatrixXd worked_detecting() {
  Eigen::MatrixXd m(16, 20);
  m <<  0,  0, 0, 0,  0,  0,  6, 0, 0, 0, 0,  0, 12,  0,  6, 12, 0,  0,  0, 0,
        0,  0, 0, 0,  0,  0,  0, 0,-2, 0, 0,  0,  0,  0, -2,  0, 0, -4, -4, 0,
        0,  0, 0, 0,  0,  3,  0, 0, 0, 0, 0,  6,  0,  6,  3,  0, 0,  0,  0, 0,
        0,  0, 0, 0,  0,  3,  0, 0, 2, 0, 0,  6,  0,  6, 11,  0, 0,  4,  4, 0,
        0, -6, 0, 0, -6, -3, -3, 0, 0, 0, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  0, 2, 0,  0,  1,  0, 2, 1, 0, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  0, 2, 0,  0,  4,  0, 2, 1, 0, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  0, 0, 0,  0,  0,  0, 0, 0, 0, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  0, 0, 4,  0,  0,  2, 0, 2, 4, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  0, 2, 0,  0,  1,  0, 2, 3, 0, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  0, 2, 0,  0,  1,  0, 2, 1, 0, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  0, 0, 0,  0,  0,  0, 0, 0, 0, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  6, 0, 4,  6,  3, 11, 0, 2, 4, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  0, 0, 0,  0,  0,  0, 0, 0, 0, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  0, 0, 0,  0,  0,  0, 0, 0, 0, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0,
        0,  0, 0, 0,  0,  0,  0, 0, 0, 0, 0,  0,  0,  0,  0,  0, 0,  0,  0, 0;
  return -m;
}

Eigen::MatrixXd worked_kernel() {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(20, 10);
  // Zero columns of the detecting matrix.
  w(0, 0) = 1;    // triple (1,1,1)
  w(10, 1) = 1;   // triple (2,2,2)
  w(16, 2) = 1;   // triple (3,3,3)
  w(19, 3) = 1;   // triple (4,4,4)
  // Pairs of equal columns.
  w(1, 4) = 1;  w(4, 4) = -1;    // (1,1,2) - (1,2,2)
  w(3, 5) = 1;  w(9, 5) = -1;    // (1,1,4) - (1,4,4)
  w(2, 6) = 1;  w(7, 6) = -1;    // (1,1,3) - (1,3,3)
  w(12, 7) = 1; w(15, 7) = -1;   // (2,2,4) - (2,4,4)
  w(11, 8) = 1; w(13, 8) = -1;   // (2,2,3) - (2,3,3)
  w(17, 9) = 1; w(18, 9) = -1;   // (3,3,4) - (3,4,4)
  return w;
}

Eigen::MatrixXd worked_f() {
  Eigen::MatrixXd f(4, 10);
  f << -1, -1, 0, -1,  0,  0,  0, -1,  0,  0,
       0,  1, 0,  0, -1,  1,  0,  0,  0, -1,
       0,  0, 0,  1,  0, -1, -1,  0, -1,  0,
       1,  0, 1,  0,  0,  0,  0,  0,  1,  1;
  return f;
}

}  // namespace golden
}  // namespace cpd
