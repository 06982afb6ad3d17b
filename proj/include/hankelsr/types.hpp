#pragma once

#include <Eigen/Core>
#include <complex>

namespace hankelsr {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

} // namespace hankelsr
