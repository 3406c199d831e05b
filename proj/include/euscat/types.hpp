#ifndef EUSCAT_TYPES_HPP
#define EUSCAT_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace euscat {

using Complex = std::complex<double>;
using Eigen::Matrix4d;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::Vector4d;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

}  // namespace euscat

#endif
