#pragma once

#include <Eigen/Dense>

namespace longipred {

using Scalar = double;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;

}  // namespace longipred
