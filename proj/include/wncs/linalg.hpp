#pragma once

#include <Eigen/Dense>

namespace wncs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

}  // namespace wncs
