#pragma once

#include <Eigen/Dense>

namespace aha::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace aha::nn
