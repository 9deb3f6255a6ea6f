#pragma once

#include <Eigen/Dense>

namespace dunkl {

// Fixed upper bound on the ambient dimension keeps points and group
// matrices on the stack (the Monte Carlo inner loop allocates nothing).
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

}  // namespace dunkl
