#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace fracwave {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;

}  // namespace fracwave
