#pragma once

#include <span>

#include <Eigen/Dense>

namespace speedlimit {

/// Central finite-difference stencils on a uniform grid whose ghost nodes
/// outside the grid are held at zero.
///
/// Supported orders of accuracy are 2, 4, 6 and 8. Coefficients are listed
/// for offsets 1..order/2 (first derivative, antisymmetric) and 0..order/2
/// (second derivative, symmetric).
std::span<const double> first_derivative_coefficients(int order);
std::span<const double> second_derivative_coefficients(int order);

bool is_supported_stencil_order(int order);

/// Dense (n x n) first-derivative matrix with spacing h. Exactly
/// antisymmetric.
Eigen::MatrixXd first_derivative_matrix(Eigen::Index n, double h, int order);

/// Dense (n x n) second-derivative matrix with spacing h. Exactly symmetric.
Eigen::MatrixXd second_derivative_matrix(Eigen::Index n, double h, int order);

}  // namespace speedlimit
