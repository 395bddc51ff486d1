#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace aspsim {

/// Full eigendecomposition of a real symmetric matrix (LAPACK dsyevd).
/// Eigenvalues ascending, eigenvectors in columns.
void dense_eigh(const Eigen::MatrixXd& a, Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

/// Full eigendecomposition of a complex Hermitian matrix (LAPACK zheevd).
void dense_eigh(const Eigen::MatrixXcd& a, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors);

Eigen::VectorXd dense_eigvals(const Eigen::MatrixXd& a);
Eigen::VectorXd dense_eigvals(const Eigen::MatrixXcd& a);

/// Sign convention for real eigenvectors: largest-magnitude component positive.
void fix_phase(Eigen::VectorXd& v);

/// k lowest eigenpairs of a Hermitian operator given as y = A x, by Lanczos
/// with full reorthogonalization. Residual tolerance is ||A v - lambda v||.
/// Throws ConvergenceError if the residuals do not reach tol.
std::vector<std::pair<double, Eigen::VectorXd>>
lanczos_lowest(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
               int dim, int k, double tol = 1e-10, int max_iter = 400);

} // namespace aspsim
