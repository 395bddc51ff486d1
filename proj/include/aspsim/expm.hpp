#pragma once

#include <functional>

#include <Eigen/Dense>

namespace aspsim {

/// y = H x for a Hermitian operator with real matrix elements.
using HermitianApply = std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>;

struct ExpmOptions {
    double tol = 1e-12;   // a-posteriori Krylov truncation estimate
    int max_krylov = 128; // throws ConvergenceError beyond this
};

/// exp(-i H dt) v by a Lanczos-Krylov expansion. v must be unit norm; the
/// result stays unit norm to machine precision (the small exponential is
/// unitary on the Krylov subspace).
Eigen::VectorXcd expm_apply(const HermitianApply& h, const Eigen::VectorXcd& v, double dt,
                            const ExpmOptions& opts = {});

} // namespace aspsim
