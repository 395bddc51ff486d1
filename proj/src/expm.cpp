#include "aspsim/expm.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "aspsim/eig.hpp"
#include "aspsim/errors.hpp"

namespace aspsim {

Eigen::VectorXcd expm_apply(const HermitianApply& h, const Eigen::VectorXcd& v, double dt,
                            const ExpmOptions& opts) {
    const long dim = v.size();
    if (std::abs(v.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("expm_apply: state must be unit norm");
    if (dt == 0.0) return v;

    const int m_cap = static_cast<int>(std::min<long>(opts.max_krylov, dim));
    std::vector<Eigen::VectorXcd> basis;
    basis.reserve(m_cap);
    std::vector<double> alpha, beta;
    Eigen::VectorXcd w(dim), q = v;

    auto small_expm_e1 = [&](int m, double& trunc_est) {
        // exp(-i T dt) e1 for the m x m tridiagonal T
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) t(i, i) = alpha[i];
        for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
        Eigen::VectorXd tv;
        Eigen::MatrixXd tq;
        dense_eigh(t, tv, tq);
        Eigen::VectorXcd phases(m);
        for (int i = 0; i < m; ++i)
            phases[i] = std::exp(std::complex<double>(0.0, -tv[i] * dt)) * tq(0, i);
        Eigen::VectorXcd y = tq.cast<std::complex<double>>() * phases;
        trunc_est = std::abs(y[m - 1]);
        return y;
    };

    for (int m = 1; m <= m_cap; ++m) {
        basis.push_back(q);
        h(q, w);
        double a = std::real(q.dot(w));
        alpha.push_back(a);
        w -= a * q;
        if (m >= 2) w -= beta[m - 2] * basis[m - 2];
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) w -= b.dot(w) * b;
        double bnorm = w.norm();

        bool breakdown = bnorm < 1e-14;
        if (breakdown || m >= 2 || m == m_cap || m == dim) {
            double trunc = 0.0;
            Eigen::VectorXcd y = small_expm_e1(m, trunc);
            double est = breakdown ? 0.0 : bnorm * std::abs(trunc) * std::abs(dt);
            if (breakdown || est < opts.tol || m == dim) {
                Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
                for (int i = 0; i < m; ++i) out += y[i] * basis[i];
                return out;
            }
            if (m == m_cap)
                throw ConvergenceError("expm_apply: Krylov space exhausted before convergence",
                                       est);
        }
        beta.push_back(bnorm);
        q = w / bnorm;
    }
    throw ConvergenceError("expm_apply: Krylov space exhausted before convergence", 1.0);
}

} // namespace aspsim
