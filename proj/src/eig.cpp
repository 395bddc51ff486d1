#include "aspsim/eig.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

#include "aspsim/errors.hpp"

namespace aspsim {

void dense_eigh(const Eigen::MatrixXd& a, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("dense_eigh: matrix must be square");
    if (n <= 32) { // below the LAPACK call-overhead crossover
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        values = es.eigenvalues();
        vectors = es.eigenvectors();
        return;
    }
    vectors = a;
    values.resize(n);
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, vectors.data(), n, values.data());
    if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
}

void dense_eigh(const Eigen::MatrixXcd& a, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("dense_eigh: matrix must be square");
    if (n <= 32) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
        values = es.eigenvalues();
        vectors = es.eigenvectors();
        return;
    }
    // zheevr rather than zheevd: the OpenBLAS zheevd shipped here returns
    // non-orthonormal eigenvectors for generic dense Hermitian input.
    Eigen::MatrixXcd work = a;
    vectors.resize(n, n);
    values.resize(n);
    int m = 0;
    std::vector<int> isuppz(2 * static_cast<std::size_t>(n));
    int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n,
                              reinterpret_cast<lapack_complex_double*>(work.data()), n, 0.0, 0.0,
                              0, 0, LAPACKE_dlamch('S'), &m,
                              values.data(),
                              reinterpret_cast<lapack_complex_double*>(vectors.data()), n,
                              isuppz.data());
    if (info != 0 || m != n) throw std::runtime_error("zheevr failed, info=" + std::to_string(info));
}

Eigen::VectorXd dense_eigvals(const Eigen::MatrixXd& a) {
    Eigen::MatrixXd work = a;
    Eigen::VectorXd values(a.rows());
    int n = static_cast<int>(a.rows());
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, values.data());
    if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
    return values;
}

Eigen::VectorXd dense_eigvals(const Eigen::MatrixXcd& a) {
    Eigen::MatrixXcd work = a;
    Eigen::VectorXd values(a.rows());
    int n = static_cast<int>(a.rows());
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n,
                              reinterpret_cast<lapack_complex_double*>(work.data()), n,
                              values.data());
    if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
    return values;
}

void fix_phase(Eigen::VectorXd& v) {
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            imax = i;
        }
    if (v[imax] < 0.0) v = -v;
}

std::vector<std::pair<double, Eigen::VectorXd>>
lanczos_lowest(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
               int dim, int k, double tol, int max_iter) {
    if (k < 1 || k > dim) throw std::invalid_argument("lanczos_lowest: bad k");
    const int m_max = std::min(dim, max_iter);

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(m_max);
    // Fixed-seed start vector: deterministic, and not symmetry-adapted (a
    // structured start can be exactly orthogonal to the ground state).
    std::mt19937 rng(0x5eeded);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
    v.normalize();
    std::vector<double> alpha, beta;
    Eigen::VectorXd w(dim);

    double last_residual = 0.0;
    for (int m = 0; m < m_max; ++m) {
        basis.push_back(v);
        apply(v, w);
        double a = v.dot(w);
        alpha.push_back(a);
        w -= a * v;
        if (m > 0) w -= beta.back() * basis[m - 1];
        // full reorthogonalization, twice
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) w -= (b.dot(w)) * b;
        double bnorm = w.norm();

        const int mm = m + 1;
        bool check = (mm >= k + 2) || (mm == dim);
        if (check || bnorm < 1e-13) {
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(mm, mm);
            for (int i = 0; i < mm; ++i) t(i, i) = alpha[i];
            for (int i = 0; i + 1 < mm; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
            Eigen::VectorXd tv;
            Eigen::MatrixXd tq;
            dense_eigh(t, tv, tq);
            // residual of the k-th lowest Ritz pair: |beta_m * last component|
            double res = 0.0;
            for (int j = 0; j < std::min(k, mm); ++j)
                res = std::max(res, std::abs(bnorm * tq(mm - 1, j)));
            last_residual = res;
            if ((res < tol && mm >= k) || bnorm < 1e-13 || mm == dim) {
                if (mm < k)
                    throw ConvergenceError("lanczos: Krylov space smaller than requested k", res);
                std::vector<std::pair<double, Eigen::VectorXd>> out;
                for (int j = 0; j < k; ++j) {
                    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
                    for (int i = 0; i < mm; ++i) x += tq(i, j) * basis[i];
                    x.normalize();
                    fix_phase(x);
                    out.emplace_back(tv[j], x);
                }
                return out;
            }
        }
        if (bnorm < 1e-13) break;
        beta.push_back(bnorm);
        v = w / bnorm;
    }
    throw ConvergenceError("lanczos: no convergence within max iterations", last_residual);
}

} // namespace aspsim
