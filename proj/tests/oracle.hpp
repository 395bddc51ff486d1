#pragma once

// Brute-force Fock-space reference implementations for tests. Everything here
// works on explicit 2^n x 2^n matrices built from bit manipulation alone, so
// it shares no code path with the Slater-Condon assembly, the Jordan-Wigner
// mapping, or the Pauli algebra it is used to check.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "aspsim/integrals.hpp"

namespace oracle {

/// a+_p as a dense matrix: a+_p|n> = (-1)^(sum_{j<p} n_j) (1 - n_p) |n + e_p>.
inline Eigen::MatrixXd creation(int p, int n) {
    const long d = 1L << n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (long b = 0; b < d; ++b) {
        if ((b >> p) & 1) continue;
        int parity = __builtin_popcountl(b & ((1L << p) - 1));
        m(b | (1L << p), b) = (parity & 1) ? -1.0 : 1.0;
    }
    return m;
}

inline Eigen::MatrixXd annihilation(int p, int n) { return creation(p, n).transpose(); }

/// Full-space H = sum h_pq a+_p a_q + 1/2 sum <pq|rs> a+_p a+_q a_s a_r.
inline Eigen::MatrixXd full_hamiltonian(const aspsim::IntegralSet& ints) {
    const int n = ints.n_so();
    const long d = 1L << n;
    std::vector<Eigen::MatrixXd> cre, ann;
    for (int p = 0; p < n; ++p) {
        cre.push_back(creation(p, n));
        ann.push_back(annihilation(p, n));
    }
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (ints.h(p, q) != 0.0) h += ints.h(p, q) * cre[p] * ann[q];
    ints.for_each_g([&](int p, int q, int r, int s, double v) {
        h += 0.5 * v * cre[p] * cre[q] * ann[s] * ann[r];
    });
    return h;
}

/// Number operator sum_p a+_p a_p.
inline Eigen::MatrixXd number_operator(int n) {
    const long d = 1L << n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (long b = 0; b < d; ++b) m(b, b) = __builtin_popcountl(b);
    return m;
}

/// Restriction of a full-space matrix to a list of basis words.
inline Eigen::MatrixXd restrict_to(const Eigen::MatrixXd& m,
                                   const std::vector<std::uint64_t>& words) {
    const int k = static_cast<int>(words.size());
    Eigen::MatrixXd out(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            out(i, j) = m(static_cast<long>(words[i]), static_cast<long>(words[j]));
    return out;
}

/// Random 2-orbital spatial set with the built-in sparsity pattern (the six
/// symmetry-distinct slots), expanded to spin orbitals.
inline aspsim::IntegralSet random_two_orbital_set(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    aspsim::SpatialIntegrals sp(2, 2, 0);
    sp.set_h_core(0, 0, u(rng) - 0.8);
    sp.set_h_core(1, 1, u(rng) - 0.6);
    sp.set_eri(0, 0, 0, 0, 0.3 + 0.3 * std::abs(u(rng)));
    sp.set_eri(1, 1, 1, 1, 0.3 + 0.3 * std::abs(u(rng)));
    sp.set_eri(0, 0, 1, 1, 0.2 + 0.3 * std::abs(u(rng)));
    sp.set_eri(0, 1, 0, 1, 0.02 + 0.2 * std::abs(u(rng)));
    return aspsim::spatial_to_spin(sp);
}

/// Random spatial set on n_orb orbitals with a dense symmetric pattern
/// (includes mixed-index integrals like (01|00)).
inline aspsim::IntegralSet random_dense_set(int n_orb, int n_elec, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    aspsim::SpatialIntegrals sp(n_orb, n_elec, 0);
    for (int p = 0; p < n_orb; ++p)
        for (int q = 0; q <= p; ++q) sp.set_h_core(p, q, 0.5 * u(rng) - (p == q ? 0.7 : 0.0));
    for (int p = 0; p < n_orb; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r < n_orb; ++r)
                for (int s = 0; s <= r; ++s) sp.set_eri(p, q, r, s, 0.25 * u(rng));
    return aspsim::spatial_to_spin(sp);
}

} // namespace oracle
