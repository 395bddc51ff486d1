#include "aspsim/fermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "aspsim/eig.hpp"

namespace aspsim {

namespace {

int popcount(std::uint64_t w) { return std::popcount(w); }

std::uint64_t low_mask(int orb) { return (std::uint64_t{1} << orb) - 1; }

/// Sign of removing (occupied) / adding (empty) orbital `orb` from `word`,
/// i.e. the parity of occupied orbitals below it. Mutates the word.
int apply_op_phase(std::uint64_t& word, int orb) {
    int sign = (popcount(word & low_mask(orb)) & 1) ? -1 : 1;
    word ^= (std::uint64_t{1} << orb);
    return sign;
}

std::vector<int> occupied_list(std::uint64_t w, int n_so) {
    std::vector<int> occ;
    for (int i = 0; i < n_so; ++i)
        if ((w >> i) & 1) occ.push_back(i);
    return occ;
}

void combinations(const std::vector<int>& pool, int choose,
                  const std::function<void(std::uint64_t)>& fn) {
    const int n = static_cast<int>(pool.size());
    if (choose < 0 || choose > n) return;
    std::vector<int> idx(choose);
    for (int i = 0; i < choose; ++i) idx[i] = i;
    while (true) {
        std::uint64_t w = 0;
        for (int i : idx) w |= std::uint64_t{1} << pool[i];
        fn(w);
        int i = choose - 1;
        while (i >= 0 && idx[i] == n - choose + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < choose; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

// ---------------------------------------------------------------------------
// DeterminantBasis

DeterminantBasis::DeterminantBasis(Sector sector, std::vector<Spin> spin_of,
                                   std::vector<std::uint64_t> dets)
    : sector_(sector), spin_of_(std::move(spin_of)), dets_(std::move(dets)) {
    index_.reserve(dets_.size());
    for (int i = 0; i < static_cast<int>(dets_.size()); ++i) index_[dets_[i]] = i;
}

int DeterminantBasis::index_of(std::uint64_t word) const {
    auto it = index_.find(word);
    if (it == index_.end()) throw std::out_of_range("determinant not in basis");
    return it->second;
}

bool DeterminantBasis::contains(std::uint64_t word) const { return index_.count(word) != 0; }

DeterminantBasis enumerate_basis(const Sector& sector, const std::vector<Spin>& spin_of) {
    if (sector.n_so < 1 || static_cast<int>(spin_of.size()) != sector.n_so)
        throw std::invalid_argument("sector/spin tags mismatch");
    std::vector<int> alphas, betas;
    for (int i = 0; i < sector.n_so; ++i)
        (spin_of[i] == Spin::Alpha ? alphas : betas).push_back(i);
    if (sector.n_alpha < 0 || sector.n_beta < 0 ||
        sector.n_alpha > static_cast<int>(alphas.size()) ||
        sector.n_beta > static_cast<int>(betas.size()))
        throw std::invalid_argument("infeasible sector");

    std::vector<std::uint64_t> alpha_words, beta_words;
    combinations(alphas, sector.n_alpha, [&](std::uint64_t w) { alpha_words.push_back(w); });
    combinations(betas, sector.n_beta, [&](std::uint64_t w) { beta_words.push_back(w); });

    std::vector<std::uint64_t> dets;
    dets.reserve(alpha_words.size() * beta_words.size());
    for (auto a : alpha_words)
        for (auto b : beta_words) dets.push_back(a | b);
    std::sort(dets.begin(), dets.end());
    return DeterminantBasis(sector, spin_of, std::move(dets));
}

DeterminantBasis enumerate_basis(const Sector& sector, const IntegralSet& ints) {
    if (sector.n_so != ints.n_so())
        throw std::invalid_argument("sector orbital count does not match integrals");
    return enumerate_basis(sector, ints.spins());
}

// ---------------------------------------------------------------------------
// Slater-Condon assembly

namespace {

double diagonal_element(const IntegralSet& ints, std::uint64_t det, int n_so) {
    auto occ = occupied_list(det, n_so);
    double e = 0.0;
    for (int i : occ) e += ints.h(i, i);
    for (int i : occ)
        for (int j : occ) e += 0.5 * (ints.g(i, j, i, j) - ints.g(i, j, j, i));
    return e;
}

double single_element(const IntegralSet& ints, std::uint64_t ket, int hole, int part, int n_so) {
    std::uint64_t w = ket;
    int sign = apply_op_phase(w, hole);
    sign *= apply_op_phase(w, part);
    double e = ints.h(part, hole);
    std::uint64_t common = ket & ~(std::uint64_t{1} << hole);
    for (int k : occupied_list(common, n_so)) e += ints.g(part, k, hole, k) - ints.g(part, k, k, hole);
    return sign * e;
}

double double_element(const IntegralSet& ints, std::uint64_t ket, int h1, int h2, int p1, int p2) {
    // h1 < h2, p1 < p2; sequential sign of h1->p1 then h2->p2.
    std::uint64_t w = ket;
    int sign = apply_op_phase(w, h1);
    sign *= apply_op_phase(w, p1);
    sign *= apply_op_phase(w, h2);
    sign *= apply_op_phase(w, p2);
    return sign * (ints.g(p1, p2, h1, h2) - ints.g(p1, p2, h2, h1));
}

} // namespace

SparseHamiltonian build_final_hamiltonian(const IntegralSet& ints, const DeterminantBasis& basis,
                                          bool include_core) {
    if (ints.n_so() != basis.sector().n_so)
        throw std::invalid_argument("integral/basis dimension mismatch");
    const int n = basis.size();
    const int n_so = ints.n_so();
    std::vector<Eigen::Triplet<double>> trip;

    for (int i = 0; i < n; ++i) {
        std::uint64_t di = basis.det(i);
        double d = diagonal_element(ints, di, n_so) + (include_core ? ints.e_core() : 0.0);
        if (d != 0.0) trip.emplace_back(i, i, d);
        for (int j = i + 1; j < n; ++j) {
            std::uint64_t dj = basis.det(j);
            std::uint64_t diff = di ^ dj;
            int nd = popcount(diff);
            if (nd != 2 && nd != 4) continue;
            double v = 0.0;
            if (nd == 2) {
                std::uint64_t holes = diff & di, parts = diff & dj;
                v = single_element(ints, di, std::countr_zero(holes), std::countr_zero(parts),
                                   n_so);
            } else {
                std::uint64_t holes = diff & di, parts = diff & dj;
                int h1 = std::countr_zero(holes);
                int h2 = std::countr_zero(holes & (holes - 1));
                int p1 = std::countr_zero(parts);
                int p2 = std::countr_zero(parts & (parts - 1));
                v = double_element(ints, di, h1, h2, p1, p2);
            }
            if (v != 0.0) {
                trip.emplace_back(i, j, v);
                trip.emplace_back(j, i, v);
            }
        }
    }

    SparseHamiltonian h;
    h.dim = n;
    h.basis_tag = "det_sector";
    h.mat.resize(n, n);
    h.mat.setFromTriplets(trip.begin(), trip.end());
    return h;
}

std::string SparseHamiltonian::to_coordinate_text() const {
    std::ostringstream out;
    for (int k = 0; k < mat.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(mat, k); it; ++it)
            if (it.row() <= it.col()) {
                char buf[96];
                std::snprintf(buf, sizeof(buf), "%ld %ld %.15g\n", long(it.row()), long(it.col()),
                              it.value());
                out << buf;
            }
    return out.str();
}

// ---------------------------------------------------------------------------
// HF and initial Hamiltonians

int hf_determinant(const DeterminantBasis& basis) {
    const auto& sec = basis.sector();
    std::uint64_t word = 0;
    int na = 0, nb = 0;
    for (int i = 0; i < sec.n_so; ++i) {
        if (basis.spins()[i] == Spin::Alpha && na < sec.n_alpha) {
            word |= std::uint64_t{1} << i;
            ++na;
        } else if (basis.spins()[i] == Spin::Beta && nb < sec.n_beta) {
            word |= std::uint64_t{1} << i;
            ++nb;
        }
    }
    return basis.index_of(word);
}

double hf_energy(const IntegralSet& ints, std::uint64_t det) {
    return diagonal_element(ints, det, ints.n_so());
}

double fock_diagonal(const IntegralSet& ints, std::uint64_t hf_det, int p) {
    double f = ints.h(p, p);
    for (int i : occupied_list(hf_det, ints.n_so()))
        f += ints.g(p, i, p, i) - ints.g(p, i, i, p);
    return f;
}

SparseHamiltonian build_initial_hamiltonian(const InitKind& kind, const IntegralSet& ints,
                                            const DeterminantBasis& basis) {
    const int n = basis.size();
    SparseHamiltonian h;
    h.dim = n;
    h.basis_tag = "det_sector";
    h.mat.resize(n, n);
    std::vector<Eigen::Triplet<double>> trip;

    const int k_hf = hf_determinant(basis);
    const std::uint64_t hf = basis.det(k_hf);

    switch (kind.variant) {
        case InitKind::Variant::AG: {
            trip.emplace_back(k_hf, k_hf, hf_energy(ints, hf));
            break;
        }
        case InitKind::Variant::MP: {
            for (int i = 0; i < n; ++i) {
                double e = 0.0;
                for (int p : occupied_list(basis.det(i), ints.n_so()))
                    e += fock_diagonal(ints, hf, p);
                if (e != 0.0) trip.emplace_back(i, i, e);
            }
            break;
        }
        case InitKind::Variant::CAS: {
            if (kind.active_spatial.empty())
                throw std::invalid_argument("CAS active orbital list is empty");
            const int n_spatial =
                *std::max_element(ints.spatial_of.begin(), ints.spatial_of.end()) + 1;
            for (int sp : kind.active_spatial)
                if (sp < 0 || sp >= n_spatial)
                    throw std::invalid_argument("CAS active orbital out of range");
            std::uint64_t active_mask = 0;
            for (int so = 0; so < ints.n_so(); ++so) {
                int sp = ints.spatial_of[so];
                if (std::find(kind.active_spatial.begin(), kind.active_spatial.end(), sp) !=
                    kind.active_spatial.end())
                    active_mask |= std::uint64_t{1} << so;
            }
            const std::uint64_t inactive_mask = ~active_mask & low_mask(ints.n_so());
            const double gamma = kind.gamma.value_or(hf_energy(ints, hf) + 10.0);
            if (gamma <= 0.0)
                throw std::invalid_argument("CAS complement penalty must be positive");

            // P H P on determinants matching the HF core outside the active
            // space; gamma on the complement diagonal.
            std::vector<char> in_p(n, 0);
            for (int i = 0; i < n; ++i)
                in_p[i] = ((basis.det(i) & inactive_mask) == (hf & inactive_mask));
            SparseHamiltonian hf_full = build_final_hamiltonian(ints, basis);
            for (int k = 0; k < hf_full.mat.outerSize(); ++k)
                for (Eigen::SparseMatrix<double>::InnerIterator it(hf_full.mat, k); it; ++it)
                    if (in_p[it.row()] && in_p[it.col()])
                        trip.emplace_back(it.row(), it.col(), it.value());
            for (int i = 0; i < n; ++i)
                if (!in_p[i]) trip.emplace_back(i, i, gamma);
            break;
        }
        case InitKind::Variant::LocalX:
            throw std::invalid_argument(
                "local-X initial Hamiltonian is a qubit-space operator; it has no "
                "determinant-basis form");
    }

    h.mat.setFromTriplets(trip.begin(), trip.end());
    return h;
}

// ---------------------------------------------------------------------------
// Eigenpairs and overlaps

std::vector<std::pair<double, Eigen::VectorXd>> ground_state(const SparseHamiltonian& h, int k) {
    if (k < 1 || k > h.dim) throw std::invalid_argument("ground_state: bad k");
    if (h.dim <= 512) {
        Eigen::VectorXd vals;
        Eigen::MatrixXd vecs;
        dense_eigh(h.to_dense(), vals, vecs);
        std::vector<std::pair<double, Eigen::VectorXd>> out;
        for (int j = 0; j < k; ++j) {
            Eigen::VectorXd v = vecs.col(j);
            fix_phase(v);
            out.emplace_back(vals[j], v);
        }
        return out;
    }
    auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = h.mat * x; };
    return lanczos_lowest(apply, h.dim, k, 1e-10);
}

double squared_overlap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw std::invalid_argument("overlap: dimension mismatch");
    if (std::abs(a.norm() - 1.0) > 1e-12 || std::abs(b.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("overlap: states must be unit norm");
    double d = a.dot(b);
    return d * d;
}

double squared_overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    if (a.size() != b.size()) throw std::invalid_argument("overlap: dimension mismatch");
    if (std::abs(a.norm() - 1.0) > 1e-12 || std::abs(b.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("overlap: states must be unit norm");
    return std::norm(a.dot(b));
}

} // namespace aspsim
