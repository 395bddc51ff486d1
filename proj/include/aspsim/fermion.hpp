#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "aspsim/integrals.hpp"

namespace aspsim {

/// Fixed particle-number sector: n_alpha/n_beta electrons in n_so spin orbitals.
struct Sector {
    int n_so = 0;
    int n_alpha = 0;
    int n_beta = 0;
};

/// Ordered determinant list for a sector. Bit j of a word = spin orbital j
/// occupied; words are sorted ascending by integer value. A determinant word
/// denotes the Fock state built by applying creation operators in ascending
/// orbital order (lowest index leftmost).
class DeterminantBasis {
  public:
    DeterminantBasis(Sector sector, std::vector<Spin> spin_of,
                     std::vector<std::uint64_t> dets);

    const Sector& sector() const { return sector_; }
    const std::vector<std::uint64_t>& dets() const { return dets_; }
    const std::vector<Spin>& spins() const { return spin_of_; }
    int size() const { return static_cast<int>(dets_.size()); }
    std::uint64_t det(int i) const { return dets_[i]; }
    /// Index of a determinant word; throws std::out_of_range if absent.
    int index_of(std::uint64_t word) const;
    bool contains(std::uint64_t word) const;

  private:
    Sector sector_;
    std::vector<Spin> spin_of_;
    std::vector<std::uint64_t> dets_;
    std::unordered_map<std::uint64_t, int> index_;
};

/// All determinants of the sector, sorted. Throws std::invalid_argument for
/// infeasible sectors (more electrons than orbitals of a spin).
DeterminantBasis enumerate_basis(const Sector& sector, const std::vector<Spin>& spin_of);
DeterminantBasis enumerate_basis(const Sector& sector, const IntegralSet& ints);

/// Real symmetric sparse Hamiltonian with a tag naming the space it acts on.
struct SparseHamiltonian {
    int dim = 0;
    std::string basis_tag;
    Eigen::SparseMatrix<double> mat;

    Eigen::MatrixXd to_dense() const { return Eigen::MatrixXd(mat); }
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const { y = mat * x; }
    /// Coordinate-format text (i j value), 0-based, upper triangle.
    std::string to_coordinate_text() const;
};

/// Initial-Hamiltonian family selector.
struct InitKind {
    enum class Variant { AG, MP, LocalX, CAS };
    Variant variant = Variant::MP;
    /// CAS only: active spatial orbitals (0-based).
    std::vector<int> active_spatial;
    /// CAS only: penalty for the complement space; defaults to E_HF + 10.
    std::optional<double> gamma;

    static InitKind ag() { return {Variant::AG, {}, {}}; }
    static InitKind mp() { return {Variant::MP, {}, {}}; }
    static InitKind local_x() { return {Variant::LocalX, {}, {}}; }
    static InitKind cas(std::vector<int> active, std::optional<double> g = {}) {
        return {Variant::CAS, std::move(active), g};
    }
};

/// Slater-Condon matrix elements of the second-quantized Hamiltonian
/// H = sum h_pq a+_p a_q + 1/2 sum <pq|rs> a+_p a+_q a_s a_r in the basis.
/// e_core is added to the diagonal only when include_core is set.
SparseHamiltonian build_final_hamiltonian(const IntegralSet& ints, const DeterminantBasis& basis,
                                          bool include_core = false);

/// Index of the aufbau determinant (lowest spin orbitals filled per spin).
int hf_determinant(const DeterminantBasis& basis);

/// E = sum_occ h_ii + 1/2 sum_occ (<ij|ij> - <ij|ji>) for an occupation word.
double hf_energy(const IntegralSet& ints, std::uint64_t det);

/// AG/MP/CAS initial Hamiltonians in the determinant basis. LocalX acts in
/// qubit space and is rejected here (see the dynamics layer).
SparseHamiltonian build_initial_hamiltonian(const InitKind& kind, const IntegralSet& ints,
                                            const DeterminantBasis& basis);

/// Diagonal Fock matrix element f_pp = h_pp + sum_{i in occ} (<pi|pi> - <pi|ip>)
/// with the mean field taken over the aufbau determinant's occupation.
double fock_diagonal(const IntegralSet& ints, std::uint64_t hf_det, int p);

/// k lowest eigenpairs, energies ascending, unit eigenvectors with the
/// largest-magnitude component positive. Dense below dim 512, Lanczos above.
std::vector<std::pair<double, Eigen::VectorXd>> ground_state(const SparseHamiltonian& h, int k);

double squared_overlap(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
double squared_overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

} // namespace aspsim
