#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "aspsim/fermion.hpp"
#include "aspsim/integrals.hpp"

namespace aspsim {

/// Linear combination of Pauli strings over n qubits. A term word is a string
/// of I/X/Y/Z letters, one per qubit, with qubit 0 (= spin orbital 0, the
/// paper-facing "qubit 1") leftmost. Coefficients are complex during algebra;
/// Hermitian sums combine to real coefficients. Terms with |c| < 1e-14 are
/// pruned on insertion.
class PauliSum {
  public:
    static constexpr double kPruneTol = 1e-14;

    explicit PauliSum(int n_qubits);

    int n_qubits() const { return n_; }
    std::size_t size() const { return terms_.size(); }
    const std::unordered_map<std::string, std::complex<double>>& terms() const { return terms_; }

    void add(const std::string& word, std::complex<double> c);
    std::complex<double> coeff(const std::string& word) const;

    PauliSum& operator+=(const PauliSum& o);
    PauliSum operator+(const PauliSum& o) const;
    PauliSum operator*(const PauliSum& o) const;
    PauliSum scaled(std::complex<double> a) const;

    /// Largest |Im c| over all terms.
    double max_imag() const;
    /// Copy with imaginary parts dropped; throws std::runtime_error if any
    /// |Im c| exceeds tol.
    PauliSum real_within(double tol) const;

    /// Number of non-identity letters of a word.
    static int weight(const std::string& word);

    static PauliSum identity(int n_qubits, double c = 1.0);

    /// Deterministically ordered (word-sorted) term list.
    std::vector<std::pair<std::string, std::complex<double>>> sorted_terms() const;

  private:
    int n_;
    std::unordered_map<std::string, std::complex<double>> terms_;
};

/// Jordan-Wigner images of a+_p and a_p on n qubits (0-based p):
/// a+_p = Z_0..Z_{p-1} (X_p - iY_p)/2, occupied = |1>.
PauliSum jw_creation(int p, int n_qubits);
PauliSum jw_annihilation(int p, int n_qubits);

/// Jordan-Wigner image of the full second-quantized Hamiltonian. All
/// coefficients must combine to real values within 1e-12 (internal
/// consistency); the result carries real coefficients.
PauliSum jw_map(const IntegralSet& ints, int max_qubits = 16);

/// Dense matrix of a PauliSum; basis index bit j = qubit j, |1> = occupied.
/// Capped at 14 qubits.
Eigen::MatrixXcd pauli_to_matrix(const PauliSum& h);

/// Sparse matrix of a PauliSum (no dense cap; each term is a signed permutation).
Eigen::SparseMatrix<std::complex<double>> pauli_to_sparse(const PauliSum& h);

/// Restriction of a 2^n matrix to the rows/columns whose bit words lie in the
/// sector's determinant basis, in basis order.
Eigen::MatrixXcd sector_block(const Eigen::MatrixXcd& m, const DeterminantBasis& basis);

/// One term per line: "<coefficient> <LETTERWORD>", qubit 0 leftmost,
/// word-sorted. Coefficients must be real.
std::string format_pauli_sum(const PauliSum& h);
PauliSum parse_pauli_sum(std::istream& in);

} // namespace aspsim
