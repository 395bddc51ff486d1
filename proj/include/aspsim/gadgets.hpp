#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "aspsim/pauli.hpp"

namespace aspsim {

/// One k-local term to be lowered: coefficient times a product of single-qubit
/// Paulis on distinct computational qubits (k = number of non-identity letters).
struct TargetTerm {
    double coeff = 0.0;
    std::string word; // on the computational register
    int k() const { return PauliSum::weight(word); }
};

/// How the target coefficient is spread over a block's four couplings.
/// Literal places the whole coefficient on the first coupling (the displayed
/// form); Distributed places |c|^(1/4) on each with the sign on the first.
/// Both give the same fourth-order product; Literal is the certified default.
enum class CoeffPlacement { Literal, Distributed };

struct AncillaBlock {
    std::array<int, 4> ancillas{};
    std::string term_word;
};

struct GadgetSpec {
    int n_comp = 0;
    double lambda = 0.0;
    double lambda_max = 0.0; // (k-1)/(4 k r)
    double k_scale = 0.0;    // -6/(4 lambda^4)
    CoeffPlacement placement = CoeffPlacement::Literal;
    std::vector<TargetTerm> terms;
    std::vector<AncillaBlock> blocks;

    int n_ancilla() const { return 4 * static_cast<int>(terms.size()); }
    int n_total() const { return n_comp + n_ancilla(); }
};

/// Splits a PauliSum into its at-most-2-local part and the k-local targets.
std::pair<PauliSum, std::vector<TargetTerm>> extract_klocal(const PauliSum& h);

/// Lays out one 4-ancilla block per term (computational qubits first, then
/// ancilla blocks) and validates lambda against (k-1)/(4 k r). Only k = 4
/// terms are supported. Throws std::invalid_argument on a bad lambda, citing
/// the bound.
GadgetSpec make_gadget_spec(const std::vector<TargetTerm>& targets, int n_comp, double lambda,
                            CoeffPlacement placement = CoeffPlacement::Literal);

/// The 2-local gadget Hamiltonian on the extended register:
/// k_scale * [ sum_blocks (3I - 1/2 sum_{I<J} Z_I Z_J) + lambda * couplings ].
/// Every term of the result has weight <= 2.
PauliSum build_gadget(const GadgetSpec& spec);

/// Coupling weights of a block for the term's coefficient, leg order matching
/// the block's ancilla order.
std::array<double, 4> coupling_weights(const TargetTerm& term, CoeffPlacement placement);

/// Tensor power of the 4-qubit cat state (|0000> + |1111>)/sqrt(2), one block
/// per term; 4r qubits, unit norm.
Eigen::VectorXcd ancilla_initial_state(int r);

/// Maximum absolute deviation between the n_low target eigenvalues and the
/// physical manifold of the gadget spectrum, after aligning spectral means.
/// The manifold is the top n_low block of the joint +1 X^(x4)-sector (k_scale
/// is negative, so the cat-state manifold sits at the top). two_local and
/// target act on the computational register; gadget on the extended one.
double spectral_error(const PauliSum& gadget, const PauliSum& two_local, const PauliSum& target,
                      int n_low);

/// Isometry onto the joint +1 eigenspace of each block's X(x)X(x)X(x)X
/// (columns orthonormal; 16 * 8^r of 2^(n_comp+4r)).
Eigen::SparseMatrix<double> xsector_isometry(int n_comp, int r);

/// JSON sidecar describing a gadget layout.
std::string gadget_sidecar_json(const GadgetSpec& spec);

} // namespace aspsim
