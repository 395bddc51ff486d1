#pragma once

#include <array>
#include <string>

#include "aspsim/integrals.hpp"
#include "aspsim/pauli.hpp"

namespace aspsim {

/// The interpolated CAS(2,2) qubit Hamiltonian H(s) on 4 qubits collapses to
/// 15 Pauli patterns: identity, Z on each qubit, the six ZZ pairs, and the
/// four 4-local strings XXYY/YYXX (coefficient c8) and XYYX/YXXY (c9), with
/// nine independent coefficients c1..c9 that are affine in s. This header
/// evaluates them two ways: derived from the Jordan-Wigner expansion of the
/// endpoint Hamiltonians (the ground truth used everywhere), and from a
/// closed-form coefficient table kept for cross-checking (its c2/c3 constant
/// parts disagree with the expansion; see compare_coefficient_routes).
struct CoefficientSet {
    // value(i, s) = (1-s)*at0[i] + s*at1[i], i in [0, 9) for c1..c9
    std::array<double, 9> at0{};
    std::array<double, 9> at1{};

    double value(int i, double s) const { return (1.0 - s) * at0[i] + s * at1[i]; }

    /// Ground-truth route: extract the 15 patterns from jw_map of the final
    /// Hamiltonian and of the diagonal Fock-operator initial Hamiltonian.
    /// Throws std::invalid_argument unless ints has 4 spin orbitals with the
    /// built-in index convention (only the 15 patterns may appear).
    static CoefficientSet from_integrals(const IntegralSet& ints);

    /// Closed-form affine table in terms of h11, h33, h1221, h3443, h1331, h1313.
    static CoefficientSet closed_form(const IntegralSet& ints);
};

/// H(s) as an explicit 15-term PauliSum with coefficients from the
/// Jordan-Wigner route.
PauliSum cas22_hamiltonian(const IntegralSet& ints, double s);

/// Jordan-Wigner image of the diagonal Fock-operator initial Hamiltonian
/// (sum_p f_pp n_p) for any orbital count.
PauliSum jw_mp_hamiltonian(const IntegralSet& ints);

/// Per-coefficient max |closed_form - derived| over s in {0, 1}.
struct CoefficientComparison {
    std::array<double, 9> max_dev{};
    double worst() const;
    std::string report() const;
};
CoefficientComparison compare_coefficient_routes(const IntegralSet& ints);

/// The 15 pattern words in coefficient order: words_for(i) lists the patterns
/// sharing coefficient c_{i+1}.
const std::array<std::vector<std::string>, 9>& cas22_patterns();

} // namespace aspsim
