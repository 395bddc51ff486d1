#include "aspsim/cas22.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "aspsim/fermion.hpp"

namespace aspsim {

const std::array<std::vector<std::string>, 9>& cas22_patterns() {
    static const std::array<std::vector<std::string>, 9> patterns = {{
        {"IIII"},         // c1
        {"ZIII", "IZII"}, // c2: Z1 + Z2
        {"IIZI", "IIIZ"}, // c3: Z3 + Z4
        {"ZZII"},         // c4: Z2 Z1
        {"ZIZI", "IZIZ"}, // c5: Z3 Z1 + Z4 Z2
        {"ZIIZ", "IZZI"}, // c6: Z4 Z1 + Z3 Z2
        {"IIZZ"},         // c7: Z4 Z3
        {"XXYY", "YYXX"}, // c8
        {"XYYX", "YXXY"}, // c9
    }};
    return patterns;
}

PauliSum jw_mp_hamiltonian(const IntegralSet& ints) {
    const int n = ints.n_so();
    // aufbau occupation for the declared electron count (balanced spins)
    int n_elec = ints.n_elec_hint > 0 ? ints.n_elec_hint : n / 2;
    int na = (n_elec + ints.ms2_hint) / 2;
    int nb = n_elec - na;
    std::uint64_t hf = 0;
    int ca = 0, cb = 0;
    for (int p = 0; p < n; ++p) {
        if (ints.spin_of(p) == Spin::Alpha && ca < na) {
            hf |= std::uint64_t{1} << p;
            ++ca;
        } else if (ints.spin_of(p) == Spin::Beta && cb < nb) {
            hf |= std::uint64_t{1} << p;
            ++cb;
        }
    }
    PauliSum h(n);
    for (int p = 0; p < n; ++p) {
        double f = fock_diagonal(ints, hf, p);
        if (f == 0.0) continue;
        h.add(std::string(n, 'I'), 0.5 * f);
        std::string w(n, 'I');
        w[p] = 'Z';
        h.add(w, -0.5 * f);
    }
    return h;
}

namespace {

std::array<double, 9> extract_coefficients(const PauliSum& h, const char* label) {
    if (h.n_qubits() != 4) throw std::invalid_argument("coefficient extraction needs 4 qubits");
    const auto& patterns = cas22_patterns();
    std::array<double, 9> c{};
    std::size_t accounted = 0;
    for (int i = 0; i < 9; ++i) {
        const auto& group = patterns[i];
        double first = h.coeff(group[0]).real();
        for (const auto& w : group) {
            std::complex<double> v = h.coeff(w);
            if (std::abs(v.imag()) > 1e-12)
                throw std::runtime_error(std::string(label) + ": complex coefficient on " + w);
            if (std::abs(v.real() - first) > 1e-10)
                throw std::runtime_error(std::string(label) + ": pattern group for c" +
                                         std::to_string(i + 1) + " is not degenerate");
            if (std::abs(v) >= PauliSum::kPruneTol) ++accounted;
        }
        c[i] = first;
    }
    if (accounted != h.size())
        throw std::runtime_error(std::string(label) +
                                 ": terms outside the 15 expected patterns present");
    return c;
}

} // namespace

CoefficientSet CoefficientSet::from_integrals(const IntegralSet& ints) {
    if (ints.n_so() != 4)
        throw std::invalid_argument("coefficient Hamiltonian requires 4 spin orbitals");
    CoefficientSet cs;
    cs.at0 = extract_coefficients(jw_mp_hamiltonian(ints), "initial Hamiltonian");
    cs.at1 = extract_coefficients(jw_map(ints), "final Hamiltonian");
    return cs;
}

CoefficientSet CoefficientSet::closed_form(const IntegralSet& ints) {
    if (ints.n_so() != 4)
        throw std::invalid_argument("coefficient Hamiltonian requires 4 spin orbitals");
    const double h11 = ints.h(0, 0);
    const double h33 = ints.h(2, 2);
    const double h1221 = ints.g(0, 1, 0, 1); // <12|12>
    const double h3443 = ints.g(2, 3, 2, 3); // <34|34>
    const double h1331 = ints.g(0, 2, 0, 2); // <13|13>
    const double h1313 = ints.g(0, 2, 2, 0); // <13|31>
    auto at = [&](double s) {
        return std::array<double, 9>{
            h11 + h33 + (1 - 0.75 * s) * h1221 + 0.25 * s * h3443 + (2 - s) * h1331 -
                (1 - 0.5 * s) * h1313,
            -0.5 * h11 + (2 - 2.5 * s) * h1331 + (1.25 * s - 1) * h1313 - 0.25 * s * h1221,
            -0.5 * h33 + (2 - 2.5 * s) * h1331 + (1.25 * s - 1) * h1313 - 0.25 * s * h3443,
            0.25 * s * h1221,
            0.25 * s * (h1331 - h1313),
            0.25 * s * h1331,
            0.25 * s * h3443,
            -0.25 * s * h1313,
            0.25 * s * h1313,
        };
    };
    CoefficientSet cs;
    cs.at0 = at(0.0);
    cs.at1 = at(1.0);
    return cs;
}

PauliSum cas22_hamiltonian(const IntegralSet& ints, double s) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("s must lie in [0, 1]");
    CoefficientSet cs = CoefficientSet::from_integrals(ints);
    PauliSum h(4);
    const auto& patterns = cas22_patterns();
    for (int i = 0; i < 9; ++i)
        for (const auto& w : patterns[i]) h.add(w, cs.value(i, s));
    return h;
}

double CoefficientComparison::worst() const {
    double m = 0.0;
    for (double v : max_dev) m = std::max(m, v);
    return m;
}

std::string CoefficientComparison::report() const {
    std::ostringstream out;
    for (int i = 0; i < 9; ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "c%d: %.3e", i + 1, max_dev[i]);
        out << buf << (i + 1 < 9 ? "  " : "");
    }
    return out.str();
}

CoefficientComparison compare_coefficient_routes(const IntegralSet& ints) {
    CoefficientSet derived = CoefficientSet::from_integrals(ints);
    CoefficientSet closed = CoefficientSet::closed_form(ints);
    CoefficientComparison cmp;
    for (int i = 0; i < 9; ++i)
        cmp.max_dev[i] = std::max(std::abs(derived.at0[i] - closed.at0[i]),
                                  std::abs(derived.at1[i] - closed.at1[i]));
    return cmp;
}

} // namespace aspsim
