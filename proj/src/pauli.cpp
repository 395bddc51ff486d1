#include "aspsim/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "aspsim/errors.hpp"

namespace aspsim {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

int letter_index(char c) {
    switch (c) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
    }
    throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
}

// product[a][b] = (letter, phase) with phase in {1, i, -i} encoded as 0,1,3 (powers of i)
struct Prod {
    char letter;
    int ipow; // phase = i^ipow
};
constexpr Prod kTable[4][4] = {
    {{'I', 0}, {'X', 0}, {'Y', 0}, {'Z', 0}},
    {{'X', 0}, {'I', 0}, {'Z', 1}, {'Y', 3}},
    {{'Y', 0}, {'Z', 3}, {'I', 0}, {'X', 1}},
    {{'Z', 0}, {'Y', 1}, {'X', 3}, {'I', 0}},
};

std::complex<double> ipow(int k) {
    switch (k & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

} // namespace

PauliSum::PauliSum(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("PauliSum needs at least one qubit");
}

void PauliSum::add(const std::string& word, std::complex<double> c) {
    if (static_cast<int>(word.size()) != n_)
        throw std::invalid_argument("word length does not match qubit count");
    for (char ch : word) letter_index(ch);
    auto it = terms_.find(word);
    if (it == terms_.end()) {
        if (std::abs(c) >= kPruneTol) terms_.emplace(word, c);
        return;
    }
    it->second += c;
    if (std::abs(it->second) < kPruneTol) terms_.erase(it);
}

std::complex<double> PauliSum::coeff(const std::string& word) const {
    auto it = terms_.find(word);
    return it == terms_.end() ? std::complex<double>{0.0, 0.0} : it->second;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
    if (o.n_ != n_) throw std::invalid_argument("qubit count mismatch");
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

PauliSum PauliSum::operator+(const PauliSum& o) const {
    PauliSum r = *this;
    r += o;
    return r;
}

PauliSum PauliSum::operator*(const PauliSum& o) const {
    if (o.n_ != n_) throw std::invalid_argument("qubit count mismatch");
    PauliSum r(n_);
    std::string w(n_, 'I');
    for (const auto& [w1, c1] : terms_) {
        for (const auto& [w2, c2] : o.terms_) {
            int phase = 0;
            for (int j = 0; j < n_; ++j) {
                const Prod& p = kTable[letter_index(w1[j])][letter_index(w2[j])];
                w[j] = p.letter;
                phase += p.ipow;
            }
            r.add(w, c1 * c2 * ipow(phase));
        }
    }
    return r;
}

PauliSum PauliSum::scaled(std::complex<double> a) const {
    PauliSum r(n_);
    for (const auto& [w, c] : terms_) r.add(w, c * a);
    return r;
}

double PauliSum::max_imag() const {
    double m = 0.0;
    for (const auto& [w, c] : terms_) m = std::max(m, std::abs(c.imag()));
    return m;
}

PauliSum PauliSum::real_within(double tol) const {
    if (max_imag() > tol)
        throw std::runtime_error("PauliSum has imaginary residue above tolerance: " +
                                 std::to_string(max_imag()));
    PauliSum r(n_);
    for (const auto& [w, c] : terms_) r.add(w, c.real());
    return r;
}

int PauliSum::weight(const std::string& word) {
    return static_cast<int>(std::count_if(word.begin(), word.end(), [](char c) { return c != 'I'; }));
}

PauliSum PauliSum::identity(int n_qubits, double c) {
    PauliSum r(n_qubits);
    r.add(std::string(n_qubits, 'I'), c);
    return r;
}

std::vector<std::pair<std::string, std::complex<double>>> PauliSum::sorted_terms() const {
    std::vector<std::pair<std::string, std::complex<double>>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

// ---------------------------------------------------------------------------
// Jordan-Wigner

PauliSum jw_creation(int p, int n_qubits) {
    if (p < 0 || p >= n_qubits) throw std::out_of_range("spin-orbital index out of range");
    PauliSum r(n_qubits);
    std::string wx(n_qubits, 'I'), wy(n_qubits, 'I');
    for (int j = 0; j < p; ++j) wx[j] = wy[j] = 'Z';
    wx[p] = 'X';
    wy[p] = 'Y';
    r.add(wx, 0.5);
    r.add(wy, -0.5 * kI);
    return r;
}

PauliSum jw_annihilation(int p, int n_qubits) {
    if (p < 0 || p >= n_qubits) throw std::out_of_range("spin-orbital index out of range");
    PauliSum r(n_qubits);
    std::string wx(n_qubits, 'I'), wy(n_qubits, 'I');
    for (int j = 0; j < p; ++j) wx[j] = wy[j] = 'Z';
    wx[p] = 'X';
    wy[p] = 'Y';
    r.add(wx, 0.5);
    r.add(wy, 0.5 * kI);
    return r;
}

PauliSum jw_map(const IntegralSet& ints, int max_qubits) {
    const int n = ints.n_so();
    if (n > max_qubits)
        throw SizeLimitError("jw_map: " + std::to_string(n) + " spin orbitals exceeds the cap of " +
                             std::to_string(max_qubits));
    std::vector<PauliSum> cre, ann;
    cre.reserve(n);
    ann.reserve(n);
    for (int p = 0; p < n; ++p) {
        cre.push_back(jw_creation(p, n));
        ann.push_back(jw_annihilation(p, n));
    }

    PauliSum h(n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (ints.h(p, q) != 0.0) h += (cre[p] * ann[q]).scaled(ints.h(p, q));

    ints.for_each_g([&](int p, int q, int r, int s, double v) {
        h += (cre[p] * cre[q] * ann[s] * ann[r]).scaled(0.5 * v);
    });

    return h.real_within(1e-12);
}

// ---------------------------------------------------------------------------
// Matrices

Eigen::MatrixXcd pauli_to_matrix(const PauliSum& h) {
    const int n = h.n_qubits();
    if (n > 14) throw SizeLimitError("pauli_to_matrix: dense cap is 14 qubits");
    const long d = 1L << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [w, c] : h.terms()) {
        for (long col = 0; col < d; ++col) {
            long row = col;
            std::complex<double> amp = c;
            for (int j = 0; j < n; ++j) {
                int bit = (col >> j) & 1;
                switch (w[j]) {
                    case 'I': break;
                    case 'X': row ^= (1L << j); break;
                    case 'Y':
                        row ^= (1L << j);
                        amp *= kI * (bit ? -1.0 : 1.0);
                        break;
                    case 'Z':
                        if (bit) amp = -amp;
                        break;
                }
            }
            m(row, col) += amp;
        }
    }
    return m;
}

Eigen::SparseMatrix<std::complex<double>> pauli_to_sparse(const PauliSum& h) {
    const int n = h.n_qubits();
    if (n > 24) throw SizeLimitError("pauli_to_sparse: cap is 24 qubits");
    const long d = 1L << n;
    std::vector<Eigen::Triplet<std::complex<double>>> trip;
    trip.reserve(h.size() * static_cast<std::size_t>(d));
    for (const auto& [w, c] : h.terms()) {
        for (long col = 0; col < d; ++col) {
            long row = col;
            std::complex<double> amp = c;
            for (int j = 0; j < n; ++j) {
                int bit = (col >> j) & 1;
                switch (w[j]) {
                    case 'I': break;
                    case 'X': row ^= (1L << j); break;
                    case 'Y':
                        row ^= (1L << j);
                        amp *= kI * (bit ? -1.0 : 1.0);
                        break;
                    case 'Z':
                        if (bit) amp = -amp;
                        break;
                }
            }
            trip.emplace_back(row, col, amp);
        }
    }
    Eigen::SparseMatrix<std::complex<double>> m(d, d);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

Eigen::MatrixXcd sector_block(const Eigen::MatrixXcd& m, const DeterminantBasis& basis) {
    const long d = 1L << basis.sector().n_so;
    if (m.rows() != d || m.cols() != d)
        throw std::invalid_argument("sector_block: matrix dimension must be 2^n_so");
    const int nb = basis.size();
    Eigen::MatrixXcd out(nb, nb);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
            out(i, j) = m(static_cast<long>(basis.det(i)), static_cast<long>(basis.det(j)));
    return out;
}

// ---------------------------------------------------------------------------
// Text format

std::string format_pauli_sum(const PauliSum& h) {
    std::ostringstream out;
    for (const auto& [w, c] : h.sorted_terms()) {
        if (std::abs(c.imag()) > PauliSum::kPruneTol)
            throw std::runtime_error("format_pauli_sum: coefficients must be real");
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.15g", c.real());
        out << buf << ' ' << w << '\n';
    }
    return out.str();
}

PauliSum parse_pauli_sum(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::pair<std::string, double>> entries;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string ctok, word;
        if (!(ss >> ctok)) continue;
        if (!(ss >> word)) throw ParseError("expected '<coefficient> <word>'", lineno);
        char* end = nullptr;
        double c = std::strtod(ctok.c_str(), &end);
        if (end != ctok.c_str() + ctok.size())
            throw ParseError("bad coefficient '" + ctok + "'", lineno);
        for (char ch : word)
            if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z')
                throw ParseError(std::string("bad Pauli letter '") + ch + "'", lineno);
        if (n < 0)
            n = static_cast<int>(word.size());
        else if (static_cast<int>(word.size()) != n)
            throw ParseError("inconsistent word length", lineno);
        entries.emplace_back(word, c);
    }
    if (n < 0) throw ParseError("empty Pauli sum", lineno == 0 ? 1 : lineno);
    PauliSum h(n);
    for (const auto& [w, c] : entries) h.add(w, c);
    return h;
}

} // namespace aspsim
