#include "aspsim/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aspsim/errors.hpp"

namespace aspsim {

namespace {

std::uint64_t pack4(const std::array<int, 4>& t) {
    std::uint64_t k = 0;
    for (int v : t) k = (k << 16) | static_cast<std::uint64_t>(v & 0xFFFF);
    return k;
}

} // namespace

// ---------------------------------------------------------------------------
// SpatialIntegrals

SpatialIntegrals::SpatialIntegrals(int n_orb, int n_elec, int ms2)
    : n_orb_(n_orb), n_elec_(n_elec), ms2_(ms2) {
    if (n_orb < 1) throw std::invalid_argument("n_orb must be >= 1");
    if (n_elec < 0) throw std::invalid_argument("n_elec must be >= 0");
    h_core_ = Eigen::MatrixXd::Zero(n_orb, n_orb);
    eps_.assign(n_orb, 0.0);
}

void SpatialIntegrals::set_h_core(int p, int q, double v) {
    h_core_(p, q) = v;
    h_core_(q, p) = v;
}

void SpatialIntegrals::set_orbital_energy(int p, double v) { eps_[p] = v; }

std::uint64_t SpatialIntegrals::chemist_key(int p, int q, int r, int s) {
    std::array<std::array<int, 4>, 8> images = {{{p, q, r, s},
                                                 {q, p, r, s},
                                                 {p, q, s, r},
                                                 {q, p, s, r},
                                                 {r, s, p, q},
                                                 {s, r, p, q},
                                                 {r, s, q, p},
                                                 {s, r, q, p}}};
    return pack4(*std::min_element(images.begin(), images.end()));
}

void SpatialIntegrals::set_eri(int p, int q, int r, int s, double v) {
    eri_[chemist_key(p, q, r, s)] = v;
}

double SpatialIntegrals::eri(int p, int q, int r, int s) const {
    auto it = eri_.find(chemist_key(p, q, r, s));
    return it == eri_.end() ? 0.0 : it->second;
}

std::vector<std::pair<std::array<int, 4>, double>> SpatialIntegrals::sorted_eri() const {
    std::vector<std::pair<std::array<int, 4>, double>> out;
    out.reserve(eri_.size());
    for (const auto& [key, v] : eri_) {
        std::array<int, 4> t;
        for (int i = 3; i >= 0; --i) t[i] = static_cast<int>((key >> (16 * (3 - i))) & 0xFFFF);
        out.emplace_back(t, v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// IntegralSet

IntegralSet::IntegralSet(int n_so, std::vector<Spin> spin_of)
    : n_so_(n_so), spin_of_(std::move(spin_of)) {
    if (n_so < 1) throw std::invalid_argument("n_so must be >= 1");
    if (static_cast<int>(spin_of_.size()) != n_so)
        throw std::invalid_argument("spin tag count does not match n_so");
    h_ = Eigen::MatrixXd::Zero(n_so, n_so);
    spatial_of.resize(n_so);
    for (int p = 0; p < n_so; ++p) spatial_of[p] = p / 2;
}

void IntegralSet::set_h(int p, int q, double v) {
    if (spin_of_[p] != spin_of_[q] && v != 0.0)
        throw std::invalid_argument("spin-forbidden one-electron entry");
    h_(p, q) = v;
    h_(q, p) = v;
}

std::array<std::array<int, 4>, 8> IntegralSet::physicist_images(int p, int q, int r, int s) {
    // Real-orbital symmetries of <pq|rs>: bra/ket swap per electron and
    // electron exchange.
    return {{{p, q, r, s},
             {r, q, p, s},
             {p, s, r, q},
             {r, s, p, q},
             {q, p, s, r},
             {s, p, q, r},
             {q, r, s, p},
             {s, r, q, p}}};
}

std::uint64_t IntegralSet::physicist_key(int p, int q, int r, int s) {
    auto images = physicist_images(p, q, r, s);
    return pack4(*std::min_element(images.begin(), images.end()));
}

void IntegralSet::set_g(int p, int q, int r, int s, double v) {
    if ((spin_of_[p] != spin_of_[r] || spin_of_[q] != spin_of_[s]) && v != 0.0)
        throw std::invalid_argument("spin-forbidden two-electron entry");
    if (v == 0.0) return;
    g_[physicist_key(p, q, r, s)] = v;
}

double IntegralSet::g(int p, int q, int r, int s) const {
    if (spin_of_[p] != spin_of_[r] || spin_of_[q] != spin_of_[s]) return 0.0;
    auto it = g_.find(physicist_key(p, q, r, s));
    return it == g_.end() ? 0.0 : it->second;
}

void IntegralSet::for_each_g(const std::function<void(int, int, int, int, double)>& fn) const {
    for (const auto& [key, v] : g_) {
        std::array<int, 4> t;
        for (int i = 3; i >= 0; --i) t[i] = static_cast<int>((key >> (16 * (3 - i))) & 0xFFFF);
        auto images = physicist_images(t[0], t[1], t[2], t[3]);
        std::sort(images.begin(), images.end());
        auto end = std::unique(images.begin(), images.end());
        for (auto it = images.begin(); it != end; ++it) fn((*it)[0], (*it)[1], (*it)[2], (*it)[3], v);
    }
}

// ---------------------------------------------------------------------------
// FCIDUMP

namespace {

bool parse_int_field(const std::string& header, const std::string& name, long& out) {
    auto pos = header.find(name);
    while (pos != std::string::npos) {
        auto eq = header.find_first_not_of(" \t", pos + name.size());
        if (eq != std::string::npos && header[eq] == '=') {
            auto beg = header.find_first_not_of(" \t", eq + 1);
            if (beg == std::string::npos) return false;
            char* end = nullptr;
            long v = std::strtol(header.c_str() + beg, &end, 10);
            if (end == header.c_str() + beg) return false;
            out = v;
            return true;
        }
        pos = header.find(name, pos + 1);
    }
    return false;
}

double parse_real(const std::string& tok, int line) {
    std::string t = tok;
    for (char& c : t)
        if (c == 'D' || c == 'd') c = 'E';
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || t.empty())
        throw ParseError("non-numeric value field '" + tok + "'", line);
    return v;
}

long parse_index(const std::string& tok, int line) {
    char* end = nullptr;
    long v = std::strtol(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size() || tok.empty())
        throw ParseError("non-integer orbital index '" + tok + "'", line);
    return v;
}

} // namespace

SpatialIntegrals parse_fcidump(std::istream& in) {
    std::string line;
    int lineno = 0;

    // Header: starts with &FCI, ends at "/" or "&END" (possibly on a later line).
    std::string header;
    bool header_done = false;
    bool header_seen = false;
    int header_end_line = 0;
    while (!header_done && std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        if (trimmed.empty()) continue;
        if (!header_seen) {
            if (trimmed.rfind("&FCI", 0) != 0)
                throw ParseError("expected &FCI header", lineno);
            header_seen = true;
        }
        std::string upper = trimmed;
        std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
        auto slash = upper.find('/');
        auto amp_end = upper.find("&END");
        auto cut = std::min(slash, amp_end);
        header += ' ';
        header += upper.substr(0, cut);
        if (cut != std::string::npos) {
            header_done = true;
            header_end_line = lineno;
        }
    }
    if (!header_seen || !header_done)
        throw ParseError("unterminated or missing &FCI header", lineno == 0 ? 1 : lineno);

    long norb = 0, nelec = 0, ms2 = 0;
    if (!parse_int_field(header, "NORB", norb))
        throw ParseError("header is missing NORB", header_end_line);
    if (!parse_int_field(header, "NELEC", nelec))
        throw ParseError("header is missing NELEC", header_end_line);
    parse_int_field(header, "MS2", ms2); // optional, defaults to 0
    if (norb < 1) throw ParseError("NORB must be >= 1", header_end_line);
    if (nelec < 0) throw ParseError("NELEC must be >= 0", header_end_line);

    SpatialIntegrals sp(static_cast<int>(norb), static_cast<int>(nelec), static_cast<int>(ms2));

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 5)
            throw ParseError("expected 'value p q r s' (5 fields), got " +
                                 std::to_string(tok.size()),
                             lineno);
        double v = parse_real(tok[0], lineno);
        long idx[4];
        for (int i = 0; i < 4; ++i) {
            idx[i] = parse_index(tok[i + 1], lineno);
            if (idx[i] < 0 || idx[i] > norb)
                throw ParseError("orbital index " + std::to_string(idx[i]) +
                                     " out of range [0, " + std::to_string(norb) + "]",
                                 lineno);
        }
        long p = idx[0], q = idx[1], r = idx[2], s = idx[3];
        if (p == 0 && q == 0 && r == 0 && s == 0) {
            sp.set_e_core(v);
        } else if (p != 0 && q == 0 && r == 0 && s == 0) {
            sp.set_orbital_energy(static_cast<int>(p - 1), v);
        } else if (p != 0 && q != 0 && r == 0 && s == 0) {
            sp.set_h_core(static_cast<int>(p - 1), static_cast<int>(q - 1), v);
        } else if (p != 0 && q != 0 && r != 0 && s != 0) {
            sp.set_eri(static_cast<int>(p - 1), static_cast<int>(q - 1),
                       static_cast<int>(r - 1), static_cast<int>(s - 1), v);
        } else {
            throw ParseError("invalid zero pattern in indices (" + std::to_string(p) + " " +
                                 std::to_string(q) + " " + std::to_string(r) + " " +
                                 std::to_string(s) + ")",
                             lineno);
        }
    }
    return sp;
}

SpatialIntegrals parse_fcidump_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_fcidump(ss);
}

SpatialIntegrals parse_fcidump_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("file not found: " + path);
    return parse_fcidump(f);
}

namespace {

std::string fmt15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

} // namespace

void write_fcidump(const SpatialIntegrals& sp, std::ostream& out) {
    out << "&FCI NORB=" << sp.n_orb() << ",NELEC=" << sp.n_elec() << ",MS2=" << sp.ms2()
        << ",\n&END\n";
    for (const auto& [t, v] : sp.sorted_eri())
        out << ' ' << fmt15(v) << ' ' << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << ' '
            << t[3] + 1 << '\n';
    for (int p = 0; p < sp.n_orb(); ++p)
        for (int q = 0; q <= p; ++q)
            if (sp.h_core()(p, q) != 0.0)
                out << ' ' << fmt15(sp.h_core()(p, q)) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
    for (int p = 0; p < sp.n_orb(); ++p)
        if (sp.orbital_energies()[p] != 0.0)
            out << ' ' << fmt15(sp.orbital_energies()[p]) << ' ' << p + 1 << " 0 0 0\n";
    out << ' ' << fmt15(sp.e_core()) << " 0 0 0 0\n";
}

std::string write_fcidump_string(const SpatialIntegrals& sp) {
    std::ostringstream ss;
    write_fcidump(sp, ss);
    return ss.str();
}

// ---------------------------------------------------------------------------
// Spin-orbital expansion and built-ins

IntegralSet spatial_to_spin(const SpatialIntegrals& sp, SpinOrdering ordering) {
    const int n = sp.n_orb();
    const int n_so = 2 * n;
    auto so_index = [&](int p, Spin sigma) {
        return ordering == SpinOrdering::Interleave
                   ? 2 * p + (sigma == Spin::Beta ? 1 : 0)
                   : p + (sigma == Spin::Beta ? n : 0);
    };
    std::vector<Spin> spins(n_so, Spin::Alpha);
    for (int p = 0; p < n; ++p) spins[so_index(p, Spin::Beta)] = Spin::Beta;

    IntegralSet ints(n_so, spins);
    ints.set_e_core(sp.e_core());
    ints.n_elec_hint = sp.n_elec();
    ints.ms2_hint = sp.ms2();
    for (int p = 0; p < n; ++p)
        for (Spin sg : {Spin::Alpha, Spin::Beta}) ints.spatial_of[so_index(p, sg)] = p;

    for (int p = 0; p < n; ++p)
        for (int q = 0; q <= p; ++q)
            if (sp.h_core()(p, q) != 0.0)
                for (Spin sg : {Spin::Alpha, Spin::Beta})
                    ints.set_h(so_index(p, sg), so_index(q, sg), sp.h_core()(p, q));

    // <p sigma, q tau | r sigma, s tau> = (pr|qs): expand every stored chemist
    // entry over its images and both spin assignments.
    for (const auto& [t, v] : sp.sorted_eri()) {
        const auto [a, b, c, d] = std::array<int, 4>{t[0], t[1], t[2], t[3]};
        std::array<std::array<int, 4>, 8> images = {{{a, b, c, d},
                                                     {b, a, c, d},
                                                     {a, b, d, c},
                                                     {b, a, d, c},
                                                     {c, d, a, b},
                                                     {d, c, a, b},
                                                     {c, d, b, a},
                                                     {d, c, b, a}}};
        std::sort(images.begin(), images.end());
        auto end = std::unique(images.begin(), images.end());
        for (auto it = images.begin(); it != end; ++it) {
            const auto& im = *it; // chemist (im0 im1 | im2 im3)
            for (Spin sg : {Spin::Alpha, Spin::Beta})
                for (Spin tu : {Spin::Alpha, Spin::Beta})
                    ints.set_g(so_index(im[0], sg), so_index(im[2], tu), so_index(im[1], sg),
                               so_index(im[3], tu), v);
        }
    }
    return ints;
}

IntegralSet builtin_dataset(const std::string& name) {
    // Two spatial orbitals (HOMO, LUMO); chemist-convention values.
    double h_aa, h_bb, j_aa, j_bb, j_ab, k_ab;
    if (name == "ch2_cas22") {
        h_aa = -0.853007;
        h_bb = -0.841410;
        j_aa = 0.530171;
        j_bb = 0.529723;
        j_ab = 0.481270;
        k_ab = 0.032834;
    } else if (name == "h2_minimal") {
        h_aa = -1.252477;
        h_bb = -0.475934;
        j_aa = 0.674493;
        j_bb = 0.697397;
        j_ab = 0.663472;
        k_ab = 0.181287;
    } else {
        throw std::invalid_argument("unknown built-in dataset '" + name + "'");
    }
    SpatialIntegrals sp(2, 2, 0);
    sp.set_h_core(0, 0, h_aa);
    sp.set_h_core(1, 1, h_bb);
    sp.set_eri(0, 0, 0, 0, j_aa);
    sp.set_eri(1, 1, 1, 1, j_bb);
    sp.set_eri(0, 0, 1, 1, j_ab);
    sp.set_eri(0, 1, 0, 1, k_ab);
    return spatial_to_spin(sp, SpinOrdering::Interleave);
}

} // namespace aspsim
