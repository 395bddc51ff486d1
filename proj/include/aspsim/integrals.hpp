#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace aspsim {

enum class Spin : std::uint8_t { Alpha = 0, Beta = 1 };

/// Assignment of spin orbitals to spatial orbitals. Interleave puts the
/// alpha/beta pair of spatial orbital p at indices 2p, 2p+1 (so the lowest
/// spatial orbital occupies spin orbitals 0 and 1); Block puts all alphas
/// first.
enum class SpinOrdering { Interleave, Block };

/// Spatial-orbital integrals in chemist convention (pq|rs), the layout of an
/// FCIDUMP file. All indices are 0-based internally; file records are 1-based.
class SpatialIntegrals {
  public:
    SpatialIntegrals(int n_orb, int n_elec, int ms2);

    int n_orb() const { return n_orb_; }
    int n_elec() const { return n_elec_; }
    int ms2() const { return ms2_; }

    double e_core() const { return e_core_; }
    void set_e_core(double v) { e_core_ = v; }

    const Eigen::MatrixXd& h_core() const { return h_core_; }
    void set_h_core(int p, int q, double v);

    /// Orbital energies from p 0 0 0 records; kept for round trips, unused otherwise.
    const std::vector<double>& orbital_energies() const { return eps_; }
    void set_orbital_energy(int p, double v);

    /// Chemist (pq|rs); stores the canonical image under the 8-fold symmetry.
    void set_eri(int p, int q, int r, int s, double v);
    double eri(int p, int q, int r, int s) const;
    std::size_t eri_count() const { return eri_.size(); }

    /// Stored canonical entries, deterministically ordered (for serialization).
    std::vector<std::pair<std::array<int, 4>, double>> sorted_eri() const;

    static std::uint64_t chemist_key(int p, int q, int r, int s);

  private:
    int n_orb_;
    int n_elec_;
    int ms2_;
    double e_core_ = 0.0;
    Eigen::MatrixXd h_core_;
    std::vector<double> eps_;
    std::unordered_map<std::uint64_t, double> eri_;
};

/// Spin-orbital integrals: h_pq and two-electron <pq|rs> in physicist
/// notation, real orbitals. Entries that mix spins inconsistently
/// (spin(p) != spin(r) or spin(q) != spin(s)) are never stored and read as 0.
class IntegralSet {
  public:
    IntegralSet(int n_so, std::vector<Spin> spin_of);

    int n_so() const { return n_so_; }
    Spin spin_of(int p) const { return spin_of_[p]; }
    const std::vector<Spin>& spins() const { return spin_of_; }

    double e_core() const { return e_core_; }
    void set_e_core(double v) { e_core_ = v; }

    const Eigen::MatrixXd& h() const { return h_; }
    double h(int p, int q) const { return h_(p, q); }
    void set_h(int p, int q, double v);

    /// Physicist <pq|rs>; set stores the canonical image, get resolves any image.
    void set_g(int p, int q, int r, int s, double v);
    double g(int p, int q, int r, int s) const;
    std::size_t g_count() const { return g_.size(); }

    /// Calls fn(p, q, r, s, value) once for every distinct index tuple with a
    /// stored nonzero <pq|rs> (all symmetry images expanded, deduplicated).
    void for_each_g(const std::function<void(int, int, int, int, double)>& fn) const;

    /// Electron count / 2Sz declared by the source file, if any (CLI defaults).
    int n_elec_hint = 0;
    int ms2_hint = 0;

    /// Spatial orbital behind each spin orbital. Filled by spatial_to_spin;
    /// defaults to the interleaved convention (p/2).
    std::vector<int> spatial_of;

    static std::uint64_t physicist_key(int p, int q, int r, int s);
    static std::array<std::array<int, 4>, 8> physicist_images(int p, int q, int r, int s);

  private:
    int n_so_;
    std::vector<Spin> spin_of_;
    double e_core_ = 0.0;
    Eigen::MatrixXd h_;
    std::unordered_map<std::uint64_t, double> g_;
};

/// Parses FCIDUMP text: a &FCI header naming NORB/NELEC (MS2 optional),
/// terminated by "/" or "&END", followed by "value p q r s" records.
/// Throws ParseError with the offending line number.
SpatialIntegrals parse_fcidump(std::istream& in);
SpatialIntegrals parse_fcidump_string(const std::string& text);
SpatialIntegrals parse_fcidump_file(const std::string& path);

/// Writes FCIDUMP text at 15 significant digits; parse(write(x)) round-trips
/// to the printed precision and the text itself is a fixed point.
void write_fcidump(const SpatialIntegrals& sp, std::ostream& out);
std::string write_fcidump_string(const SpatialIntegrals& sp);

/// Expands spatial integrals to the spin-orbital basis: h is spin-diagonal,
/// <p sigma, q tau | r sigma, s tau> = (pr|qs).
IntegralSet spatial_to_spin(const SpatialIntegrals& sp,
                            SpinOrdering ordering = SpinOrdering::Interleave);

/// Built-in spin-orbital datasets "ch2_cas22" and "h2_minimal" (interleaved
/// ordering, spin orbitals 0,1 = HOMO alpha/beta and 2,3 = LUMO alpha/beta,
/// e_core = 0). Unknown names throw std::invalid_argument.
IntegralSet builtin_dataset(const std::string& name);

} // namespace aspsim
