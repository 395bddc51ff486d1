#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "aspsim/expm.hpp"
#include "aspsim/fermion.hpp"
#include "aspsim/schedule.hpp"

namespace aspsim {

/// Fixed step size plus automatic halving until the final overlap moves by
/// less than refine_tol (set refine_tol <= 0 to disable refinement).
struct StepControl {
    double dt = 0.1;
    double refine_tol = 1e-4;
    int max_halvings = 8;
};

/// A fully specified interpolation run H(s) = (1-s) h_init + s h_final.
struct AspProblem {
    Eigen::SparseMatrix<double> h_init;
    Eigen::SparseMatrix<double> h_final;
    std::string space_tag = "det_sector";
    /// Initial state; empty means the ground state of h_init.
    Eigen::VectorXcd psi0;
    Schedule schedule = Schedule::linear();
    double total_time = 0.0; // hbar/E_h units
    StepControl step;
    int trace_stride = 50;
};

struct TraceSample {
    double t = 0.0;
    double s = 0.0;
    double norm = 0.0;
    double energy = 0.0;     // <psi|H(s)|psi>
    double ov_instant = 0.0; // vs instantaneous ground state (projector if degenerate)
    double ov_final = 0.0;   // vs reachable ground state of h_final
};

struct AspTrace {
    std::vector<TraceSample> samples;
    Eigen::VectorXcd final_state;
    double final_overlap = 0.0;
    double dt_used = 0.0;
    long steps = 0;
    int halvings = 0;
    double refine_delta = 0.0; // |overlap change| at the accepted halving
};

/// (1-s) a + s b. Spaces must match.
Eigen::SparseMatrix<double> interpolate(const Eigen::SparseMatrix<double>& a,
                                        const Eigen::SparseMatrix<double>& b, double s);

/// Lowest eigenstate of h with squared overlap > tol against psi0 (the ground
/// state of the symmetry block the initial state actually explores).
std::pair<double, Eigen::VectorXd> reachable_ground_state(const Eigen::SparseMatrix<double>& h,
                                                          const Eigen::VectorXcd& psi0,
                                                          double tol = 1e-8);

/// Midpoint-rule propagation |psi(t+dt)> = exp(-i H(s((t+dt/2)/T)) dt) |psi(t)>.
/// Norm drift beyond 1e-8 aborts with a runtime_error.
AspTrace evolve(const AspProblem& problem);

struct GapPoint {
    double s = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double gap = 0.0;
    double m = 0.0; // |<l=1;s| dH/ds |l=0;s>|, projector norm if E1 degenerate
    bool degenerate = false;
};

struct GapProfile {
    std::vector<GapPoint> points;
    double g_min = 0.0;
    double s_at_min = 0.0;
    double eps = 0.0; // max m over the grid
};

struct GapProfileOptions {
    /// When set, the profile is computed inside the invariant subspace
    /// generated from this state by {h_init, h_final} (the block the dynamics
    /// actually explores; levels of other symmetry are excluded).
    std::optional<Eigen::VectorXd> restrict_reachable_from;
};

GapProfile gap_profile(const Eigen::SparseMatrix<double>& h_init,
                       const Eigen::SparseMatrix<double>& h_final,
                       const std::vector<double>& grid, const GapProfileOptions& opts = {});

/// Uniform s-grid helper.
std::vector<double> uniform_grid(int points);

/// eps / g_min^2, the scale of the sufficient-time bound. Throws on zero gap.
double sufficient_time(const GapProfile& profile);

struct MinTimeResult {
    double t_star = 0.0;
    double achieved_overlap = 0.0;
    int evolutions = 0;
    std::vector<std::pair<double, double>> probes; // (T, final overlap) per evolution
};

/// Smallest total time (5% relative bracket) whose final overlap reaches the
/// target: geometric doubling from t0, then bisection. Throws runtime_error
/// "not adiabatically reachable at cap" beyond the cap.
MinTimeResult find_min_time(const AspProblem& base, double target_overlap, double t0 = 1.0,
                            double cap = 1e7);

/// Orthonormal basis (columns) of the smallest invariant subspace containing
/// seed under all ops.
Eigen::MatrixXd reachable_subspace(const std::vector<const Eigen::SparseMatrix<double>*>& ops,
                                   const Eigen::VectorXd& seed, double tol = 1e-10);

/// Local-X initial Hamiltonian sum_i (I - X_i)/2 as a PauliSum-backed sparse
/// matrix on n qubits (ground state: uniform superposition, eigenvalue 0).
Eigen::SparseMatrix<double> local_x_matrix(int n_qubits);

} // namespace aspsim
