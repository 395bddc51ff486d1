#include "aspsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aspsim/eig.hpp"
#include "aspsim/pauli.hpp"

namespace aspsim {

Eigen::SparseMatrix<double> interpolate(const Eigen::SparseMatrix<double>& a,
                                        const Eigen::SparseMatrix<double>& b, double s) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("interpolate: operator spaces do not match");
    return ((1.0 - s) * a + s * b).pruned();
}

std::pair<double, Eigen::VectorXd> reachable_ground_state(const Eigen::SparseMatrix<double>& h,
                                                          const Eigen::VectorXcd& psi0,
                                                          double tol) {
    const int dim = static_cast<int>(h.rows());
    if (dim <= 512) {
        Eigen::VectorXd vals;
        Eigen::MatrixXd vecs;
        dense_eigh(Eigen::MatrixXd(h), vals, vecs);
        for (int k = 0; k < dim; ++k) {
            std::complex<double> ov = vecs.col(k).cast<std::complex<double>>().dot(psi0);
            if (std::norm(ov) > tol) {
                Eigen::VectorXd v = vecs.col(k);
                fix_phase(v);
                return {vals[k], v};
            }
        }
        throw std::runtime_error("no final eigenstate overlaps the initial state");
    }
    // Iterative path: ask for a few lowest and pick the first reachable one.
    auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = h * x; };
    int k_try = 4;
    while (true) {
        auto pairs = lanczos_lowest(apply, dim, std::min(k_try, dim));
        for (auto& [e, v] : pairs) {
            std::complex<double> ov = v.cast<std::complex<double>>().dot(psi0);
            if (std::norm(ov) > tol) return {e, v};
        }
        if (k_try >= dim || k_try >= 64)
            throw std::runtime_error("no low final eigenstate overlaps the initial state");
        k_try *= 2;
    }
}

namespace {

Eigen::VectorXcd ground_state_complex(const Eigen::SparseMatrix<double>& h) {
    SparseHamiltonian sh;
    sh.dim = static_cast<int>(h.rows());
    sh.mat = h;
    auto pairs = ground_state(sh, 1);
    return pairs[0].second.cast<std::complex<double>>();
}

struct InstantGround {
    double e0 = 0.0, e1 = 0.0;
    Eigen::MatrixXd ground_space; // columns; >1 when degenerate
};

InstantGround instant_ground(const Eigen::SparseMatrix<double>& h) {
    InstantGround g;
    const int dim = static_cast<int>(h.rows());
    if (dim <= 512) {
        Eigen::VectorXd vals;
        Eigen::MatrixXd vecs;
        dense_eigh(Eigen::MatrixXd(h), vals, vecs);
        g.e0 = vals[0];
        g.e1 = dim > 1 ? vals[1] : vals[0];
        int deg = 1;
        while (deg < dim && vals[deg] - vals[0] < 1e-10) ++deg;
        g.ground_space = vecs.leftCols(deg);
    } else {
        auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = h * x; };
        auto pairs = lanczos_lowest(apply, dim, 2);
        g.e0 = pairs[0].first;
        g.e1 = pairs[1].first;
        int deg = (pairs[1].first - pairs[0].first < 1e-10) ? 2 : 1;
        g.ground_space.resize(dim, deg);
        for (int j = 0; j < deg; ++j) g.ground_space.col(j) = pairs[j].second;
    }
    return g;
}

struct RunResult {
    AspTrace trace;
};

AspTrace run_once(const AspProblem& p, const Eigen::VectorXcd& psi_init,
                  const Eigen::VectorXd& target, double dt) {
    const double T = p.total_time;
    const long n_steps = std::max<long>(static_cast<long>(std::ceil(T / dt)), 16);
    const double dtt = T / static_cast<double>(n_steps);

    Eigen::VectorXcd psi = psi_init;
    const Eigen::VectorXcd target_c = target.cast<std::complex<double>>();

    AspTrace trace;
    trace.dt_used = dtt;
    trace.steps = n_steps;

    auto record = [&](double t, double s) {
        TraceSample sm;
        sm.t = t;
        sm.s = s;
        sm.norm = psi.norm();
        sm.energy = (1.0 - s) * std::real(psi.dot(p.h_init * psi)) +
                    s * std::real(psi.dot(p.h_final * psi));
        InstantGround g = instant_ground(interpolate(p.h_init, p.h_final, s));
        if (g.ground_space.cols() == 1) {
            sm.ov_instant = std::norm(g.ground_space.col(0).cast<std::complex<double>>().dot(psi));
        } else {
            // overlap with the degenerate eigenspace projector
            Eigen::VectorXcd proj =
                g.ground_space.cast<std::complex<double>>().adjoint() * psi;
            sm.ov_instant = proj.squaredNorm();
        }
        sm.ov_final = std::norm(target_c.dot(psi));
        trace.samples.push_back(sm);
    };

    record(0.0, p.schedule.s(0.0));

    for (long k = 0; k < n_steps; ++k) {
        const double t_mid = (static_cast<double>(k) + 0.5) * dtt;
        const double s = p.schedule.s(t_mid / T);
        auto apply = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
            y = (1.0 - s) * (p.h_init * x) + s * (p.h_final * x);
        };
        psi = expm_apply(apply, psi, dtt);
        const double drift = std::abs(psi.norm() - 1.0);
        if (drift > 1e-8)
            throw std::runtime_error("evolve: norm drift " + std::to_string(drift) +
                                     " exceeds 1e-8");
        const double t_now = (static_cast<double>(k) + 1.0) * dtt;
        if ((k + 1) % p.trace_stride == 0 && k + 1 != n_steps)
            record(t_now, p.schedule.s(t_now / T));
    }
    record(T, p.schedule.s(1.0));

    trace.final_state = psi;
    trace.final_overlap = std::norm(target_c.dot(psi));
    return trace;
}

} // namespace

AspTrace evolve(const AspProblem& p) {
    if (p.h_init.rows() != p.h_final.rows())
        throw std::invalid_argument("evolve: operator spaces do not match");
    if (!(p.total_time > 0.0)) throw std::invalid_argument("evolve: total time must be positive");
    if (!(p.step.dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");

    Eigen::VectorXcd psi0 = p.psi0;
    if (psi0.size() == 0) psi0 = ground_state_complex(p.h_init);
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("evolve: initial state must be unit norm");

    auto [e_tgt, target] = reachable_ground_state(p.h_final, psi0);

    double dt = std::min(p.step.dt, p.total_time);
    AspTrace best = run_once(p, psi0, target, dt);
    if (p.step.refine_tol > 0.0) {
        for (int h = 0; h < p.step.max_halvings; ++h) {
            AspTrace finer = run_once(p, psi0, target, dt / 2.0);
            double delta = std::abs(finer.final_overlap - best.final_overlap);
            finer.halvings = h + 1;
            finer.refine_delta = delta;
            best = std::move(finer);
            dt /= 2.0;
            if (delta < p.step.refine_tol) break;
        }
    }
    return best;
}

std::vector<double> uniform_grid(int points) {
    if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = double(i) / double(points - 1);
    return g;
}

Eigen::MatrixXd reachable_subspace(const std::vector<const Eigen::SparseMatrix<double>*>& ops,
                                   const Eigen::VectorXd& seed, double tol) {
    std::vector<Eigen::VectorXd> basis;
    basis.push_back(seed.normalized());
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t current = basis.size();
        for (const auto* op : ops) {
            for (std::size_t i = 0; i < current; ++i) {
                Eigen::VectorXd w = (*op) * basis[i];
                for (const auto& b : basis) w -= b.dot(w) * b;
                for (const auto& b : basis) w -= b.dot(w) * b;
                if (w.norm() > tol) {
                    basis.push_back(w.normalized());
                    grew = true;
                }
            }
        }
    }
    Eigen::MatrixXd out(seed.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) out.col(i) = basis[i];
    return out;
}

GapProfile gap_profile(const Eigen::SparseMatrix<double>& h_init,
                       const Eigen::SparseMatrix<double>& h_final,
                       const std::vector<double>& grid, const GapProfileOptions& opts) {
    if (h_init.rows() != h_final.rows())
        throw std::invalid_argument("gap_profile: operator spaces do not match");
    if (grid.size() < 2) throw std::invalid_argument("gap_profile: need at least 2 grid points");
    for (double s : grid)
        if (s < 0.0 || s > 1.0) throw std::invalid_argument("gap_profile: s outside [0,1]");

    // Optional restriction to the invariant block explored from a seed state.
    Eigen::MatrixXd hi, hf;
    if (opts.restrict_reachable_from) {
        Eigen::MatrixXd basis =
            reachable_subspace({&h_init, &h_final}, *opts.restrict_reachable_from);
        hi = basis.transpose() * h_init * basis;
        hf = basis.transpose() * h_final * basis;
    } else {
        hi = Eigen::MatrixXd(h_init);
        hf = Eigen::MatrixXd(h_final);
    }
    const Eigen::MatrixXd dh = hf - hi;

    GapProfile prof;
    prof.g_min = std::numeric_limits<double>::infinity();
    for (double s : grid) {
        Eigen::MatrixXd hs = (1.0 - s) * hi + s * hf;
        Eigen::VectorXd vals;
        Eigen::MatrixXd vecs;
        dense_eigh(hs, vals, vecs);
        GapPoint pt;
        pt.s = s;
        pt.e0 = vals[0];
        pt.e1 = vals.size() > 1 ? vals[1] : vals[0];
        pt.gap = pt.e1 - pt.e0;
        pt.degenerate = pt.gap < 1e-12;
        // |<l=1|dH/ds|l=0>| as the norm of dH|0> projected on the E1 eigenspace
        int first = 1, last = 1;
        while (last + 1 < vals.size() && vals[last + 1] - vals[1] < 1e-12) ++last;
        if (vals.size() > 1) {
            Eigen::MatrixXd p1 = vecs.middleCols(first, last - first + 1);
            pt.m = (p1.transpose() * (dh * vecs.col(0))).norm();
        }
        prof.points.push_back(pt);
        if (pt.gap < prof.g_min) {
            prof.g_min = pt.gap;
            prof.s_at_min = s;
        }
        prof.eps = std::max(prof.eps, pt.m);
    }
    return prof;
}

double sufficient_time(const GapProfile& profile) {
    if (!(profile.g_min > 1e-12)) throw std::runtime_error("sufficient_time: vanishing gap");
    return profile.eps / (profile.g_min * profile.g_min);
}

MinTimeResult find_min_time(const AspProblem& base, double target_overlap, double t0, double cap) {
    if (!(target_overlap > 0.0 && target_overlap < 1.0))
        throw std::invalid_argument("target overlap must lie in (0,1)");

    MinTimeResult res;
    auto overlap_at = [&](double T) {
        AspProblem p = base;
        p.total_time = T;
        ++res.evolutions;
        double ov = evolve(p).final_overlap;
        res.probes.emplace_back(T, ov);
        return ov;
    };

    double T = t0;
    double ov = overlap_at(T);
    if (ov >= target_overlap) {
        res.t_star = T;
        res.achieved_overlap = ov;
        return res;
    }
    while (ov < target_overlap) {
        T *= 2.0;
        if (T > cap) throw std::runtime_error("not adiabatically reachable at cap");
        ov = overlap_at(T);
    }
    double lo = T / 2.0, hi = T;
    double ov_hi = ov;
    while (hi / lo > 1.05) {
        double mid = std::sqrt(lo * hi);
        double ov_mid = overlap_at(mid);
        if (ov_mid >= target_overlap) {
            hi = mid;
            ov_hi = ov_mid;
        } else {
            lo = mid;
        }
    }
    res.t_star = hi;
    res.achieved_overlap = ov_hi;
    return res;
}

Eigen::SparseMatrix<double> local_x_matrix(int n_qubits) {
    PauliSum h(n_qubits);
    h.add(std::string(n_qubits, 'I'), 0.5 * n_qubits);
    for (int i = 0; i < n_qubits; ++i) {
        std::string w(n_qubits, 'I');
        w[i] = 'X';
        h.add(w, -0.5);
    }
    Eigen::SparseMatrix<std::complex<double>> m = pauli_to_sparse(h);
    std::vector<Eigen::Triplet<double>> trip;
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<std::complex<double>>::InnerIterator it(m, k); it; ++it)
            trip.emplace_back(it.row(), it.col(), it.value().real());
    Eigen::SparseMatrix<double> out(m.rows(), m.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

} // namespace aspsim
