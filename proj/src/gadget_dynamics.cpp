#include "aspsim/gadget_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "aspsim/cas22.hpp"
#include "aspsim/eig.hpp"
#include "aspsim/errors.hpp"

namespace aspsim {

namespace {

using SpMatC = Eigen::SparseMatrix<std::complex<double>>;

int parity(long w) { return __builtin_popcountl(w) & 1; }

/// Columns: orthonormal basis of the joint sector {X^(x4)=+1 per block,
/// global Z-parity = that of comp_seed}. Ancilla representatives have bit 3
/// of the block word clear.
Eigen::SparseMatrix<double> reduced_isometry(int n_comp, int r, long comp_seed_parity) {
    std::vector<Eigen::Triplet<double>> trip;
    const double amp = std::pow(2.0, -0.5 * r);
    std::vector<int> rep(r, 0);
    long col = 0;
    while (true) {
        int rep_parity = 0;
        for (int b = 0; b < r; ++b) rep_parity ^= parity(rep[b]);
        for (long comp = 0; comp < (1L << n_comp); ++comp) {
            if ((parity(comp) ^ rep_parity) != comp_seed_parity) continue;
            for (long m = 0; m < (1L << r); ++m) {
                long idx = comp;
                for (int b = 0; b < r; ++b) {
                    long a = rep[b] ^ (((m >> b) & 1) ? 0xF : 0x0);
                    idx |= a << (n_comp + 4 * b);
                }
                trip.emplace_back(idx, col, amp);
            }
            ++col;
        }
        int b = 0;
        while (b < r && ++rep[b] == 8) rep[b++] = 0;
        if (b == r) break;
    }
    Eigen::SparseMatrix<double> iso(1L << (n_comp + 4 * r), col);
    iso.setFromTriplets(trip.begin(), trip.end());
    return iso;
}

Eigen::MatrixXcd reduce(const PauliSum& terms, const Eigen::SparseMatrix<double>& iso) {
    SpMatC m = pauli_to_sparse(terms);
    SpMatC isoc = iso.cast<std::complex<double>>();
    return Eigen::MatrixXcd(isoc.adjoint() * (m * isoc));
}

} // namespace

GadgetAspResult evolve_gadget_asp(const IntegralSet& ints, const GadgetAspOptions& opts) {
    if (ints.n_so() != 4)
        throw std::invalid_argument("gadget ASP requires the 4-spin-orbital system");

    // Endpoint Hamiltonians and the k-local split at s=1.
    PauliSum h0 = cas22_hamiltonian(ints, 0.0); // diagonal initial (no 4-local part)
    PauliSum h1 = cas22_hamiltonian(ints, 1.0);
    auto [two1, targets_all] = extract_klocal(h1);

    std::vector<TargetTerm> targets;
    for (const auto& t : targets_all) {
        bool c9_pattern = (t.word == "XYYX" || t.word == "YXXY");
        if (!opts.restrict_c9 || !c9_pattern) targets.push_back(t);
    }

    GadgetSpec spec = make_gadget_spec(targets, 4, opts.lambda, opts.placement);
    const int n_total = spec.n_total();
    const int r = static_cast<int>(targets.size());
    if (n_total > opts.dense_cap_qubits)
        throw SizeLimitError("gadget ASP register of " + std::to_string(n_total) +
                             " qubits exceeds the dense cap of " +
                             std::to_string(opts.dense_cap_qubits));

    // Computational target: reachable ground of the Hamiltonian being lowered.
    PauliSum target_h = two1;
    for (const auto& t : targets) target_h.add(t.word, t.coeff);
    Eigen::MatrixXcd tmat = pauli_to_matrix(target_h);

    const int k_hf_word = 0b0011; // aufbau (1,1) determinant, spin orbitals 0 and 1
    Eigen::VectorXcd hf_vec = Eigen::VectorXcd::Zero(16);
    hf_vec[k_hf_word] = 1.0;
    Eigen::VectorXd tvals;
    Eigen::MatrixXcd tvecs;
    dense_eigh(tmat, tvals, tvecs);
    int tgt_idx = -1;
    for (int k = 0; k < 16; ++k)
        if (std::norm(tvecs.col(k).dot(hf_vec)) > 1e-8) {
            tgt_idx = k;
            break;
        }
    if (tgt_idx < 0) throw std::runtime_error("no reachable computational target state");
    Eigen::VectorXcd target = tvecs.col(tgt_idx);

    // H(s) = A + s B + f(s) W in the reduced sector. A carries the s=0
    // two-local part, the ancilla term and any s-independent couplings;
    // B the two-local slope; W the s-dependent couplings.
    PauliSum a_terms(n_total), b_terms(n_total), w_terms(n_total);
    const std::string anc_pad(4 * r, 'I');
    for (const auto& [w, c] : h0.terms()) a_terms.add(w + anc_pad, c);
    for (const auto& [w, c] : two1.terms()) b_terms.add(w + anc_pad, c);
    for (const auto& [w, c] : h0.terms()) b_terms.add(w + anc_pad, -c);

    const double ks = spec.k_scale;
    for (int b = 0; b < r; ++b) {
        const auto& blk = spec.blocks[b];
        a_terms.add(std::string(n_total, 'I'), ks * 3.0);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                std::string w(n_total, 'I');
                w[blk.ancillas[i]] = 'Z';
                w[blk.ancillas[j]] = 'Z';
                a_terms.add(w, -0.5 * ks);
            }
        auto wts = coupling_weights(targets[b], opts.placement);
        int leg = 0;
        for (int q = 0; q < 4; ++q) {
            char letter = targets[b].word[q];
            if (letter == 'I') continue;
            std::string w(n_total, 'I');
            w[q] = letter;
            w[blk.ancillas[leg]] = 'X';
            if (opts.placement == CoeffPlacement::Literal && leg != 0)
                a_terms.add(w, ks * opts.lambda * wts[leg]); // constant in s
            else
                w_terms.add(w, ks * opts.lambda * wts[leg]); // scales with f(s)
            ++leg;
        }
    }
    // c8, c9 are linear in s: literal leg-0 couplings scale as s, distributed
    // legs as |c(s)|^(1/4) = s^(1/4) |c(1)|^(1/4).
    auto fscale = [&](double s) {
        return opts.placement == CoeffPlacement::Literal ? s : std::pow(s, 0.25);
    };

    Eigen::SparseMatrix<double> iso = reduced_isometry(4, r, parity(k_hf_word));
    Eigen::MatrixXcd A = reduce(a_terms, iso);
    Eigen::MatrixXcd B = reduce(b_terms, iso);
    Eigen::MatrixXcd W = reduce(w_terms, iso);
    const int sector_dim = static_cast<int>(A.rows());

    // Initial state: HF (x) cat blocks, mapped into the reduced sector.
    Eigen::VectorXcd psi0_full = Eigen::VectorXcd::Zero(1L << n_total);
    {
        Eigen::VectorXcd anc = ancilla_initial_state(r);
        for (long m = 0; m < anc.size(); ++m)
            if (anc[m] != std::complex<double>(0.0, 0.0))
                psi0_full[k_hf_word | (m << 4)] = anc[m];
    }
    Eigen::VectorXcd psi0 = iso.cast<std::complex<double>>().adjoint() * psi0_full;
    if (std::abs(psi0.norm() - 1.0) > 1e-12)
        throw std::runtime_error("initial state fell outside the reduced sector");

    // Reduced overlap against a computational state: expand, then sum the
    // squared amplitudes over every ancilla configuration (partial trace).
    SpMatC isoc = iso.cast<std::complex<double>>();
    auto reduced_overlap = [&](const Eigen::VectorXcd& psi_red,
                               const Eigen::VectorXcd& comp_state) {
        Eigen::VectorXcd full = isoc * psi_red;
        double total = 0.0;
        const long n_anc_cfg = 1L << (4 * r);
        for (long m = 0; m < n_anc_cfg; ++m) {
            std::complex<double> amp = 0.0;
            for (int c = 0; c < 16; ++c) amp += std::conj(comp_state[c]) * full[c | (m << 4)];
            total += std::norm(amp);
        }
        return total;
    };
    auto full_overlap = [&](const Eigen::VectorXcd& psi_red) {
        Eigen::VectorXcd full = isoc * psi_red;
        Eigen::VectorXcd anc = ancilla_initial_state(r);
        std::complex<double> amp = 0.0;
        for (long m = 0; m < anc.size(); ++m) {
            if (anc[m] == std::complex<double>(0.0, 0.0)) continue;
            for (int c = 0; c < 16; ++c)
                amp += std::conj(target[c] * anc[m]) * full[c | (m << 4)];
        }
        return std::norm(amp);
    };

    const double T = opts.total_time;
    if (!(T > 0.0)) throw std::invalid_argument("total time must be positive");

    auto run_once = [&](double dt, bool with_trace) {
        const long n_steps = std::max<long>(static_cast<long>(std::ceil(T / dt)), 16);
        const double dtt = T / static_cast<double>(n_steps);
        Eigen::VectorXcd psi = psi0;
        AspTrace trace;
        trace.dt_used = dtt;
        trace.steps = n_steps;

        auto record = [&](double t, double s) {
            TraceSample sm;
            sm.t = t;
            sm.s = s;
            sm.norm = psi.norm();
            Eigen::MatrixXcd hs = A + s * B + fscale(s) * W;
            sm.energy = std::real(psi.dot(hs * psi));
            // instantaneous ground of the ideal computational H(s)
            PauliSum ideal(4);
            for (const auto& [w, c] : h0.terms()) ideal.add(w, (1.0 - s) * c);
            for (const auto& [w, c] : two1.terms()) ideal.add(w, s * c);
            for (const auto& t2 : targets) ideal.add(t2.word, s * t2.coeff);
            Eigen::VectorXd iv;
            Eigen::MatrixXcd ivecs;
            dense_eigh(pauli_to_matrix(ideal), iv, ivecs);
            int gi = 0;
            sm.ov_instant = reduced_overlap(psi, ivecs.col(gi));
            sm.ov_final = reduced_overlap(psi, target);
            trace.samples.push_back(sm);
        };

        if (with_trace) record(0.0, opts.schedule.s(0.0));
        Eigen::VectorXd evals;
        Eigen::MatrixXcd evecs;
        for (long k = 0; k < n_steps; ++k) {
            const double t_mid = (static_cast<double>(k) + 0.5) * dtt;
            const double s = opts.schedule.s(t_mid / T);
            Eigen::MatrixXcd hs = A + s * B + fscale(s) * W;
            dense_eigh(hs, evals, evecs);
            Eigen::VectorXcd coeffs = evecs.adjoint() * psi;
            for (int i = 0; i < sector_dim; ++i)
                coeffs[i] *= std::exp(std::complex<double>(0.0, -evals[i] * dtt));
            psi = evecs * coeffs;
            const double drift = std::abs(psi.norm() - 1.0);
            if (drift > 1e-8)
                throw std::runtime_error("gadget evolve: norm drift exceeds 1e-8");
            if (with_trace && (k + 1) % opts.trace_stride == 0 && k + 1 != n_steps)
                record((k + 1) * dtt, opts.schedule.s((k + 1) * dtt / T));
        }
        if (with_trace) record(T, opts.schedule.s(1.0));
        trace.final_state = psi;
        trace.final_overlap = reduced_overlap(psi, target);
        return trace;
    };

    double dt = std::min(opts.step.dt, T);
    AspTrace best = run_once(dt, true);
    if (opts.step.refine_tol > 0.0) {
        for (int h = 0; h < opts.step.max_halvings; ++h) {
            AspTrace finer = run_once(dt / 2.0, true);
            double delta = std::abs(finer.final_overlap - best.final_overlap);
            finer.halvings = h + 1;
            finer.refine_delta = delta;
            best = std::move(finer);
            dt /= 2.0;
            if (delta < opts.step.refine_tol) break;
        }
    }

    GadgetAspResult res;
    res.trace = std::move(best);
    res.final_overlap_reduced = res.trace.final_overlap;
    res.final_overlap_full = full_overlap(res.trace.final_state);
    res.target_energy = tvals[tgt_idx];
    res.n_qubits = n_total;
    res.sector_dim = sector_dim;
    res.spec = spec;
    return res;
}

} // namespace aspsim
