#include "aspsim/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "aspsim/eig.hpp"
#include "aspsim/errors.hpp"

namespace aspsim {

std::pair<PauliSum, std::vector<TargetTerm>> extract_klocal(const PauliSum& h) {
    PauliSum two_local(h.n_qubits());
    std::vector<TargetTerm> targets;
    for (const auto& [w, c] : h.sorted_terms()) {
        if (PauliSum::weight(w) <= 2)
            two_local.add(w, c);
        else
            targets.push_back(TargetTerm{c.real(), w});
    }
    return {std::move(two_local), std::move(targets)};
}

GadgetSpec make_gadget_spec(const std::vector<TargetTerm>& targets, int n_comp, double lambda,
                            CoeffPlacement placement) {
    for (const auto& t : targets) {
        if (t.k() != 4)
            throw std::invalid_argument("gadget lowering supports k = 4 terms only, got k = " +
                                        std::to_string(t.k()));
        if (static_cast<int>(t.word.size()) != n_comp)
            throw std::invalid_argument("target word length does not match n_comp");
    }
    const int r = static_cast<int>(targets.size());
    const int k = 4;
    GadgetSpec spec;
    spec.n_comp = n_comp;
    spec.terms = targets;
    spec.placement = placement;
    spec.lambda = lambda;
    spec.lambda_max = r > 0 ? double(k - 1) / (4.0 * k * r) : double(k - 1) / (4.0 * k);
    spec.k_scale = -6.0 / (4.0 * lambda * lambda * lambda * lambda);
    if (r > 0 && !(lambda > 0.0 && lambda < spec.lambda_max)) {
        std::ostringstream msg;
        msg << "lambda = " << lambda << " violates the convergence bound 0 < lambda < (k-1)/(4k r) = "
            << spec.lambda_max << " for r = " << r << " terms";
        throw std::invalid_argument(msg.str());
    }
    for (int b = 0; b < r; ++b) {
        AncillaBlock blk;
        blk.term_word = targets[b].word;
        for (int j = 0; j < 4; ++j) blk.ancillas[j] = n_comp + 4 * b + j;
        spec.blocks.push_back(blk);
    }
    return spec;
}

std::array<double, 4> coupling_weights(const TargetTerm& term, CoeffPlacement placement) {
    if (placement == CoeffPlacement::Literal) return {term.coeff, 1.0, 1.0, 1.0};
    double w = std::pow(std::abs(term.coeff), 0.25);
    return {std::copysign(w, term.coeff), w, w, w};
}

PauliSum build_gadget(const GadgetSpec& spec) {
    const int n = spec.n_total();
    PauliSum h(std::max(n, 1));
    const double ks = spec.k_scale;
    for (std::size_t b = 0; b < spec.terms.size(); ++b) {
        const auto& blk = spec.blocks[b];
        h.add(std::string(n, 'I'), ks * 3.0);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                std::string w(n, 'I');
                w[blk.ancillas[i]] = 'Z';
                w[blk.ancillas[j]] = 'Z';
                h.add(w, -0.5 * ks);
            }
        // Couplings: ancilla j pairs with the j-th non-identity letter of the
        // term (ordered by computational qubit index).
        auto wts = coupling_weights(spec.terms[b], spec.placement);
        int leg = 0;
        for (int q = 0; q < spec.n_comp; ++q) {
            char letter = spec.terms[b].word[q];
            if (letter == 'I') continue;
            std::string w(n, 'I');
            w[q] = letter;
            w[blk.ancillas[leg]] = 'X';
            h.add(w, ks * spec.lambda * wts[leg]);
            ++leg;
        }
    }
    return h;
}

Eigen::VectorXcd ancilla_initial_state(int r) {
    if (r < 1) throw std::invalid_argument("need at least one ancilla block");
    if (r > 5) throw SizeLimitError("ancilla_initial_state: cap is 5 blocks");
    const long d = 1L << (4 * r);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    const double amp = std::pow(2.0, -0.5 * r);
    for (long m = 0; m < (1L << r); ++m) {
        long idx = 0;
        for (int b = 0; b < r; ++b)
            if ((m >> b) & 1) idx |= 0xFL << (4 * b);
        v[idx] = amp;
    }
    return v;
}

Eigen::SparseMatrix<double> xsector_isometry(int n_comp, int r) {
    // Per block, the +1 eigenspace of X^(x4) is spanned by
    // (|b> + |~b>)/sqrt(2) for the 8 representative words b with bit 3 clear.
    const long d_full = 1L << (n_comp + 4 * r);
    long d_sec = 1L << n_comp;
    for (int b = 0; b < r; ++b) d_sec *= 8;
    std::vector<Eigen::Triplet<double>> trip;
    const double amp = std::pow(2.0, -0.5 * r);
    long col = 0;
    std::vector<int> rep(r, 0);
    while (true) {
        for (long comp = 0; comp < (1L << n_comp); ++comp) {
            for (long m = 0; m < (1L << r); ++m) {
                long idx = comp;
                for (int b = 0; b < r; ++b) {
                    long a = rep[b] ^ (((m >> b) & 1) ? 0xF : 0x0);
                    idx |= a << (n_comp + 4 * b);
                }
                trip.emplace_back(idx, col + comp, amp);
            }
        }
        col += 1L << n_comp;
        int b = 0;
        while (b < r && ++rep[b] == 8) rep[b++] = 0;
        if (b == r) break;
    }
    Eigen::SparseMatrix<double> iso(d_full, d_sec);
    iso.setFromTriplets(trip.begin(), trip.end());
    return iso;
}

double spectral_error(const PauliSum& gadget, const PauliSum& two_local, const PauliSum& target,
                      int n_low) {
    const int n_comp = two_local.n_qubits();
    if (target.n_qubits() != n_comp)
        throw std::invalid_argument("target/two_local qubit counts differ");
    const int n_total = gadget.n_qubits();
    const int n_anc = n_total - n_comp;
    if (n_anc % 4 != 0) throw std::invalid_argument("gadget register is not blocks of 4 ancillas");
    const int r = n_anc / 4;
    if (n_total > 14) throw SizeLimitError("spectral_error: dense cap is 14 qubits");
    if (n_low < 1 || n_low > (1 << n_comp)) throw std::invalid_argument("bad n_low");

    Eigen::VectorXd target_vals = dense_eigvals(pauli_to_matrix(target));
    target_vals.conservativeResize(std::min<long>(target_vals.size(), n_low));

    Eigen::VectorXd manifold;
    if (r == 0) {
        manifold = dense_eigvals(pauli_to_matrix(two_local));
        manifold.conservativeResize(n_low);
    } else {
        // two_local padded to the extended register, plus the gadget
        PauliSum full = gadget;
        for (const auto& [w, c] : two_local.terms())
            full.add(w + std::string(4 * r, 'I'), c);
        Eigen::SparseMatrix<std::complex<double>> m = pauli_to_sparse(full);
        Eigen::SparseMatrix<double> iso = xsector_isometry(n_comp, r);
        Eigen::SparseMatrix<std::complex<double>> isoc = iso.cast<std::complex<double>>();
        Eigen::MatrixXcd sec = Eigen::MatrixXcd(isoc.adjoint() * (m * isoc));
        Eigen::VectorXd vals = dense_eigvals(sec);
        // k_scale < 0 puts the cat-state manifold at the top of the spectrum
        manifold = vals.tail(n_low);
    }
    std::sort(manifold.data(), manifold.data() + manifold.size());

    const double offset = manifold.mean() - target_vals.mean();
    double eps = 0.0;
    for (int i = 0; i < n_low; ++i)
        eps = std::max(eps, std::abs(manifold[i] - offset - target_vals[i]));
    return eps;
}

std::string gadget_sidecar_json(const GadgetSpec& spec) {
    nlohmann::json j;
    j["lambda"] = spec.lambda;
    j["k_s"] = spec.k_scale;
    j["n_comp"] = spec.n_comp;
    j["lambda_max"] = spec.lambda_max;
    j["placement"] = spec.placement == CoeffPlacement::Literal ? "literal" : "distributed";
    j["blocks"] = nlohmann::json::array();
    for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
        nlohmann::json blk;
        blk["term"] = spec.blocks[b].term_word;
        blk["coefficient"] = spec.terms[b].coeff;
        blk["ancilla_indices"] = spec.blocks[b].ancillas;
        j["blocks"].push_back(blk);
    }
    return j.dump(2);
}

} // namespace aspsim
