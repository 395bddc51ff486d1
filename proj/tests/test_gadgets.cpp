#include <gtest/gtest.h>

#include "aspsim/cas22.hpp"
#include "aspsim/eig.hpp"
#include "aspsim/errors.hpp"
#include "aspsim/gadgets.hpp"
#include "aspsim/integrals.hpp"

#include <nlohmann/json.hpp>

using namespace aspsim;

namespace {

std::vector<TargetTerm> ch2_targets(bool restricted) {
    IntegralSet ch2 = builtin_dataset("ch2_cas22");
    auto [two, targets] = extract_klocal(cas22_hamiltonian(ch2, 1.0));
    if (!restricted) return targets;
    std::vector<TargetTerm> keep;
    for (const auto& t : targets)
        if (t.word == "XXYY" || t.word == "YYXX") keep.push_back(t);
    return keep;
}

} // namespace

TEST(ExtractKlocal, Ch2FourTargets) {
    IntegralSet ch2 = builtin_dataset("ch2_cas22");
    auto [two, targets] = extract_klocal(cas22_hamiltonian(ch2, 1.0));
    ASSERT_EQ(targets.size(), 4u);
    for (const auto& t : targets) {
        EXPECT_EQ(t.k(), 4);
        EXPECT_TRUE(t.word == "XXYY" || t.word == "YYXX" || t.word == "XYYX" ||
                    t.word == "YXXY");
    }
    EXPECT_EQ(two.size(), 11u); // identity + 4 Z + 6 ZZ
}

TEST(ExtractKlocal, NoTargetsAtSZero) {
    IntegralSet ch2 = builtin_dataset("ch2_cas22");
    auto [two, targets] = extract_klocal(cas22_hamiltonian(ch2, 0.0));
    EXPECT_TRUE(targets.empty());
}

TEST(ExtractKlocal, PureTwoLocalPassesThrough) {
    PauliSum h(3);
    h.add("ZZI", 0.5);
    h.add("IXI", -0.25);
    auto [two, targets] = extract_klocal(h);
    EXPECT_TRUE(targets.empty());
    EXPECT_EQ(two.size(), 2u);
}

TEST(GadgetSpec, QubitCounting) {
    auto restricted = make_gadget_spec(ch2_targets(true), 4, 0.01);
    EXPECT_EQ(restricted.n_total(), 12);
    auto full = make_gadget_spec(ch2_targets(false), 4, 0.01);
    EXPECT_EQ(full.n_total(), 20);
}

TEST(GadgetSpec, LambdaBoundFourTerms) {
    auto targets = ch2_targets(false);
    EXPECT_NEAR(make_gadget_spec(targets, 4, 0.01).lambda_max, 3.0 / 64.0, 1e-15);
    EXPECT_THROW(make_gadget_spec(targets, 4, 0.05), std::invalid_argument);
    EXPECT_THROW(make_gadget_spec(targets, 4, 0.0), std::invalid_argument);
    EXPECT_THROW(make_gadget_spec(targets, 4, -0.01), std::invalid_argument);
}

TEST(GadgetSpec, KScaleValue) {
    auto spec = make_gadget_spec(ch2_targets(true), 4, 0.01);
    EXPECT_NEAR(spec.k_scale, -1.5e8, 1.0);
    // lambda = 0.01, k_s = -6/(4e-8)
    EXPECT_NEAR(make_gadget_spec(ch2_targets(true), 4, 0.02).k_scale, -6.0 / (4.0 * 1.6e-7),
                1e-2);
}

TEST(BuildGadget, SingleTermStructure) {
    std::vector<TargetTerm> one = {TargetTerm{1.0, "XXYY"}};
    auto spec = make_gadget_spec(one, 4, 0.05); // bound for r=1 is 3/16
    PauliSum g = build_gadget(spec);
    int n_zz = 0, n_coupling = 0, n_id = 0;
    for (const auto& [w, c] : g.terms()) {
        int wt = PauliSum::weight(w);
        EXPECT_LE(wt, 2);
        if (wt == 0) ++n_id;
        if (wt == 2 && w.find('Z') != std::string::npos) ++n_zz;
        if (wt == 2 && w.find('Z') == std::string::npos) ++n_coupling;
    }
    EXPECT_EQ(n_id, 1);
    EXPECT_EQ(n_zz, 6);
    EXPECT_EQ(n_coupling, 4); // one X(anc)(x)sigma coupling per leg
    EXPECT_EQ(g.n_qubits(), 8);
}

TEST(BuildGadget, EveryTermAtMostTwoLocal) {
    for (auto placement : {CoeffPlacement::Literal, CoeffPlacement::Distributed}) {
        auto spec = make_gadget_spec(ch2_targets(false), 4, 0.01, placement);
        PauliSum g = build_gadget(spec);
        for (const auto& [w, c] : g.terms()) EXPECT_LE(PauliSum::weight(w), 2);
    }
}

TEST(BuildGadget, CommutesWithBlockXString) {
    std::vector<TargetTerm> one = {TargetTerm{-0.7, "YXZY"}};
    auto spec = make_gadget_spec(one, 4, 0.05);
    Eigen::MatrixXcd g = pauli_to_matrix(build_gadget(spec));
    PauliSum xs(8);
    xs.add("IIIIXXXX", 1.0);
    Eigen::MatrixXcd x4 = pauli_to_matrix(xs);
    EXPECT_LT((g * x4 - x4 * g).cwiseAbs().maxCoeff(), 1e-6 * g.cwiseAbs().maxCoeff());
}

TEST(AncillaState, CatStateAmplitudes) {
    Eigen::VectorXcd v = ancilla_initial_state(1);
    EXPECT_NEAR(std::abs(v[0b0000] - std::complex<double>(1 / std::sqrt(2.0), 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v[0b1111] - std::complex<double>(1 / std::sqrt(2.0), 0)), 0.0, 1e-15);
    EXPECT_NEAR(v.norm(), 1.0, 1e-15);
    int nonzero = 0;
    for (long i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > 0) ++nonzero;
    EXPECT_EQ(nonzero, 2);

    Eigen::VectorXcd v2 = ancilla_initial_state(2);
    nonzero = 0;
    for (long i = 0; i < v2.size(); ++i)
        if (std::abs(v2[i]) > 0) {
            ++nonzero;
            EXPECT_NEAR(std::abs(v2[i]), 0.5, 1e-15);
        }
    EXPECT_EQ(nonzero, 4);
}

TEST(AncillaState, PlusOneXEigenstate) {
    Eigen::VectorXcd v = ancilla_initial_state(1);
    PauliSum xs(4);
    xs.add("XXXX", 1.0);
    Eigen::VectorXcd w = pauli_to_matrix(xs) * v;
    EXPECT_LT((w - v).norm(), 1e-14);
}

TEST(SpectralError, EmptyTargetsGiveZero) {
    IntegralSet ch2 = builtin_dataset("ch2_cas22");
    auto [two, targets] = extract_klocal(cas22_hamiltonian(ch2, 1.0));
    PauliSum empty_gadget(4); // no ancillas, nothing to lower
    EXPECT_DOUBLE_EQ(spectral_error(empty_gadget, two, two, 16), 0.0);
}

TEST(SpectralError, RestrictedCh2ChemicalAccuracy) {
    IntegralSet ch2 = builtin_dataset("ch2_cas22");
    auto [two, targets_all] = extract_klocal(cas22_hamiltonian(ch2, 1.0));
    auto targets = ch2_targets(true);
    PauliSum target_h = two;
    for (const auto& t : targets) target_h.add(t.word, t.coeff);

    auto spec = make_gadget_spec(targets, 4, 0.01, CoeffPlacement::Literal);
    double eps = spectral_error(build_gadget(spec), two, target_h, 16);
    EXPECT_LT(eps, 1.6e-3);
    EXPECT_GT(eps, 0.0);
}

TEST(SpectralError, XSectorIsometryShape) {
    Eigen::SparseMatrix<double> iso = xsector_isometry(4, 2);
    EXPECT_EQ(iso.rows(), 4096);
    EXPECT_EQ(iso.cols(), 1024);
    // columns orthonormal
    Eigen::MatrixXd gram = Eigen::MatrixXd(iso.transpose() * iso);
    EXPECT_LT((gram - Eigen::MatrixXd::Identity(1024, 1024)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Sidecar, JsonFields) {
    auto spec = make_gadget_spec(ch2_targets(true), 4, 0.01);
    auto j = nlohmann::json::parse(gadget_sidecar_json(spec));
    EXPECT_DOUBLE_EQ(j["lambda"].get<double>(), 0.01);
    EXPECT_EQ(j["n_comp"].get<int>(), 4);
    EXPECT_EQ(j["blocks"].size(), 2u);
    EXPECT_EQ(j["blocks"][0]["ancilla_indices"].size(), 4u);
}
