// Command-line front end: dataset/problem configuration, runs, sweeps, and
// plot-ready CSV emission. See README for usage.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aspsim/cas22.hpp"
#include "aspsim/dynamics.hpp"
#include "aspsim/eig.hpp"
#include "aspsim/errors.hpp"
#include "aspsim/fermion.hpp"
#include "aspsim/gadget_dynamics.hpp"
#include "aspsim/gadgets.hpp"
#include "aspsim/integrals.hpp"
#include "aspsim/pauli.hpp"
#include "aspsim/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace aspsim;

namespace {

constexpr int kExitError = 1;
constexpr int kExitFileNotFound = 2;
constexpr int kExitInfeasibleSector = 3;

struct Config {
    std::string dataset = "ch2_cas22";
    std::string fcidump;
    std::string sector; // "Na,Nb"
    std::string init = "mp";
    std::string schedule = "linear";
    double time = 500.0;
    double dt = 0.1;
    int stride = 50;
    double target_overlap = 0.99;
    double lambda = 0.01;
    bool restrict_c9 = false;
    bool gadget = false;
    std::string placement = "literal";
    bool reachable = false;
    bool include_core = false;
    int grid_points = 101;
    int eigs = 0; // 0: all (dense) or 4 (iterative)
    std::string out_dir = ".";
    // sweep
    std::string axis = "t-ladder";
    std::string times = "125,250,500,1000";
    std::string lambdas;
    double s_value = 1.0;
};

std::vector<std::string> g_argv;

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::string tok;
    std::istringstream ss(text);
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

IntegralSet load_integrals(const Config& cfg) {
    if (!cfg.fcidump.empty()) {
        if (!fs::exists(cfg.fcidump)) {
            std::cerr << "error: file not found: " << cfg.fcidump << "\n";
            std::exit(kExitFileNotFound);
        }
        return spatial_to_spin(parse_fcidump_file(cfg.fcidump));
    }
    return builtin_dataset(cfg.dataset);
}

Sector parse_sector(const Config& cfg, const IntegralSet& ints) {
    Sector sec;
    sec.n_so = ints.n_so();
    if (cfg.sector.empty()) {
        int n_elec = ints.n_elec_hint > 0 ? ints.n_elec_hint : 2;
        sec.n_alpha = (n_elec + ints.ms2_hint) / 2;
        sec.n_beta = n_elec - sec.n_alpha;
        return sec;
    }
    if (std::sscanf(cfg.sector.c_str(), "%d,%d", &sec.n_alpha, &sec.n_beta) != 2)
        throw std::invalid_argument("bad --sector, expected Na,Nb");
    return sec;
}

InitKind parse_init(const std::string& text) {
    if (text == "ag") return InitKind::ag();
    if (text == "mp") return InitKind::mp();
    if (text == "localx") return InitKind::local_x();
    if (text.rfind("cas:", 0) == 0) {
        std::vector<int> active;
        for (double v : parse_double_list(text.substr(4)))
            active.push_back(static_cast<int>(v) - 1); // 1-based orbitals on the CLI
        return InitKind::cas(active);
    }
    throw std::invalid_argument("bad --init, expected ag|mp|localx|cas:ORBS");
}

Schedule parse_schedule(const std::string& text) {
    if (text == "linear") return Schedule::linear();
    if (text.rfind("power:", 0) == 0) return Schedule::power(std::stod(text.substr(6)));
    throw std::invalid_argument("bad --schedule, expected linear|power:P");
}

CoeffPlacement parse_placement(const std::string& text) {
    if (text == "literal") return CoeffPlacement::Literal;
    if (text == "distributed") return CoeffPlacement::Distributed;
    throw std::invalid_argument("bad --placement, expected literal|distributed");
}

/// Sector problem (determinant basis) or full qubit-space problem for localx.
struct BuiltProblem {
    AspProblem problem;
    int hf_index = -1;
    int dim = 0;
};

BuiltProblem build_problem(const Config& cfg, const IntegralSet& ints) {
    BuiltProblem out;
    InitKind kind = parse_init(cfg.init);
    if (kind.variant == InitKind::Variant::LocalX) {
        PauliSum hq = jw_map(ints);
        Eigen::MatrixXcd m = pauli_to_matrix(hq);
        out.problem.h_final = m.real().sparseView();
        out.problem.h_init = local_x_matrix(ints.n_so());
        out.problem.space_tag = "qubit_space";
        out.dim = 1 << ints.n_so();
    } else {
        Sector sec = parse_sector(cfg, ints);
        DeterminantBasis basis = enumerate_basis(sec, ints);
        out.problem.h_final = build_final_hamiltonian(ints, basis, cfg.include_core).mat;
        out.problem.h_init = build_initial_hamiltonian(kind, ints, basis).mat;
        out.hf_index = hf_determinant(basis);
        out.dim = basis.size();
    }
    out.problem.schedule = parse_schedule(cfg.schedule);
    out.problem.total_time = cfg.time;
    out.problem.step.dt = cfg.dt;
    out.problem.trace_stride = cfg.stride;
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

json base_manifest(const Config& cfg, const std::string& command) {
    json j;
    j["command"] = command;
    j["argv"] = g_argv;
    j["version"] = kVersion;
    j["dataset"] = cfg.fcidump.empty() ? cfg.dataset : ("fcidump:" + cfg.fcidump);
    j["sector"] = cfg.sector;
    j["init"] = cfg.init;
    j["schedule"] = cfg.schedule;
    j["time"] = cfg.time;
    j["dt"] = cfg.dt;
    j["stride"] = cfg.stride;
    j["include_core"] = cfg.include_core;
    return j;
}

std::string trace_csv(const AspTrace& trace) {
    std::string out = "t,s,norm,energy,ov_instant,ov_final\n";
    for (const auto& s : trace.samples)
        out += csv_num(s.t) + "," + csv_num(s.s) + "," + csv_num(s.norm) + "," +
               csv_num(s.energy) + "," + csv_num(s.ov_instant) + "," + csv_num(s.ov_final) + "\n";
    return out;
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const Config& cfg) {
    IntegralSet ints = load_integrals(cfg);
    Sector sec = parse_sector(cfg, ints);
    DeterminantBasis basis = enumerate_basis(sec, ints);
    SparseHamiltonian h = build_final_hamiltonian(ints, basis, cfg.include_core);

    int k = cfg.eigs > 0 ? std::min(cfg.eigs, h.dim) : (h.dim <= 512 ? h.dim : std::min(4, h.dim));
    auto pairs = ground_state(h, k);

    std::string csv = "index,energy\n";
    for (int i = 0; i < k; ++i) csv += std::to_string(i) + "," + csv_num(pairs[i].first) + "\n";
    fs::create_directories(cfg.out_dir);
    write_file(fs::path(cfg.out_dir) / "spectrum.csv", csv);

    int hf = hf_determinant(basis);
    double e_hf = hf_energy(ints, basis.det(hf));
    double hf_ov = squared_overlap(pairs[0].second, Eigen::VectorXd::Unit(h.dim, hf));
    double gap = k > 1 ? pairs[1].first - pairs[0].first : 0.0;
    std::printf("E0=%.10f E1=%.10f gap=%.10f E_HF=%.10f hf_overlap=%.10f\n", pairs[0].first,
                k > 1 ? pairs[1].first : pairs[0].first, gap, e_hf, hf_ov);

    json j = base_manifest(cfg, "spectrum");
    j["outputs"] = {"spectrum.csv"};
    write_file(fs::path(cfg.out_dir) / "manifest.json", j.dump(2) + "\n");
    return 0;
}

int cmd_evolve(const Config& cfg) {
    IntegralSet ints = load_integrals(cfg);
    fs::create_directories(cfg.out_dir);
    json j = base_manifest(cfg, "evolve");

    AspTrace trace;
    if (cfg.gadget) {
        GadgetAspOptions opts;
        opts.lambda = cfg.lambda;
        opts.restrict_c9 = cfg.restrict_c9;
        opts.placement = parse_placement(cfg.placement);
        opts.schedule = parse_schedule(cfg.schedule);
        opts.total_time = cfg.time;
        opts.step.dt = cfg.dt;
        opts.trace_stride = cfg.stride;
        GadgetAspResult res = evolve_gadget_asp(ints, opts);
        trace = std::move(res.trace);
        j["gadget"] = {{"lambda", cfg.lambda},
                       {"restrict_c9", cfg.restrict_c9},
                       {"placement", cfg.placement},
                       {"n_qubits", res.n_qubits},
                       {"sector_dim", res.sector_dim},
                       {"final_overlap_full_register", res.final_overlap_full},
                       {"target_energy", res.target_energy}};
    } else {
        BuiltProblem bp = build_problem(cfg, ints);
        trace = evolve(bp.problem);
    }
    write_file(fs::path(cfg.out_dir) / "trace.csv", trace_csv(trace));
    j["outputs"] = {"trace.csv"};
    j["dt_used"] = trace.dt_used;
    j["steps"] = trace.steps;
    j["final_overlap"] = trace.final_overlap;
    write_file(fs::path(cfg.out_dir) / "manifest.json", j.dump(2) + "\n");
    std::printf("final_overlap=%.10f\n", trace.final_overlap);
    return 0;
}

int cmd_gap_profile(const Config& cfg) {
    IntegralSet ints = load_integrals(cfg);
    BuiltProblem bp = build_problem(cfg, ints);
    GapProfileOptions opts;
    if (cfg.reachable) {
        Eigen::VectorXd seed;
        if (bp.hf_index >= 0) {
            seed = Eigen::VectorXd::Unit(bp.dim, bp.hf_index);
        } else {
            seed = Eigen::VectorXd::Constant(bp.dim, 1.0 / std::sqrt(double(bp.dim)));
        }
        opts.restrict_reachable_from = seed;
    }
    GapProfile prof =
        gap_profile(bp.problem.h_init, bp.problem.h_final, uniform_grid(cfg.grid_points), opts);

    std::string csv = "s,E0,E1,gap,m\n";
    for (const auto& pt : prof.points)
        csv += csv_num(pt.s) + "," + csv_num(pt.e0) + "," + csv_num(pt.e1) + "," +
               csv_num(pt.gap) + "," + csv_num(pt.m) + "\n";
    fs::create_directories(cfg.out_dir);
    write_file(fs::path(cfg.out_dir) / "gap_profile.csv", csv);

    json j = base_manifest(cfg, "gap-profile");
    j["grid_points"] = cfg.grid_points;
    j["reachable"] = cfg.reachable;
    j["g_min"] = prof.g_min;
    j["s_at_min"] = prof.s_at_min;
    j["eps"] = prof.eps;
    j["outputs"] = {"gap_profile.csv"};
    write_file(fs::path(cfg.out_dir) / "manifest.json", j.dump(2) + "\n");
    std::printf("g_min=%.10f argmin_s=%.4f eps=%.10f", prof.g_min, prof.s_at_min, prof.eps);
    if (prof.g_min > 1e-12)
        std::printf(" sufficient_time=%.6g\n", sufficient_time(prof));
    else
        std::printf(" sufficient_time=inf (degenerate)\n");
    return 0;
}

int cmd_min_time(const Config& cfg) {
    IntegralSet ints = load_integrals(cfg);
    BuiltProblem bp = build_problem(cfg, ints);
    bp.problem.trace_stride = 1 << 20;
    MinTimeResult res = find_min_time(bp.problem, cfg.target_overlap);

    std::string csv = "T,final_overlap\n";
    for (const auto& [t, ov] : res.probes) csv += csv_num(t) + "," + csv_num(ov) + "\n";
    fs::create_directories(cfg.out_dir);
    write_file(fs::path(cfg.out_dir) / "min_time_probes.csv", csv);

    json j = base_manifest(cfg, "min-time");
    j["target_overlap"] = cfg.target_overlap;
    j["t_star"] = res.t_star;
    j["achieved_overlap"] = res.achieved_overlap;
    j["evolutions"] = res.evolutions;
    j["outputs"] = {"min_time_probes.csv"};
    write_file(fs::path(cfg.out_dir) / "manifest.json", j.dump(2) + "\n");
    std::printf("t_star=%.6g achieved_overlap=%.6f evolutions=%d\n", res.t_star,
                res.achieved_overlap, res.evolutions);
    return 0;
}

int cmd_gadgetize(const Config& cfg) {
    IntegralSet ints = load_integrals(cfg);
    PauliSum hs = cas22_hamiltonian(ints, cfg.s_value);
    auto [two_local, targets_all] = extract_klocal(hs);
    std::vector<TargetTerm> targets;
    for (const auto& t : targets_all)
        if (!cfg.restrict_c9 || (t.word != "XYYX" && t.word != "YXXY")) targets.push_back(t);

    GadgetSpec spec = make_gadget_spec(targets, 4, cfg.lambda, parse_placement(cfg.placement));
    PauliSum gadget = build_gadget(spec);
    PauliSum extended(spec.n_total() > 4 ? spec.n_total() : 4);
    const std::string pad(spec.n_ancilla(), 'I');
    for (const auto& [w, c] : two_local.terms()) extended.add(w + pad, c);
    for (const auto& [w, c] : gadget.terms()) extended.add(w, c);

    fs::create_directories(cfg.out_dir);
    write_file(fs::path(cfg.out_dir) / "gadget_hamiltonian.txt", format_pauli_sum(extended));
    write_file(fs::path(cfg.out_dir) / "gadget_layout.json", gadget_sidecar_json(spec) + "\n");

    json j = base_manifest(cfg, "gadgetize");
    j["lambda"] = cfg.lambda;
    j["restrict_c9"] = cfg.restrict_c9;
    j["placement"] = cfg.placement;
    j["s"] = cfg.s_value;
    j["outputs"] = {"gadget_hamiltonian.txt", "gadget_layout.json"};
    write_file(fs::path(cfg.out_dir) / "manifest.json", j.dump(2) + "\n");
    std::printf("n_comp=%d n_ancilla=%d n_total=%d lambda=%g lambda_max=%g k_s=%g\n", spec.n_comp,
                spec.n_ancilla(), spec.n_total(), spec.lambda, spec.lambda_max, spec.k_scale);
    return 0;
}

int cmd_sweep(const Config& cfg) {
    IntegralSet ints = load_integrals(cfg);
    fs::create_directories(cfg.out_dir);
    json j = base_manifest(cfg, "sweep");
    j["axis"] = cfg.axis;
    std::string csv;
    int failures = 0;

    if (cfg.axis == "t-ladder") {
        csv = "T,final_overlap,status\n";
        for (double t : parse_double_list(cfg.times)) {
            try {
                Config c = cfg;
                c.time = t;
                BuiltProblem bp = build_problem(c, ints);
                bp.problem.trace_stride = 1 << 20;
                AspTrace tr = evolve(bp.problem);
                csv += csv_num(t) + "," + csv_num(tr.final_overlap) + ",ok\n";
            } catch (const std::exception& e) {
                csv += csv_num(t) + ",nan," + std::string(e.what()) + "\n";
                ++failures;
            }
        }
    } else if (cfg.axis == "lambda-grid") {
        csv = "lambda,spectral_error,status\n";
        std::vector<double> grid;
        if (!cfg.lambdas.empty()) {
            grid = parse_double_list(cfg.lambdas);
        } else {
            // 8 logarithmic points across the convergence window
            for (int i = 0; i < 8; ++i) grid.push_back(0.004 * std::pow(0.045 / 0.004, i / 7.0));
        }
        PauliSum hs = cas22_hamiltonian(ints, cfg.s_value);
        auto [two_local, targets_all] = extract_klocal(hs);
        std::vector<TargetTerm> targets;
        for (const auto& t : targets_all)
            if (!cfg.restrict_c9 || (t.word != "XYYX" && t.word != "YXXY")) targets.push_back(t);
        PauliSum target_h = two_local;
        for (const auto& t : targets) target_h.add(t.word, t.coeff);
        for (double lam : grid) {
            try {
                GadgetSpec spec = make_gadget_spec(targets, 4, lam, parse_placement(cfg.placement));
                double eps = spectral_error(build_gadget(spec), two_local, target_h, 16);
                csv += csv_num(lam) + "," + csv_num(eps) + ",ok\n";
            } catch (const std::exception& e) {
                csv += csv_num(lam) + ",nan," + std::string(e.what()) + "\n";
                ++failures;
            }
        }
    } else if (cfg.axis == "init-comparison") {
        csv = "init,t_star,achieved_overlap,status\n";
        for (const std::string init : {"ag", "mp"}) {
            try {
                Config c = cfg;
                c.init = init;
                BuiltProblem bp = build_problem(c, ints);
                bp.problem.trace_stride = 1 << 20;
                MinTimeResult res = find_min_time(bp.problem, cfg.target_overlap);
                csv += init + "," + csv_num(res.t_star) + "," + csv_num(res.achieved_overlap) +
                       ",ok\n";
            } catch (const std::exception& e) {
                csv += init + ",nan,nan," + std::string(e.what()) + "\n";
                ++failures;
            }
        }
    } else {
        throw std::invalid_argument("bad --axis, expected t-ladder|lambda-grid|init-comparison");
    }

    write_file(fs::path(cfg.out_dir) / "sweep.csv", csv);
    j["outputs"] = {"sweep.csv"};
    j["failed_rows"] = failures;
    write_file(fs::path(cfg.out_dir) / "manifest.json", j.dump(2) + "\n");
    std::printf("sweep rows written to sweep.csv (%d failed)\n", failures);
    return failures == 0 ? 0 : kExitError;
}

void add_common(CLI::App* app, Config& cfg) {
    app->add_option("--dataset", cfg.dataset, "built-in dataset name (ch2_cas22 | h2_minimal)");
    app->add_option("--fcidump", cfg.fcidump, "FCIDUMP file path (overrides --dataset)");
    app->add_option("--sector", cfg.sector, "electron sector Na,Nb (default from the dataset)");
    app->add_option("--init", cfg.init, "initial Hamiltonian: ag|mp|localx|cas:ORBS");
    app->add_option("--schedule", cfg.schedule, "interpolation path: linear|power:P");
    app->add_option("--time", cfg.time, "total time T (hbar/E_h)");
    app->add_option("--dt", cfg.dt, "base step size");
    app->add_option("--stride", cfg.stride, "trace sampling stride (steps)");
    app->add_option("--target-overlap", cfg.target_overlap, "squared-overlap target");
    app->add_option("--lambda", cfg.lambda, "gadget perturbation strength");
    app->add_flag("--restrict-c9", cfg.restrict_c9, "drop the XYYX/YXXY 4-local pair");
    app->add_flag("--gadget", cfg.gadget, "evolve through the gadgetized Hamiltonian");
    app->add_option("--placement", cfg.placement,
                    "gadget coefficient placement: literal|distributed");
    app->add_flag("--reachable", cfg.reachable,
                  "restrict gap profiles to the subspace reachable from the initial state");
    app->add_flag("--include-core", cfg.include_core, "add e_core to the diagonal");
    app->add_option("--grid-points", cfg.grid_points, "s-grid size for profiles");
    app->add_option("--eigs", cfg.eigs, "eigenvalue count for spectrum (0 = all when dense)");
    app->add_option("--out", cfg.out_dir, "output directory");
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) g_argv.emplace_back(argv[i]);

    CLI::App app{"Adiabatic state preparation simulator (molecular Hamiltonians, "
                 "qubit mappings, perturbative gadgets)"};
    app.require_subcommand(1);
    Config cfg;

    auto* sp = app.add_subcommand("spectrum", "sector eigenvalues and HF data");
    auto* ev = app.add_subcommand("evolve", "propagate one ASP run and record the trace");
    auto* gp = app.add_subcommand("gap-profile", "E0/E1/gap/matrix-element profile along s");
    auto* mt = app.add_subcommand("min-time", "smallest T reaching the target overlap");
    auto* gz = app.add_subcommand("gadgetize", "emit the 2-local gadget Hamiltonian");
    auto* sw = app.add_subcommand("sweep", "T-ladder | lambda-grid | init-comparison");
    for (auto* s : {sp, ev, gp, mt, gz, sw}) add_common(s, cfg);
    sw->add_option("--axis", cfg.axis, "t-ladder|lambda-grid|init-comparison");
    sw->add_option("--times", cfg.times, "comma-separated T values for t-ladder");
    sw->add_option("--lambdas", cfg.lambdas, "comma-separated lambda values");
    gz->add_option("-s,--s-value", cfg.s_value, "interpolation parameter for gadgetize");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sp->parsed()) return cmd_spectrum(cfg);
        if (ev->parsed()) return cmd_evolve(cfg);
        if (gp->parsed()) return cmd_gap_profile(cfg);
        if (mt->parsed()) return cmd_min_time(cfg);
        if (gz->parsed()) return cmd_gadgetize(cfg);
        if (sw->parsed()) return cmd_sweep(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::string(e.what()).find("infeasible sector") != std::string::npos
                   ? kExitInfeasibleSector
                   : kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
