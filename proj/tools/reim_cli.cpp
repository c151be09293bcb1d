// Batch front end: one subcommand per experiment, CSV/JSON artifacts out.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "reim/fracpde.hpp"
#include "reim/greedy.hpp"
#include "reim/heat.hpp"
#include "reim/matfun.hpp"
#include "reim/model_io.hpp"
#include "reim/rng.hpp"
#include "reim/targets.hpp"

namespace {

using namespace reim;

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

struct CommonOpts {
    double eta = 1e-6;
    int n = 30;
    int dict_size = 0;  // 0 keeps the preset's count
    int sigma_size = 10000;
    std::string out_dir = ".";
    std::uint64_t seed = 20240817;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--eta", opts.eta, "left endpoint of the approximation interval")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--n", opts.n, "number of greedy iterations")->check(CLI::PositiveNumber);
    cmd->add_option("--dict-size", opts.dict_size, "dictionary candidate count (0 = preset)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--sigma-size", opts.sigma_size, "sample grid size")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out-dir", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "seed for randomized sweeps");
    cmd->add_option("--threads", opts.threads, "worker threads for shifted solves")
        ->check(CLI::PositiveNumber);
}

ReimConfig preset_config(const std::string& preset, const CommonOpts& opts) {
    ReimConfig cfg;
    if (preset == "power") {
        cfg = ReimConfig::power_preset(Interval(opts.eta, 1.0));
    } else if (preset == "shifted") {
        cfg = ReimConfig::shifted_preset(Interval(opts.eta, 1.0));
    } else if (preset == "matfun") {
        cfg = ReimConfig::matfun_preset();
    } else {
        throw CLI::ValidationError("--preset", "unknown preset " + preset);
    }
    if (opts.dict_size > 0) cfg.b_count = opts.dict_size;
    cfg.sigma_count = opts.sigma_size;
    cfg.n = opts.n;
    return cfg;
}

TargetFunction parse_target(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(':', start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    try {
        if ((parts[0] == "pow" || parts[0] == "power") && parts.size() == 2)
            return TargetFunction::power_neg(std::stod(parts[1]));
        if (parts[0] == "shifted" && parts.size() == 3)
            return TargetFunction::shifted_recip(std::stod(parts[1]), std::stod(parts[2]));
        if (parts[0] == "precond" && parts.size() == 2)
            return TargetFunction::precond(std::stod(parts[1]));
        if (parts[0] == "exp" && parts.size() == 2)
            return TargetFunction::exp_neg(std::stod(parts[1]));
        if (parts[0] == "phi" && parts.size() == 2)
            return TargetFunction::phi_neg(std::stod(parts[1]));
    } catch (const std::invalid_argument&) {
        // fall through to the usage error below
    }
    throw CLI::ValidationError("--target",
                               "expected pow:S, shifted:S:D, precond:K, exp:TAU or phi:TAU");
}

int cmd_approx(const CommonOpts& opts, const std::string& preset,
               const std::vector<std::string>& target_specs) {
    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);

    const ReimConfig cfg = preset_config(preset, opts);
    const ReimModel model = build_model(cfg);

    {
        auto out = open_out(dir / "errors.csv");
        out << "iteration,sup_error\n";
        double prev = 0.0;
        for (std::size_t m = 0; m < model.trace.sup_errors.size(); ++m) {
            const double e = model.trace.sup_errors[m];
            if (m > 0 && e > prev * (1.0 + 1e-10))
                throw std::runtime_error("greedy trace is not non-increasing");
            prev = e;
            out << m + 1 << ',' << fmt6(e) << '\n';
        }
    }
    {
        auto out = open_out(dir / "lebesgue.csv");
        out << "iteration,lebesgue\n";
        for (std::size_t m = 0; m < model.trace.lebesgue.size(); ++m) {
            if (model.trace.lebesgue[m] < 1.0 - 1e-9)
                throw std::runtime_error("Lebesgue estimate fell below 1");
            out << m + 1 << ',' << fmt6(model.trace.lebesgue[m]) << '\n';
        }
    }
    {
        auto out = open_out(dir / "poles_points.csv");
        out << "index,b,x\n";
        for (int i = 0; i < model.size(); ++i)
            out << i + 1 << ',' << fmt6(model.poles_b[i]) << ',' << fmt6(model.interp_x[i])
                << '\n';
    }
    save_model(model, (dir / "model.json").string());

    std::vector<TargetFunction> targets;
    if (target_specs.empty()) {
        for (double s : {0.25, 0.5, 0.75, 0.95}) targets.push_back(TargetFunction::power_neg(s));
    } else {
        for (const std::string& spec : target_specs) targets.push_back(parse_target(spec));
    }
    {
        const SampleGrid grid = geometric_grid(cfg.interval, cfg.sigma_count);
        auto out = open_out(dir / "target_errors.csv");
        out << "target,sup_error\n";
        for (const TargetFunction& t : targets) {
            const PartialFraction pf = interpolate(model, t);
            out << t.label() << ',' << fmt6(sup_error(pf, t, grid)) << '\n';
        }
    }
    std::cout << "approx: model with " << model.size() << " poles written to " << dir.string()
              << "\n";
    return 0;
}

int cmd_table1(const CommonOpts& opts, std::vector<int> p_list, Vec s_list, int jk_max) {
    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);
    if (p_list.empty()) p_list = {4, 5, 6};
    if (s_list.empty()) s_list = {0.25, 0.5, 0.75, 0.95};
    std::vector<double> labels;
    for (int p : p_list) {
        if (p < 1) throw CLI::ValidationError("--p", "label exponents must be >= 1");
        labels.push_back(std::pow(2.0, -p));
    }

    const ReimModel model = build_model(preset_config("power", opts));
    const std::vector<Table1Row> rows = run_table1(labels, s_list, model, jk_max, opts.threads);
    write_table1_csv(rows, (dir / "table1.csv").string());

    // wide companion: one row per h, an error/order column pair per s
    {
        auto out = open_out(dir / "table1_wide.csv");
        out << "h";
        for (double s : s_list) out << ",error_s=" << s << ",order_s=" << s;
        out << '\n';
        for (std::size_t i = 0; i < labels.size(); ++i) {
            out << fmt6(labels[i]);
            for (std::size_t j = 0; j < s_list.size(); ++j) {
                const Table1Row& r = rows[j * labels.size() + i];
                out << ',' << fmt6(r.l2_error) << ',';
                if (r.has_order) out << fmt6(r.order);
            }
            out << '\n';
        }
    }
    std::cout << "table1: " << rows.size() << " rows written to " << dir.string() << "\n";
    return 0;
}

int cmd_heat(const CommonOpts& opts, int h_log2, double s, double tol, double tau0, double t_final,
             bool discrete_symbol) {
    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);

    CommonOpts model_opts = opts;
    const ReimModel model = build_model(preset_config("shifted", model_opts));
    const HeatGrid grid = HeatGrid::from_spacing_log2(h_log2);
    HeatRunConfig cfg;
    cfg.s = s;
    cfg.tol = tol;
    cfg.tau0 = tau0;
    cfg.t_final = t_final;
    cfg.discrete_symbol = discrete_symbol;
    cfg.threads = opts.threads;
    const AdaptiveResult res = adaptive_run(grid, cfg, model);

    double sum_tau = 0.0;
    {
        auto out = open_out(dir / "trace.csv");
        out << "t,tau,err,accepted\n";
        for (const StepRecord& r : res.trace.steps) {
            out << fmt6(r.t) << ',' << fmt6(r.tau) << ',' << fmt6(r.err) << ','
                << (r.accepted ? 1 : 0) << '\n';
            if (r.accepted) sum_tau += r.tau;
        }
    }
    if (std::abs(sum_tau - t_final) > 1e-12 * std::max(1.0, t_final))
        throw std::runtime_error("accepted steps do not sum to the final time");
    {
        nlohmann::json summary;
        summary["s"] = s;
        summary["tol"] = tol;
        summary["tau0"] = tau0;
        summary["T"] = t_final;
        summary["h"] = grid.h;
        summary["accepted"] = res.trace.accepted;
        summary["rejected"] = res.trace.rejected;
        summary["final_l2_error"] = res.final_l2_error;
        summary["sum_tau"] = sum_tau;
        auto out = open_out(dir / "summary.json");
        out << summary.dump(2) << '\n';
    }
    std::cout << "heat: " << res.trace.accepted << " accepted / " << res.trace.rejected
              << " rejected steps, final error " << fmt6(res.final_l2_error) << "\n";
    return 0;
}

int cmd_matfun(const CommonOpts& opts, Vec tau_list) {
    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);
    if (tau_list.empty()) tau_list = {0.002, 0.02, 0.2, 1.0};

    const ReimModel model = build_model(preset_config("matfun", opts));
    const auto family =
        shared_pole_family(model, tau_list, {MatFunKind::Exp, MatFunKind::Phi});
    for (const auto& [tau, per_kind] : family)
        for (const auto& [kind, pf] : per_kind)
            if (pf.poles_b != model.poles_b)
                throw std::runtime_error("pole block differs between fractions");

    const SampleGrid grid = geometric_grid(model.interval, opts.sigma_size);
    {
        auto out = open_out(dir / "matfun.csv");
        out << "tau,kind,sup_error\n";
        for (const auto& [tau, per_kind] : family)
            for (const auto& [kind, pf] : per_kind) {
                const TargetFunction t = kind == MatFunKind::Exp
                                             ? TargetFunction::exp_neg(tau)
                                             : TargetFunction::phi_neg(tau);
                out << fmt6(tau) << ',' << (kind == MatFunKind::Exp ? "exp" : "phi") << ','
                    << fmt6(sup_error(pf, t, grid)) << '\n';
            }
    }
    {
        auto out = open_out(dir / "matfun_poles.csv");
        out << "index,b\n";
        for (int i = 0; i < model.size(); ++i) out << i + 1 << ',' << fmt6(model.poles_b[i]) << '\n';
    }
    std::cout << "matfun: " << 2 * tau_list.size() << " fractions over one pole block written to "
              << dir.string() << "\n";
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& family, int count, double s,
              double lambda) {
    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);
    const double suite_threshold = 1e-3;

    SplitMix64 rng(opts.seed);
    struct Row {
        std::string family;
        double param;
        double sup;
    };
    std::vector<Row> rows;

    if (family == "fs") {
        const ReimModel model = build_model(preset_config("shifted", opts));
        const SampleGrid grid = geometric_grid(model.interval, opts.sigma_size);
        const double lam_s = std::pow(lambda, s);
        for (int i = 0; i < count; ++i) {
            const double d = rng.log_uniform(1.0, 1e3);
            const TargetFunction t = TargetFunction::shifted_recip(s, d / lam_s);
            rows.push_back({"fs", d, sup_error(interpolate(model, t), t, grid)});
        }
    } else if (family == "precond") {
        const ReimModel model = build_model(preset_config("power", opts));
        const SampleGrid grid = geometric_grid(model.interval, opts.sigma_size);
        for (int i = 0; i < count; ++i) {
            const double k = rng.log_uniform(1e-6, 1.0);
            const TargetFunction t = TargetFunction::precond(k);
            rows.push_back({"precond", k, sup_error(interpolate(model, t), t, grid)});
        }
    } else if (family == "expphi") {
        const ReimModel model = build_model(preset_config("matfun", opts));
        const SampleGrid grid = geometric_grid(model.interval, opts.sigma_size);
        for (int i = 0; i < count; ++i) {
            const double tau = rng.log_uniform(0.002, 1.0);
            const TargetFunction te = TargetFunction::exp_neg(tau);
            const TargetFunction tp = TargetFunction::phi_neg(tau);
            rows.push_back({"exp", tau, sup_error(interpolate(model, te), te, grid)});
            rows.push_back({"phi", tau, sup_error(interpolate(model, tp), tp, grid)});
        }
    } else {
        throw CLI::ValidationError("--family", "expected fs, precond or expphi");
    }

    double worst = 0.0;
    {
        auto out = open_out(dir / "sweep.csv");
        out << "family,param,sup_error\n";
        for (const Row& r : rows) {
            out << r.family << ',' << fmt6(r.param) << ',' << fmt6(r.sup) << '\n';
            worst = std::max(worst, r.sup);
        }
    }
    if (worst > suite_threshold)
        throw std::runtime_error("sweep sup error " + fmt6(worst) + " exceeds threshold " +
                                 fmt6(suite_threshold));
    std::cout << "sweep " << family << ": " << rows.size() << " members, worst sup error "
              << fmt6(worst) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational-approximation toolkit: greedy models and their solver pipelines"};
    app.require_subcommand(1);

    CommonOpts approx_opts, table_opts, heat_opts, matfun_opts, sweep_opts;

    auto* approx = app.add_subcommand("approx", "build a greedy model and report target errors");
    add_common(approx, approx_opts);
    std::string approx_preset = "power";
    std::vector<std::string> approx_targets;
    approx->add_option("--preset", approx_preset, "power, shifted or matfun");
    approx->add_option("--target", approx_targets,
                       "target spec (pow:S shifted:S:D precond:K exp:TAU phi:TAU), repeatable");

    auto* table1 = app.add_subcommand("table1", "convergence table for the fractional solver");
    add_common(table1, table_opts);
    std::vector<int> p_list;
    Vec table_s;
    int jk_max = 1999;
    table1->add_option("--p", p_list, "grid label exponents (label 2^-p), repeatable");
    table1->add_option("--s", table_s, "fractional exponents, repeatable");
    table1->add_option("--jk-max", jk_max, "reference truncation")->check(CLI::PositiveNumber);

    auto* heat = app.add_subcommand("heat", "adaptive time integration of the fractional heat equation");
    add_common(heat, heat_opts);
    int h_log2 = 5;
    double heat_s = 0.5, tol = 1e-4, tau0 = 1e-3, t_final = 1.0;
    bool discrete_symbol = false;
    heat->add_option("--h-log2", h_log2, "spatial spacing exponent (h = 2^-p)")
        ->check(CLI::PositiveNumber);
    heat->add_option("--s", heat_s, "fractional exponent");
    heat->add_option("--tol", tol, "step acceptance tolerance")->check(CLI::PositiveNumber);
    heat->add_option("--tau0", tau0, "initial step size")->check(CLI::PositiveNumber);
    heat->add_option("--T", t_final, "final time")->check(CLI::PositiveNumber);
    heat->add_flag("--discrete-symbol", discrete_symbol,
                   "use the discrete eigenvalue in the forcing");

    auto* matfun = app.add_subcommand("matfun", "shared-pole exponential and phi approximations");
    add_common(matfun, matfun_opts);
    Vec tau_list;
    matfun->add_option("--tau", tau_list, "time scales, repeatable");

    auto* sweep = app.add_subcommand("sweep", "randomized target family sweep");
    add_common(sweep, sweep_opts);
    std::string family = "fs";
    int count = 50;
    double sweep_s = 0.5, lambda = 1e6;
    sweep->add_option("--family", family, "fs, precond or expphi");
    sweep->add_option("--count", count, "number of sampled members")->check(CLI::PositiveNumber);
    sweep->add_option("--s", sweep_s, "fractional exponent for the fs family");
    sweep->add_option("--lambda", lambda, "rescaling constant for the fs family")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (approx->parsed()) return cmd_approx(approx_opts, approx_preset, approx_targets);
        if (table1->parsed()) return cmd_table1(table_opts, p_list, table_s, jk_max);
        if (heat->parsed())
            return cmd_heat(heat_opts, h_log2, heat_s, tol, tau0, t_final, discrete_symbol);
        if (matfun->parsed()) return cmd_matfun(matfun_opts, tau_list);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, family, count, sweep_s, lambda);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
