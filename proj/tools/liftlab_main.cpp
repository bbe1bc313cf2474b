// liftlab: batch experiment runner for covering-space liftings and
// fractional-seminorm verification suites.
//
// Subcommands: energy, lift, decompose, verify <suite|all>, counterexample.
// Outputs are written atomically (temp file + rename); exit code 0 means all
// checks passed, 2 a mathematical failure or module error, 3 an I/O fault.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "liftlab/config.hpp"
#include "liftlab/covering.hpp"
#include "liftlab/decompose.hpp"
#include "liftlab/energy.hpp"
#include "liftlab/families.hpp"
#include "liftlab/field.hpp"
#include "liftlab/lifting.hpp"
#include "liftlab/report.hpp"
#include "liftlab/suites.hpp"
#include "liftlab/svg_plot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace liftlab;

namespace {

void write_atomic(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string());
        out << content;
        if (!out) throw Error(ErrorCode::IoError, "write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(ErrorCode::IoError, "rename failed: " + path.string());
}

std::string field_to_csv(const Field& f) {
    std::ostringstream out;
    const int vdim = f.space.dim();
    if (f.domain.dim() == 1) {
        out << (vdim == 1 ? "i,v0\n" : "i,v0,v1\n");
        for (std::size_t i = 0; i < f.size(); ++i) {
            out << i << ',' << fmt_double(f.values[i][0]);
            if (vdim == 2) out << ',' << fmt_double(f.values[i][1]);
            out << '\n';
        }
    } else {
        out << (vdim == 1 ? "ix,iy,v0\n" : "ix,iy,v0,v1\n");
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto c = f.domain.coords(i);
            out << c[0] << ',' << c[1] << ',' << fmt_double(f.values[i][0]);
            if (vdim == 2) out << ',' << fmt_double(f.values[i][1]);
            out << '\n';
        }
    }
    return out.str();
}

GridDomain domain_from(const ExperimentConfig& cfg) {
    return make_domain(cfg.domain.kind, cfg.domain.m, cfg.domain.n, cfg.domain.side);
}

Field field_from(const ExperimentConfig& cfg, const GridDomain& dom) {
    return make_family_field(dom, cfg.field.family, cfg.seed, cfg.field.amplitude, cfg.field.kmax, cfg.field.decay,
                             cfg.field.alpha, cfg.field.turns);
}

EnergyValue evaluate_energy(const ExperimentConfig& cfg, const Field& f) {
    const auto& pr = cfg.params;
    if (cfg.op == "gagliardo") return gagliardo(f, pr.s, pr.p, cfg.threads);
    if (cfg.op == "truncated") return truncated(f, pr.s, pr.p, pr.q, cfg.threads);
    if (cfg.op == "gap") return gap_energy(f, pr.delta, pr.q, pr.gamma, cfg.threads);
    if (cfg.op == "dirichlet") return dirichlet(f, pr.r);
    if (cfg.op == "large_osc") return large_osc_energy(f, pr.delta, pr.s_star, pr.p_star, cfg.threads);
    if (cfg.op == "segment_double") return segment_double_energy(f, pr.s, pr.p, pr.sigma, pr.mu, pr.K, cfg.threads);
    if (cfg.op == "x_functional") return x_energy(f, CoveringChart::from_id(cfg.covering), cfg.threads);
    throw Error(ErrorCode::SchemaError, "unknown energy op '" + cfg.op + "'");
}

int run_energy(const ExperimentConfig& cfg) {
    GridDomain dom = domain_from(cfg);
    Field f = field_from(cfg, dom);
    EnergyValue e = evaluate_energy(cfg, f);

    json j;
    j["op"] = cfg.op;
    j["value"] = e.value;
    j["pair_count"] = e.pair_count;
    j["n"] = cfg.domain.n;
    j["family"] = cfg.field.family;
    j["seed"] = cfg.seed;

    // optional refinement ladder: value per resolution plus the log-log slope
    if (!cfg.domain.ladder.empty()) {
        Series ser{cfg.op + "_vs_n", {}};
        std::ostringstream csv;
        csv << "n,value\n";
        for (int n : cfg.domain.ladder) {
            ExperimentConfig sub = cfg;
            sub.domain.n = n;
            GridDomain d = domain_from(sub);
            double v = evaluate_energy(sub, field_from(sub, d)).value;
            ser.points.emplace_back(n, v);
            csv << n << ',' << fmt_double(v) << "\n";
        }
        write_atomic(fs::path(cfg.out_dir) / "energy_ladder.csv", csv.str());
        if (ser.points.size() >= 2) j["ladder_loglog_slope"] = fit_loglog_slope(ser);
    }

    write_atomic(fs::path(cfg.out_dir) / "energy.json", j.dump(2) + "\n");
    write_atomic(fs::path(cfg.out_dir) / "field.csv", field_to_csv(f));
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_lift(const ExperimentConfig& cfg) {
    GridDomain dom = domain_from(cfg);
    CoveringChart cov = CoveringChart::from_id(cfg.covering);
    Field phi = field_from(cfg, dom);
    Field base = project_field(cov, as_total_field(cov, phi));
    LiftResult lr = lift_field(base, cov, 0, phi.values[0]);
    double residual = chain_rule_residual(base, lr.lifted, cov);

    json j;
    j["covering"] = cov.id();
    j["max_holonomy_residual"] = lr.max_holonomy_residual;
    j["chain_rule_residual"] = residual;
    j["seed_index"] = lr.seed_index;
    write_atomic(fs::path(cfg.out_dir) / "lift.json", j.dump(2) + "\n");
    write_atomic(fs::path(cfg.out_dir) / "lift.csv", field_to_csv(lr.lifted));
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_decompose(const ExperimentConfig& cfg) {
    GridDomain dom = domain_from(cfg);
    Field f = field_from(cfg, dom);
    SplitOptions sopt;
    sopt.threads = cfg.threads;
    auto dec = split_sum_space(f, cfg.params.s, cfg.params.p, sopt);
    Field zero = make_constant_field(dom, TargetGeometry::real_line(), pt1(0.0));
    json j;
    j["objective"] = dec.objective;
    j["scale_chosen"] = dec.scale_chosen;
    j["refine_iterations"] = dec.refine_iterations;
    j["trivial_fractional"] = sum_objective(f, zero, cfg.params.s, cfg.params.p, cfg.threads);
    j["trivial_first_order"] = sum_objective(zero, f, cfg.params.s, cfg.params.p, cfg.threads);
    write_atomic(fs::path(cfg.out_dir) / "decompose.json", j.dump(2) + "\n");
    write_atomic(fs::path(cfg.out_dir) / "part_g.csv", field_to_csv(dec.g));
    write_atomic(fs::path(cfg.out_dir) / "part_h.csv", field_to_csv(dec.h));
    std::cout << j.dump(2) << "\n";
    return 0;
}

int write_suite_outputs(const ExperimentConfig& cfg, std::vector<SuiteResult> results, bool emit_plots) {
    // deterministic report order
    std::vector<RatioReport> rows;
    for (auto& sr : results)
        for (auto& r : sr.reports) rows.push_back(r);
    std::sort(rows.begin(), rows.end(), [](const RatioReport& a, const RatioReport& b) {
        return a.suite_id != b.suite_id ? a.suite_id < b.suite_id : a.case_id < b.case_id;
    });

    std::ostringstream csv;
    csv << csv_header() << "\n";
    for (const auto& r : rows) csv << to_csv_row(r) << "\n";
    write_atomic(fs::path(cfg.out_dir) / "reports.csv", csv.str());

    json summary;
    summary["job"] = cfg.job;
    summary["suite"] = cfg.suite;
    summary["seed"] = cfg.seed;
    bool all_pass = true;
    json jsuites = json::array();
    for (const auto& sr : results) {
        json js;
        js["suite_id"] = sr.suite_id;
        std::size_t passed = 0;
        json constants = json::object();
        for (const auto& r : sr.reports) {
            if (r.pass) ++passed;
            if (r.mode == Mode::EmpiricalStability) constants[r.case_id] = r.ratio;
        }
        js["cases"] = sr.reports.size();
        js["passed"] = passed;
        js["failed"] = sr.reports.size() - passed;
        js["empirical_constants"] = constants;
        all_pass = all_pass && sr.all_pass();
        jsuites.push_back(js);
    }
    summary["suites"] = jsuites;
    summary["all_pass"] = all_pass;
    write_atomic(fs::path(cfg.out_dir) / "summary.json", summary.dump(2) + "\n");

    if (emit_plots) {
        for (const auto& sr : results) {
            if (sr.series.empty()) continue;
            emit_plot(sr.series, (fs::path(cfg.out_dir) / (sr.suite_id + ".svg")).string());
        }
    }

    for (const auto& sr : results) {
        std::size_t passed = 0;
        for (const auto& r : sr.reports) passed += r.pass ? 1 : 0;
        std::cout << sr.suite_id << ": " << passed << "/" << sr.reports.size() << " cases pass\n";
    }
    return all_pass ? 0 : 2;
}

int run_verify(const ExperimentConfig& cfg, bool emit_plots) {
    SuiteOptions opt;
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;
    opt.slack = cfg.slack;
    auto t0 = std::chrono::steady_clock::now();
    auto results = run_suites(cfg.suite, opt);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "verify " << cfg.suite << ": " << dt << " s\n";
    return write_suite_outputs(cfg, std::move(results), emit_plots);
}

int run_counterexample_job(const ExperimentConfig& cfg) {
    SuiteOptions opt;
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;
    opt.slack = cfg.slack;
    SuiteResult sr = run_counterexample(opt, cfg.params.lambda0, cfg.params.q > 0 ? cfg.params.q : 1.5,
                                        cfg.params.terms, 256);

    // series table: one row per bump index
    std::ostringstream tab;
    tab << "j,grad_term,grad_partial,osc_term,osc_partial\n";
    double gp = 0.0, op = 0.0;
    for (std::size_t j = 0; j < sr.series[0].points.size(); ++j) {
        double g = sr.series[0].points[j].second;
        double o = sr.series[1].points[j].second;
        gp += g;
        op += o;
        tab << (j + 1) << ',' << fmt_double(g) << ',' << fmt_double(gp) << ',' << fmt_double(o) << ','
            << fmt_double(op) << "\n";
    }
    write_atomic(fs::path(cfg.out_dir) / "counterexample_series.csv", tab.str());

    std::vector<SuiteResult> results{std::move(sr)};
    return write_suite_outputs(cfg, std::move(results), false);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"liftlab: lifting and fractional-energy laboratory"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path, out_dir, covering, suite;
    int n = 0, threads = 0;
    long long seed = -1;

    app.add_option("--config", config_path, "TOML config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--n", n, "points per axis override");
    app.add_option("--seed", seed, "seed override");
    app.add_option("--covering", covering, "covering id (r-over-s1 | kfold:<k> | r2-over-t2)");
    app.add_option("--threads", threads, "worker threads");

    auto* sub_energy = app.add_subcommand("energy", "evaluate one energy on a family field");
    auto* sub_lift = app.add_subcommand("lift", "lift a family field through a covering");
    auto* sub_dec = app.add_subcommand("decompose", "sum-space splitting of a family field");
    auto* sub_verify = app.add_subcommand("verify", "run verification suites");
    std::string verify_suite = "all";
    sub_verify->add_option("suite", verify_suite, "suite id or 'all'");
    bool plots = false;
    sub_verify->add_flag("--plots", plots, "emit SVG plots for slope suites");
    auto* sub_cx = app.add_subcommand("counterexample", "critical-regime divergence series");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw Error(ErrorCode::IoError, "cannot read config " + config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            cfg = parse_config(ss.str());
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (n > 0) cfg.domain.n = n;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (!covering.empty()) cfg.covering = covering;
        if (threads > 0) cfg.threads = threads;
        default_threads() = cfg.threads;

        if (sub_energy->parsed()) {
            cfg.job = "energy";
            return run_energy(cfg);
        }
        if (sub_lift->parsed()) {
            cfg.job = "lift";
            return run_lift(cfg);
        }
        if (sub_dec->parsed()) {
            cfg.job = "decompose";
            return run_decompose(cfg);
        }
        if (sub_verify->parsed()) {
            cfg.job = "verify";
            cfg.suite = verify_suite;
            return run_verify(cfg, plots);
        }
        if (sub_cx->parsed()) {
            cfg.job = "counterexample";
            return run_counterexample_job(cfg);
        }
        return 1;
    } catch (const HolonomyError& e) {
        json j;
        j["error"] = "HolonomyObstruction";
        j["message"] = e.what();
        j["residual"] = e.residual();
        j["cycle"] = e.cycle();
        if (!out_dir.empty()) {
            try {
                write_atomic(fs::path(out_dir) / "error.json", j.dump(2) + "\n");
                write_atomic(fs::path(out_dir) / "summary.json", j.dump(2) + "\n");
            } catch (...) {
            }
        }
        std::cout << j.dump(2) << "\n";
        return 2;
    } catch (const Error& e) {
        json j;
        j["error"] = error_code_name(e.code());
        j["message"] = e.what();
        if (!out_dir.empty()) {
            try {
                write_atomic(fs::path(out_dir) / "error.json", j.dump(2) + "\n");
                write_atomic(fs::path(out_dir) / "summary.json", j.dump(2) + "\n");
            } catch (...) {
            }
        }
        std::cout << j.dump(2) << "\n";
        return e.code() == ErrorCode::IoError ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
