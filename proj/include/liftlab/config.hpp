#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "liftlab/errors.hpp"
#include "liftlab/grid_domain.hpp"
#include "liftlab/toml.hpp"

namespace liftlab {

struct DomainSpec {
    DomainKind kind = DomainKind::Interval;
    int m = 1;
    int n = 256;
    double side = 1.0;
    std::vector<int> ladder;  // optional resolution ladder for slope studies
};

struct FieldSpec {
    std::string family = "trig";
    int count = 10;
    double amplitude = 1.0;
    int kmax = 3;
    double decay = 3.0;
    double alpha = 0.24;
    int turns = 1;
};

struct ParamSpec {
    double s = 0.5;
    double p = 2.0;
    double q = 0.0;
    double sigma = 0.3;
    double mu = 0.0;
    double gamma = 1.5;
    double lambda0 = 54.598150033144236;  // e^4
    double eta = 0.5;
    double delta = 1.0;
    double t_max = 10.0;
    double s_star = 0.8;
    double p_star = 2.0;
    double q0 = 1.0;
    double q1 = 1.0;
    double scale = 0.1;
    double r = 2.0;  // dirichlet exponent / lambda ratio, depending on the job
    int K = 64;
    int terms = 4;
};

/// Validated batch-job description.  Unknown keys are rejected; ranges are
/// checked at parse time so jobs fail before any computation starts.
struct ExperimentConfig {
    std::string job = "verify";  // energy | lift | decompose | verify | counterexample
    std::string suite = "all";
    std::string op = "gagliardo";
    DomainSpec domain;
    std::string covering = "r-over-s1";
    FieldSpec field;
    ParamSpec params;
    std::string out_dir = "out";
    int threads = 2;
    std::uint64_t seed = 1;
    double slack = 0.05;
};

namespace detail {

inline void range_fail(const std::string& key, const std::string& what) {
    throw Error(ErrorCode::RangeError, key + ": " + what);
}

inline double need_number(const minitoml::Document& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (!v.is_number()) range_fail(key, "expected a number");
    return v.as_double();
}

inline std::string need_string(const minitoml::Document& doc, const std::string& key) {
    const auto& v = doc.at(key);
    if (!v.is_string()) range_fail(key, "expected a string");
    return v.as_string();
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
    minitoml::Document doc = minitoml::parse(text);

    static const std::set<std::string> known = {
        "job.kind",         "job.suite",       "job.op",
        "domain.kind",      "domain.m",        "domain.n",      "domain.side",   "domain.ladder",
        "covering.id",
        "field.family",     "field.seed",      "field.count",   "field.amplitude",
        "field.kmax",       "field.decay",     "field.alpha",   "field.turns",
        "params.s",         "params.p",        "params.q",      "params.sigma",
        "params.mu",        "params.gamma",    "params.lambda0","params.eta",
        "params.delta",     "params.t_max",    "params.s_star", "params.p_star",
        "params.q0",        "params.q1",       "params.scale",  "params.r",
        "params.K",         "params.terms",
        "output.dir",
        "run.threads",      "run.seed",        "run.slack",
    };
    for (const auto& [key, value] : doc.entries) {
        (void)value;
        if (!known.count(key)) throw Error(ErrorCode::SchemaError, "unknown key '" + key + "'");
    }

    ExperimentConfig cfg;
    auto get_num = [&](const std::string& key, double& dst) {
        if (doc.has(key)) dst = detail::need_number(doc, key);
    };
    auto get_int = [&](const std::string& key, int& dst) {
        if (doc.has(key)) dst = static_cast<int>(detail::need_number(doc, key));
    };
    auto get_str = [&](const std::string& key, std::string& dst) {
        if (doc.has(key)) dst = detail::need_string(doc, key);
    };

    get_str("job.kind", cfg.job);
    get_str("job.suite", cfg.suite);
    get_str("job.op", cfg.op);
    if (cfg.job != "energy" && cfg.job != "lift" && cfg.job != "decompose" && cfg.job != "verify" &&
        cfg.job != "counterexample")
        detail::range_fail("job.kind", "unknown job '" + cfg.job + "'");

    std::string dk = "interval";
    get_str("domain.kind", dk);
    if (dk == "interval")
        cfg.domain.kind = DomainKind::Interval;
    else if (dk == "cube")
        cfg.domain.kind = DomainKind::Cube;
    else if (dk == "torus")
        cfg.domain.kind = DomainKind::Torus;
    else
        detail::range_fail("domain.kind", "unknown domain kind '" + dk + "'");
    if (cfg.domain.kind == DomainKind::Cube) cfg.domain.m = 2;
    get_int("domain.m", cfg.domain.m);
    get_int("domain.n", cfg.domain.n);
    get_num("domain.side", cfg.domain.side);
    if (cfg.domain.m < 1 || cfg.domain.m > 2) detail::range_fail("domain.m", "m must be 1 or 2");
    if (cfg.domain.n < 2) detail::range_fail("domain.n", "n must be >= 2");
    if (!(cfg.domain.side > 0.0)) detail::range_fail("domain.side", "side must be positive");
    if (doc.has("domain.ladder")) {
        const auto& v = doc.at("domain.ladder");
        if (!v.is_array()) detail::range_fail("domain.ladder", "expected an array of resolutions");
        for (const auto& e : v.as_array()) {
            if (!e.is_number() || e.as_double() < 2) detail::range_fail("domain.ladder", "resolutions must be >= 2");
            cfg.domain.ladder.push_back(static_cast<int>(e.as_double()));
        }
    }

    get_str("covering.id", cfg.covering);

    get_str("field.family", cfg.field.family);
    if (doc.has("field.seed")) cfg.seed = static_cast<std::uint64_t>(detail::need_number(doc, "field.seed"));
    get_int("field.count", cfg.field.count);
    get_num("field.amplitude", cfg.field.amplitude);
    get_int("field.kmax", cfg.field.kmax);
    get_num("field.decay", cfg.field.decay);
    get_num("field.alpha", cfg.field.alpha);
    get_int("field.turns", cfg.field.turns);
    if (cfg.field.count < 1) detail::range_fail("field.count", "count must be >= 1");

    get_num("params.s", cfg.params.s);
    get_num("params.p", cfg.params.p);
    get_num("params.q", cfg.params.q);
    get_num("params.sigma", cfg.params.sigma);
    get_num("params.mu", cfg.params.mu);
    get_num("params.gamma", cfg.params.gamma);
    get_num("params.lambda0", cfg.params.lambda0);
    get_num("params.eta", cfg.params.eta);
    get_num("params.delta", cfg.params.delta);
    get_num("params.t_max", cfg.params.t_max);
    get_num("params.s_star", cfg.params.s_star);
    get_num("params.p_star", cfg.params.p_star);
    get_num("params.q0", cfg.params.q0);
    get_num("params.q1", cfg.params.q1);
    get_num("params.scale", cfg.params.scale);
    get_num("params.r", cfg.params.r);
    get_int("params.K", cfg.params.K);
    get_int("params.terms", cfg.params.terms);
    if (!(cfg.params.s > 0.0 && cfg.params.s < 1.0)) detail::range_fail("s", "s must lie in (0,1)");
    if (!(cfg.params.p > 1.0)) detail::range_fail("p", "p must lie in (1,inf)");
    if (!(cfg.params.q >= 0.0)) detail::range_fail("q", "q must be >= 0");
    if (!(cfg.params.eta > 0.0 && cfg.params.eta < 1.0)) detail::range_fail("eta", "eta must lie in (0,1)");
    if (cfg.params.K < 2) detail::range_fail("K", "inner resolution K must be >= 2");
    if (cfg.params.terms < 1 || cfg.params.terms > 6) detail::range_fail("terms", "terms must lie in 1..6");

    get_str("output.dir", cfg.out_dir);
    get_int("run.threads", cfg.threads);
    if (doc.has("run.seed")) cfg.seed = static_cast<std::uint64_t>(detail::need_number(doc, "run.seed"));
    get_num("run.slack", cfg.slack);
    if (cfg.threads < 1) detail::range_fail("run.threads", "threads must be >= 1");
    if (!(cfg.slack >= 0.0 && cfg.slack < 1.0)) detail::range_fail("run.slack", "slack must lie in [0,1)");

    return cfg;
}

}  // namespace liftlab
