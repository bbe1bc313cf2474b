#include <catch_amalgamated.hpp>

#include <json.hpp>

#include "liftlab/config.hpp"
#include "liftlab/report.hpp"
#include "liftlab/svg_plot.hpp"
#include "liftlab/toml.hpp"

using namespace liftlab;

TEST_CASE("toml subset parser") {
    auto doc = minitoml::parse(
        "# experiment\n"
        "[job]\n"
        "kind = \"energy\"   # inline comment\n"
        "[params]\n"
        "s = 0.6\n"
        "K = 32\n"
        "flags = [1, 2, 3]\n"
        "name = \"x # y\"\n"
        "on = true\n");
    CHECK(doc.at("job.kind").as_string() == "energy");
    CHECK(doc.at("params.s").as_double() == 0.6);
    CHECK(doc.at("params.K").as_int() == 32);
    CHECK(doc.at("params.flags").as_array().size() == 3);
    CHECK(doc.at("params.name").as_string() == "x # y");
    CHECK(doc.at("params.on").as_bool());

    CHECK_THROWS_AS(minitoml::parse("foo\n"), Error);
    CHECK_THROWS_AS(minitoml::parse("a = \n"), Error);
    CHECK_THROWS_AS(minitoml::parse("a = 1\na = 2\n"), Error);
    try {
        minitoml::parse("ok = 1\nbroken\n");
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("config defaults and validation") {
    ExperimentConfig cfg = parse_config("[job]\nkind = \"energy\"\n");
    CHECK(cfg.domain.n == 256);
    CHECK(cfg.slack == 0.05);
    CHECK(cfg.job == "energy");

    try {
        parse_config("[params]\ns = 1.5\n");
        FAIL("expected range error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RangeError);
        CHECK(std::string(e.what()).find("s") != std::string::npos);
    }

    try {
        parse_config("foo = 1\n");
        FAIL("expected schema error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SchemaError);
        CHECK(std::string(e.what()).find("foo") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config("[domain]\nn = 1\n"), Error);
    CHECK_THROWS_AS(parse_config("[job]\nkind = \"fly\"\n"), Error);
    CHECK_THROWS_AS(parse_config("[run]\nthreads = 0\n"), Error);
}

TEST_CASE("csv schema is pinned") {
    CHECK(csv_header() == std::string("suite_id,case_id,s,p,q,lhs,rhs,bound_constant,ratio,mode,pass"));
    RatioReport r = make_explicit("su", "ca", 2.0, 1.0, 3.0, 0.05, 0.5, 2.0, 1.0);
    std::string row = to_csv_row(r);
    CHECK(row.substr(0, 6) == "su,ca,");
    CHECK(row.find(",EXPLICIT_CONSTANT,") != std::string::npos);
    CHECK(row.find("true") != std::string::npos);
    // one field per column
    CHECK(std::count(row.begin(), row.end(), ',') == 10);
}

TEST_CASE("pass semantics per mode") {
    CHECK(make_exact("s", "c", 1.0, 1.0).pass);
    CHECK(make_exact("s", "c", 1.0 + 1e-13, 1.0).pass);
    CHECK_FALSE(make_exact("s", "c", 1.0 + 1e-9, 1.0).pass);
    CHECK(make_exact("s", "c", 0.0, 0.0).pass);

    CHECK(make_explicit("s", "c", 3.0, 1.0, 3.0, 0.05).pass);
    CHECK_FALSE(make_explicit("s", "c", 3.2, 1.0, 3.0, 0.05).pass);
    CHECK(make_explicit("s", "c", 0.0, 0.0, 3.0, 0.05).pass);       // 0 <= 0
    CHECK_FALSE(make_explicit("s", "c", 1e-3, 0.0, 3.0, 0.05).pass);

    CHECK(make_empirical("s", "c", 1.1, 1.0).pass);
    CHECK_FALSE(make_empirical("s", "c", 1.3, 1.0).pass);
    CHECK(make_empirical("s", "c", 0.0, 0.0).pass);
    CHECK(std::isnan(make_empirical("s", "c", 1.0, 1.0).bound_constant));
}

TEST_CASE("report json round trip") {
    RatioReport r = make_empirical("nonlinear_exponent", "bound", 1.05, 1.0, 0.75, 2.0);
    nlohmann::json j;
    j["suite_id"] = r.suite_id;
    j["ratio"] = r.ratio;
    j["pass"] = r.pass;
    auto text = j.dump();
    auto back = nlohmann::json::parse(text);
    CHECK(back["suite_id"] == "nonlinear_exponent");
    CHECK(back.dump() == text);
}

TEST_CASE("svg plots") {
    Series a{"series_a", {{1.0, 10.0}, {10.0, 100.0}, {100.0, 1000.0}}};
    CHECK(fit_loglog_slope(a) == Catch::Approx(1.0).margin(1e-12));
    std::string path = "test_plot_tmp.svg";
    emit_plot({a}, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("<svg") != std::string::npos);
    CHECK(ss.str().find("polyline") != std::string::npos);
    CHECK(ss.str().find("fitted slope") != std::string::npos);
    std::remove(path.c_str());

    Series two{"secant", {{1.0, 2.0}, {10.0, 8.0}}};
    CHECK(fit_loglog_slope(two) == Catch::Approx(std::log10(4.0)).epsilon(1e-12));
    CHECK_THROWS_AS(emit_plot({}, "x.svg"), Error);
    Series bad{"bad", {{1.0, 1.0}}};
    CHECK_THROWS_AS(emit_plot({bad}, "x.svg"), Error);
}
