#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace liftlab {

enum class Mode { Exact, ExplicitConstant, EmpiricalStability };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Exact: return "EXACT";
        case Mode::ExplicitConstant: return "EXPLICIT_CONSTANT";
        case Mode::EmpiricalStability: return "EMPIRICAL_STABILITY";
    }
    return "?";
}

/// Growth factor allowed for an empirical constant under resolution doubling.
inline constexpr double stability_growth_limit = 1.2;

/// One inequality check.  Pass semantics by mode:
///   EXACT              lhs <= rhs (1 + 1e-12)
///   EXPLICIT_CONSTANT  lhs <= bound_constant * rhs * (1 + slack)
///   EMPIRICAL_STABILITY  lhs (constant at doubled resolution) <= 1.2 * rhs
/// A vanishing right-hand side passes only when the left side vanishes too.
struct RatioReport {
    std::string suite_id;
    std::string case_id;
    double s = std::numeric_limits<double>::quiet_NaN();
    double p = std::numeric_limits<double>::quiet_NaN();
    double q = std::numeric_limits<double>::quiet_NaN();
    double lhs = 0.0;
    double rhs = 0.0;
    double bound_constant = std::numeric_limits<double>::quiet_NaN();
    double ratio = 0.0;
    Mode mode = Mode::Exact;
    bool pass = false;
};

namespace detail {

inline double safe_ratio(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : 0.0; }

inline bool zero_rhs_pass(double lhs) { return lhs <= 1e-12; }

}  // namespace detail

inline RatioReport make_exact(std::string suite, std::string case_id, double lhs, double rhs, double s = NAN,
                              double p = NAN, double q = NAN) {
    RatioReport r;
    r.suite_id = std::move(suite);
    r.case_id = std::move(case_id);
    r.s = s;
    r.p = p;
    r.q = q;
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = detail::safe_ratio(lhs, rhs);
    r.mode = Mode::Exact;
    r.pass = rhs > 0.0 ? lhs <= rhs * (1.0 + 1e-12) : lhs <= rhs + 1e-12;
    return r;
}

inline RatioReport make_explicit(std::string suite, std::string case_id, double lhs, double rhs, double bound,
                                 double slack, double s = NAN, double p = NAN, double q = NAN) {
    RatioReport r;
    r.suite_id = std::move(suite);
    r.case_id = std::move(case_id);
    r.s = s;
    r.p = p;
    r.q = q;
    r.lhs = lhs;
    r.rhs = rhs;
    r.bound_constant = bound;
    r.ratio = detail::safe_ratio(lhs, rhs);
    r.mode = Mode::ExplicitConstant;
    r.pass = rhs > 0.0 ? lhs <= bound * rhs * (1.0 + slack) : detail::zero_rhs_pass(lhs);
    return r;
}

/// lhs = empirical constant at doubled resolution, rhs = at base resolution.
inline RatioReport make_empirical(std::string suite, std::string case_id, double doubled, double base, double s = NAN,
                                  double p = NAN, double q = NAN, double growth_limit = stability_growth_limit) {
    RatioReport r;
    r.suite_id = std::move(suite);
    r.case_id = std::move(case_id);
    r.s = s;
    r.p = p;
    r.q = q;
    r.lhs = doubled;
    r.rhs = base;
    r.ratio = detail::safe_ratio(doubled, base);
    r.mode = Mode::EmpiricalStability;
    r.pass = base > 0.0 ? doubled <= growth_limit * base : detail::zero_rhs_pass(doubled);
    return r;
}

// ============================================================================
// CSV serialization
// ============================================================================

inline std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_header() { return "suite_id,case_id,s,p,q,lhs,rhs,bound_constant,ratio,mode,pass"; }

inline std::string to_csv_row(const RatioReport& r) {
    std::string out;
    out += r.suite_id;
    out += ',';
    out += r.case_id;
    out += ',';
    out += fmt_double(r.s);
    out += ',';
    out += fmt_double(r.p);
    out += ',';
    out += fmt_double(r.q);
    out += ',';
    out += fmt_double(r.lhs);
    out += ',';
    out += fmt_double(r.rhs);
    out += ',';
    out += fmt_double(r.bound_constant);
    out += ',';
    out += fmt_double(r.ratio);
    out += ',';
    out += mode_name(r.mode);
    out += ',';
    out += r.pass ? "true" : "false";
    return out;
}

}  // namespace liftlab
