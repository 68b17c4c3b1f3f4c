#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "walker4/curvature.hpp"
#include "walker4/expr.hpp"
#include "walker4/metric.hpp"

namespace walker4 {

/// Schema or usage error in a spec file; maps to exit code 2.
struct SpecError : std::runtime_error {
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

enum class MetricKind { walker, theta, omega, general };
enum class Suite { curvature, spinor, classify, heavenly, all };

const char* to_string(MetricKind k);
const char* to_string(Suite s);
Suite suite_from_string(const std::string& s); // throws SpecError

struct SampleSpec {
    bool present = false;
    int count = 0;
    double box[4][2] = {{-1, 1}, {-1, 1}, {-1, 1}, {-1, 1}};
    std::uint64_t seed = 0;
};

struct Tolerances {
    double rel = 1e-9;
    double classify = 1e-8;
};

struct MetricSpec {
    MetricKind kind = MetricKind::walker;
    Expr a, b, c;                 // walker
    Expr theta;                   // theta
    Expr omega;                   // omega
    Expr gentries[4][4];          // general (symmetric)
    std::vector<Point4> points;   // explicit points
    SampleSpec sample;
    int degree = 4;
    Tolerances tol;
};

/// Parse and validate a spec document. Errors carry the offending field.
MetricSpec parse_spec_json(const std::string& text);
MetricSpec load_spec(const std::string& path);

/// Counter-based sampler: point k of a box is reproducible independently of
/// evaluation order.
Point4 sample_point(const SampleSpec& s, std::uint64_t k);
std::vector<Point4> spec_points(const MetricSpec& spec);

struct CheckItem {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = true;
    bool hard = true; // forensic items are recorded but do not fail the run
};

struct PointRecord {
    Point4 point;
    bool eval_error = false;
    std::string error;
    double S = 0, A = 0, B = 0;
    std::array<double, 3> eigenvalues{};
    std::array<double, 5> psi{}, psit{};
    double lambda = 0.0;
    std::string classification;
    std::string jcf_label;
    std::string asd_pattern;
    bool marginal = false;
    std::vector<CheckItem> checks;
};

struct Report {
    std::string version;
    std::string kind;
    std::string suite;
    std::uint64_t seed = 0;
    int degree = 4;
    Tolerances tol;
    std::vector<PointRecord> records;
    int n_pass = 0, n_fail = 0, n_marginal = 0;
    bool ok() const { return n_fail == 0; }
};

Report run_checks(const MetricSpec& spec, Suite suite);

/// Stable field order, floats at 17 significant digits; byte-identical for
/// identical (spec, seed, degree).
std::string report_to_json(const Report& r);
void emit_report(const Report& r, const std::string& path);

std::string trajectory_to_json(const Trajectory& t);
void write_trajectory(const Trajectory& t, const std::string& path);

} // namespace walker4
