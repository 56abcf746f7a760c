#include "splayer/problem.hpp"

#include "splayer/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace splayer {

Coefficient::Coefficient(Expression e)
    : label_(e.source()) {
    fn_ = [expr = std::move(e)](double x) { return expr.eval(x); };
}

Coefficient::Coefficient(std::function<double(double)> fn, std::string label)
    : fn_(std::move(fn)), label_(std::move(label)) {}

Coefficient Coefficient::constant(double c) {
    return Coefficient([c](double) { return c; }, fmt::format("{}", c));
}

double Coefficient::operator()(double x) const {
    const double v = fn_(x);
    if (!std::isfinite(v)) {
        throw EvalError(x, fmt::format("'{}' is not finite at x = {}", label_, x));
    }
    return v;
}

std::string_view to_string(LayerCase c) {
    return c == LayerCase::CaseOne ? "case-one" : "case-two";
}

std::vector<double> sample_points(double lo, double hi, int samples) {
    if (samples < 2) {
        throw ConfigError("at least two sample points per subinterval are required");
    }
    const double offset = 1e-12 * (hi - lo);
    const double a = lo + offset;
    const double b = hi - offset;
    std::vector<double> pts(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        pts[static_cast<std::size_t>(k)] = a + (b - a) * static_cast<double>(k) / (samples - 1);
    }
    pts.back() = b;
    return pts;
}

namespace {

/// Tracks the worst sample of one sign condition.
struct SignCheck {
    std::string what;
    std::size_t count = 0;
    double worst_x = 0.0;
    double worst_value = 0.0;

    void record(double x, double v, bool bad_if_larger) {
        if (count == 0 || (bad_if_larger ? v > worst_value : v < worst_value)) {
            worst_x = x;
            worst_value = v;
        }
        ++count;
    }

    void flush(std::vector<Violation>& out) const {
        if (count > 0) {
            out.push_back({fmt::format("{} at x={} (value {}, {} sample(s))", what, worst_x, worst_value, count),
                           worst_x, worst_value});
        }
    }
};

/// Samples `c` at every point; an evaluation failure becomes one violation.
std::vector<double> sample(const Coefficient& c, const std::string& name, const std::vector<double>& pts,
                           std::vector<Violation>& violations) {
    std::vector<double> values(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        try {
            values[k] = c(pts[k]);
        } catch (const EvalError& err) {
            violations.push_back({fmt::format("{} cannot be evaluated: {}", name, err.what()), err.x(),
                                  std::numeric_limits<double>::quiet_NaN()});
            return {};
        }
    }
    return values;
}

struct Samples {
    std::vector<double> left_x, right_x;
    std::vector<double> a_left, a_right, b_left, b_right;
};

Samples sample_all(const ProblemSpec& spec, int samples, std::vector<Violation>& violations) {
    Samples s;
    if (!(spec.d > 0.0 && spec.d < 1.0)) {
        violations.push_back({fmt::format("d must lie in (0,1), got {}", spec.d), spec.d, spec.d});
        return s;
    }
    s.left_x = sample_points(0.0, spec.d, samples);
    s.right_x = sample_points(spec.d, 1.0, samples);
    s.a_left = sample(spec.a_left, "a_left", s.left_x, violations);
    s.a_right = sample(spec.a_right, "a_right", s.right_x, violations);
    s.b_left = sample(spec.b, "b", s.left_x, violations);
    s.b_right = sample(spec.b, "b", s.right_x, violations);
    // f is not sign-constrained but must be finite where the scheme evaluates it.
    sample(spec.f_left, "f_left", s.left_x, violations);
    sample(spec.f_right, "f_right", s.right_x, violations);
    return s;
}

}  // namespace

std::vector<Violation> validate(const ProblemSpec& spec, int samples) {
    if (samples < 2) {
        throw ConfigError("validate: samples must be >= 2");
    }
    std::vector<Violation> violations;
    if (!(spec.epsilon > 0.0) || !std::isfinite(spec.epsilon)) {
        violations.push_back({fmt::format("epsilon must be positive, got {}", spec.epsilon), 0.0, spec.epsilon});
    }
    if (!(spec.mu > 0.0) || !std::isfinite(spec.mu)) {
        violations.push_back({fmt::format("mu must be positive, got {}", spec.mu), 0.0, spec.mu});
    }
    const Samples s = sample_all(spec, samples, violations);

    SignCheck a_left{"a not negative on (0,d)"};
    SignCheck a_right{"a not positive on (d,1)"};
    SignCheck b_pos{"b not positive"};
    for (std::size_t k = 0; k < s.a_left.size(); ++k) {
        if (!(s.a_left[k] < 0.0)) a_left.record(s.left_x[k], s.a_left[k], true);
    }
    for (std::size_t k = 0; k < s.a_right.size(); ++k) {
        if (!(s.a_right[k] > 0.0)) a_right.record(s.right_x[k], s.a_right[k], false);
    }
    for (std::size_t k = 0; k < s.b_left.size(); ++k) {
        if (!(s.b_left[k] > 0.0)) b_pos.record(s.left_x[k], s.b_left[k], false);
    }
    for (std::size_t k = 0; k < s.b_right.size(); ++k) {
        if (!(s.b_right[k] > 0.0)) b_pos.record(s.right_x[k], s.b_right[k], false);
    }
    a_left.flush(violations);
    a_right.flush(violations);
    b_pos.flush(violations);
    return violations;
}

void classify(RegimeData& r, double epsilon, double mu) {
    // The tie belongs to case one.
    if (std::sqrt(r.alpha) * mu <= std::sqrt(r.rho * epsilon)) {
        r.layer_case = LayerCase::CaseOne;
        r.theta1 = std::sqrt(r.rho * r.alpha) / (2.0 * std::sqrt(epsilon));
        r.theta2 = r.theta1;
    } else {
        r.layer_case = LayerCase::CaseTwo;
        r.theta1 = r.alpha * mu / (2.0 * epsilon);
        r.theta2 = r.rho / (2.0 * mu);
    }
}

RegimeData derive_regime(const ProblemSpec& spec, int samples) {
    std::vector<Violation> violations = validate(spec, samples);
    if (!violations.empty()) {
        std::string msg = "problem violates its hypotheses:";
        for (const auto& v : violations) {
            msg += "\n  " + v.message;
        }
        throw ConfigError(msg);
    }
    std::vector<Violation> unused;
    const Samples s = sample_all(spec, samples, unused);

    RegimeData r;
    r.alpha1 = -*std::max_element(s.a_left.begin(), s.a_left.end());
    r.alpha2 = *std::min_element(s.a_right.begin(), s.a_right.end());
    r.gamma = std::min(*std::min_element(s.b_left.begin(), s.b_left.end()),
                       *std::min_element(s.b_right.begin(), s.b_right.end()));
    r.rho = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.a_left.size(); ++k) {
        r.rho = std::min(r.rho, std::abs(s.b_left[k] / s.a_left[k]));
    }
    for (std::size_t k = 0; k < s.a_right.size(); ++k) {
        r.rho = std::min(r.rho, std::abs(s.b_right[k] / s.a_right[k]));
    }

    const RegimeOverrides& o = spec.overrides;
    if (o.alpha1) r.alpha1 = *o.alpha1;
    if (o.alpha2) r.alpha2 = *o.alpha2;
    if (o.rho) r.rho = *o.rho;
    if (o.gamma) r.gamma = *o.gamma;
    if (!(r.alpha1 > 0.0 && r.alpha2 > 0.0 && r.rho > 0.0 && r.gamma > 0.0)) {
        throw ConfigError(fmt::format("derived bounds must be positive (alpha1={}, alpha2={}, rho={}, gamma={})",
                                      r.alpha1, r.alpha2, r.rho, r.gamma));
    }
    // Both bounds are positive here, so the absolute value only mirrors the definition.
    r.alpha = std::abs(std::min(r.alpha1, r.alpha2));

    classify(r, spec.epsilon, spec.mu);
    if (!std::isfinite(r.theta1) || !std::isfinite(r.theta2)) {
        throw ConfigError(fmt::format("layer rates are not finite (theta1={}, theta2={})", r.theta1, r.theta2));
    }
    return r;
}

ProblemSpec builtin_example(BuiltinExample id) {
    if (id == BuiltinExample::Ex1) {
        return ProblemSpec{
            .a_left = Coefficient::parse("-2"),
            .a_right = Coefficient::parse("2"),
            .b = Coefficient::parse("1"),
            .f_left = Coefficient::parse("-1"),
            .f_right = Coefficient::parse("1"),
            .d = 0.5,
            .y0 = 2.0,
            .y1 = 1.0,
            .overrides = {},
        };
    }
    return ProblemSpec{
        .a_left = Coefficient::parse("-(1+x)"),
        .a_right = Coefficient::parse("2+x^2"),
        .b = Coefficient::parse("2"),
        .f_left = Coefficient::parse("-(14*x+1)"),
        .f_right = Coefficient::parse("2-2*x"),
        .d = 0.5,
        .y0 = 0.0,
        .y1 = -1.0,
        .overrides = {},
    };
}

}  // namespace splayer
