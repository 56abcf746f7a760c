#pragma once

#include "splayer/expr.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace splayer {

/// A scalar coefficient function of x together with a printable label.
///
/// Either wraps a parsed Expression or an arbitrary callable. Calls throw
/// EvalError when the value is not finite.
class Coefficient {
public:
    Coefficient(Expression e);
    Coefficient(std::function<double(double)> fn, std::string label);

    static Coefficient constant(double c);
    static Coefficient parse(std::string_view source) { return Coefficient(Expression::parse(source)); }

    double operator()(double x) const;
    const std::string& label() const noexcept { return label_; }

private:
    std::function<double(double)> fn_;
    std::string label_;
};

/// Optional replacements for the sampled problem bounds.
struct RegimeOverrides {
    std::optional<double> alpha1;
    std::optional<double> alpha2;
    std::optional<double> rho;
    std::optional<double> gamma;
};

/// Data of  eps*y'' + mu*a(x)*y' - b(x)*y = f(x)  on (0,d) and (d,1), y(0)=y0, y(1)=y1.
///
/// a and f are given separately on each side of the discontinuity d.
struct ProblemSpec {
    Coefficient a_left;
    Coefficient a_right;
    Coefficient b;
    Coefficient f_left;
    Coefficient f_right;
    double d = 0.5;
    double y0 = 0.0;
    double y1 = 0.0;
    double epsilon = 1.0;
    double mu = 1.0;
    RegimeOverrides overrides;

    ProblemSpec with_parameters(double eps, double mu_) const {
        ProblemSpec copy = *this;
        copy.epsilon = eps;
        copy.mu = mu_;
        return copy;
    }
};

enum class LayerCase {
    CaseOne,  ///< sqrt(alpha)*mu <= sqrt(rho*eps): reaction-dominated layers
    CaseTwo,  ///< sqrt(alpha)*mu >  sqrt(rho*eps): convection-dominated layers
};

std::string_view to_string(LayerCase c);

/// Constants derived from a ProblemSpec that drive mesh construction.
struct RegimeData {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha = 0.0;
    double rho = 0.0;
    double gamma = 0.0;
    LayerCase layer_case = LayerCase::CaseOne;
    double theta1 = 0.0;  ///< interior layer rate, used around d
    double theta2 = 0.0;  ///< boundary layer rate, used at x = 0 and x = 1
};

struct Violation {
    std::string message;
    double x = 0.0;
    double value = 0.0;
};

inline constexpr int kDefaultSamples = 10000;

/// Uniform sample points strictly inside (lo, hi), offset one-sidedly from both ends.
std::vector<double> sample_points(double lo, double hi, int samples);

/// Checks the sign hypotheses (a < 0 left of d, a > 0 right of d, b > 0) and the
/// scalar parameters. Evaluation failures are reported as violations.
std::vector<Violation> validate(const ProblemSpec& spec, int samples = kDefaultSamples);

/// Throws ConfigError when validate() reports anything.
RegimeData derive_regime(const ProblemSpec& spec, int samples = kDefaultSamples);

/// Classifies the layer regime and fills theta1, theta2 from the bounds already in `r`.
void classify(RegimeData& r, double epsilon, double mu);

enum class BuiltinExample { Ex1, Ex2 };

/// Ex1: a = -2 | 2, b = 1, f = -1 | 1, y(0) = 2, y(1) = 1.
/// Ex2: a = -(1+x) | 2+x^2, b = 2, f = -(14x+1) | 2-2x, y(0) = 0, y(1) = -1.
/// Both have d = 0.5 and unit epsilon, mu; use with_parameters() to set them.
ProblemSpec builtin_example(BuiltinExample id);

}  // namespace splayer
