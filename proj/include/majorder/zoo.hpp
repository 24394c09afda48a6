#pragma once

#include "majorder/function_model.hpp"

namespace majorder {

/// Scalar building block for perspective, composite and trace functions.
/// The interval (lo, hi) is open; derivatives are analytic.
/// derivative_operator_monotone records whether f' is operator monotone,
/// which is what the isotonicity of a trace-function differential in the
/// Loewner order actually requires (t^2 and t log t qualify, exp does not).
struct ScalarFunction {
    std::string name;
    std::function<double(double)> f, df, ddf;
    double lo, hi;
    bool convex = false;
    bool nondecreasing = false;
    bool derivative_operator_monotone = false;
};

ScalarFunction scalar_square();
ScalarFunction scalar_identity();
ScalarFunction scalar_exp();
ScalarFunction scalar_xlogx();
ScalarFunction scalar_log();
ScalarFunction scalar_by_name(const std::string& name);

/// Perspective interval choices; the isotone-differential claim holds on
/// the negative half-line.
enum class PerspectiveInterval { NegativeHalfLine, PositiveHalfLine, FullLine };

FunctionModel perspective(const ScalarFunction& f, PerspectiveInterval interval);

/// E(x) = sum x_k log x_k on the open positive orthant.
FunctionModel negative_entropy(int n);

/// -E; the strongly smooth companion with antitone differential.
FunctionModel minus_entropy(int n);

/// LSE(x) = log sum exp(x_k), stabilized by max subtraction.
FunctionModel log_sum_exp(int n);

/// Phi(A) = trace f(A) on Sym(M) with the Loewner order; gradient is the
/// packed matrix f'(A).
FunctionModel trace_function(const ScalarFunction& f, int m);

/// Phi(x,y) = -2 sqrt(xy). Convex with non-isotone differential; evaluation
/// extends continuously to the boundary of the positive quadrant.
FunctionModel neg_geometric_mean();

/// H(x,y) = (2x-1)(2y-1): nonconvex, isotone differential.
FunctionModel bilinear_saddle();

enum class FrechetHoeffdingKind { Lower, Upper };

/// min(x1,x2) and max(x1+x2-1, 0) on the closed unit square; both 2-box
/// monotone, nondifferentiable.
FunctionModel frechet_hoeffding(FrechetHoeffdingKind kind);

/// sum |x_i|^p, p > 1.
FunctionModel power_p_sum(int n, double p);

/// Phi(x) = f(<x, w>), w >= 0 componentwise.
FunctionModel composite_linear(const ScalarFunction& f, const std::vector<double>& w);

/// Phi(x) = <w, x>; the degenerate smooth member used to pin exact slacks.
FunctionModel linear_functional(const std::vector<double>& w);

/// RealLine model wrapping a scalar function.
FunctionModel scalar_model(const ScalarFunction& f);

/// Registry addressable by string, e.g. "neg_entropy:3", "trace:square:4",
/// "power:2:3", "composite:square:1,1", "lse:2", "fh_upper",
/// "perspective:square:neg", "linear:1,2". Throws on unknown names.
FunctionModel zoo_make(const std::string& spec);

/// A bounded box suitable for sampling/validating the given zoo entry.
Box zoo_default_box(const FunctionModel& f);

std::vector<std::string> zoo_catalog();

} // namespace majorder
