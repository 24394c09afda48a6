#pragma once

#include "majorder/convex_checks.hpp"
#include "majorder/measure.hpp"
#include "majorder/zoo.hpp"

namespace majorder {

enum class TheoremId {
    T4_Full,
    T4_Prefix,
    T5_Ldown,
    T5_Rup,
    T6,
    T7_JensenGap,
    C1_Parallelogram,
    R9_WeakParallelogram,
    T8_SzegoBellman,
    T9_TraceFamily,
    T10_Popoviciu_a,
    T10_Popoviciu_b,
};

std::string theorem_name(TheoremId id);

struct PrefixReport {
    int n = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// Result of one theorem check. residual >= -tol means the inequality
/// holds in the direction the theorem asserts; for prefix variants, every
/// prefix residual must clear the bar. Advisories list claim requirements
/// the function does not declare; they never block the evaluation, since
/// necessity experiments deliberately run verifiers on violating functions.
struct InequalityReport {
    TheoremId theorem = TheoremId::T4_Full;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool holds = false;
    std::vector<PrefixReport> prefix_reports;
    std::vector<std::string> advisories;
    std::string instance_digest;
};

/// Majorization consequence for omega-convex functions with isotone
/// differential. Ldown judges the full-sum inequality
///   sum l f(y) >= sum l f(x) + sum l w(|x-y|);
/// Rup swaps the roles of x and y; the weak relations judge the prefix
/// family, with isotonicity of f as the advisory extra hypothesis.
InequalityReport verify_T4(const FunctionModel& f, const Modulus& w,
                           const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           Relation relation, const TolerancePolicy& tol);

/// Smooth dual: for sigma-strongly-smooth f with antitone differential,
///   sum l f(y) <= sum l f(x) + (sigma/2) sum l |x-y|^2    (Ldown)
/// and with x and y swapped for Rup. Weak relations add antitonicity of f
/// to the advisory hypotheses.
InequalityReport verify_T5(const FunctionModel& f, double sigma,
                           const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           Relation relation, const TolerancePolicy& tol);

/// Nondifferentiable variant for 2-box monotone convex functions on open
/// boxes of the positive orthant; full sums only, no gradients involved.
InequalityReport verify_T6(const FunctionModel& f, const DiscreteMeasure& mu,
                           const DiscreteMeasure& nu, Relation relation,
                           const TolerancePolicy& tol);

/// Jensen-gap contraction: under y2 <= x2 <= (1-l)y1+l y2 <= x1 <= y1 the
/// inner gap is between 0 and the outer gap.
InequalityReport verify_T7(const FunctionModel& f, const Point& x1, const Point& x2,
                           const Point& y1, const Point& y2, double lambda,
                           const TolerancePolicy& tol);

enum class ParallelogramVariant { Equal, WeakSum };

/// Parallelogram rule: Equal requires y2 <= x2 <= x1 <= y1 with equal
/// midpoints; WeakSum relaxes to x2 <= x1 <= y1 and x1+x2 <= y1+y2 on the
/// positive cone, with isotone f as the advisory extra.
InequalityReport verify_parallelogram(const FunctionModel& f, const Point& x1,
                                      const Point& x2, const Point& y1, const Point& y2,
                                      ParallelogramVariant variant,
                                      const TolerancePolicy& tol);

/// Alternating-sum inequality for decreasing nonnegative chains. The
/// modulus sum runs over consecutive gaps k = 1..n-1 plus the final
/// alternating-sum term.
InequalityReport verify_T8(const FunctionModel& f, const Modulus& w,
                           const std::vector<Point>& chain, const TolerancePolicy& tol);

/// Trace families: A decreasing nonnegative, partial sums dominated by B's,
/// then sum trace f(A_k) <= sum trace f(B_k) for nondecreasing convex f.
InequalityReport verify_T9(const ScalarFunction& f_scalar, const std::vector<Point>& a,
                           const std::vector<Point>& b, int m,
                           const TolerancePolicy& tol);

enum class PopoviciuCase { A, B };

/// Popoviciu-type inequality for ordered triplets; each barycenter case
/// carries its own fixed omega coefficient pattern.
InequalityReport verify_T10(const FunctionModel& f, const Modulus& w, const Point& x,
                            const Point& y, const Point& z, PopoviciuCase which,
                            const TolerancePolicy& tol);

} // namespace majorder
