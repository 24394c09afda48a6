#pragma once

#include "majorder/function_model.hpp"

namespace majorder {

/// Sampled verdict. The class inequalities are universally quantified;
/// the checkers certify over seeded finite samples and carry a witness for
/// the worst (first, at ties) violating sample.
struct Witness {
    std::vector<Point> points;
    double lambda = 0.0;
    long sample_index = -1;
};

struct ClassVerdict {
    bool holds = false;
    double worst_residual = 0.0;
    std::optional<Witness> witness;
    long samples_tested = 0;
    long samples_skipped = 0;
    std::uint64_t seed = 0;
};

enum class Orientation { Isotone, Antitone };

/// Residual of the perturbed convexity inequality at one triple:
///   (1-l) f(x) + l f(y) - l(1-l) w(|x-y|) - f((1-l)x + l y).
/// Nonnegative iff the inequality holds there.
double omega_convexity_residual(const FunctionModel& f, const Modulus& w,
                                const Point& x, const Point& y, double lambda);

ClassVerdict check_omega_convex(const FunctionModel& f, const Modulus& w,
                                const SamplePlan& plan, long n_samples,
                                const TolerancePolicy& tol);

/// f(x) - f(a) - <grad f(a), x-a> - w(|x-a|); nonnegative when f is w-convex.
double gradient_inequality_residual(const FunctionModel& f, const Modulus& w,
                                    const Point& a, const Point& x);

/// Strong smoothness check. The verdict aggregates (i) the sigma-Lipschitz
/// gradient condition and (ii) the quadratic upper gradient bound. When the
/// function claims convexity the co-coercivity lower bound is evaluated too
/// and reported separately; the squared-norm form is the one judged, the
/// unsquared variant is only recorded.
struct SmoothnessReport {
    ClassVerdict verdict;
    double lipschitz_worst = 0.0;
    double upper_bound_worst = 0.0;
    bool cocoercivity_tested = false;
    double cocoercivity_sq_worst = 0.0;
    double cocoercivity_unsq_worst = 0.0;
};

SmoothnessReport check_strongly_smooth(const FunctionModel& f, double sigma,
                                       const SamplePlan& plan, long n_samples,
                                       const TolerancePolicy& tol);

/// Numeric Legendre-Fenchel conjugate: coarse grid maximization of
/// <x*, x> - f(x) over the box, then 40 rounds of golden-section coordinate
/// refinement around the best cell. The result is a certified lower bound
/// of the true supremum.
double legendre_conjugate(const FunctionModel& f, const Point& x_star,
                          const Box& search_box, int grid_per_axis);

/// Second-order increment over the 2-dimensional box spanned on axes i < j:
///   f(..vi..vj..) - f(..vi..wj..) - f(..wi..vj..) + f(..wi..wj..).
/// Nonnegative iff the increment is monotone.
double box_increment(const FunctionModel& f, const Point& base, int i, int j,
                     double vi, double wi, double vj, double wj);

ClassVerdict check_2box_monotone(const FunctionModel& f, const SamplePlan& plan,
                                 long n_samples, const TolerancePolicy& tol);

/// Isotonicity check; both tests are reported. The gradient-cone test
/// requires a gradient and is skipped (gradient_test_ran = false) for
/// nondifferentiable functions; the direct pair test always runs.
struct IsotoneReport {
    ClassVerdict verdict;
    bool gradient_test_ran = false;
    double gradient_worst = 0.0;
    double pair_worst = 0.0;
};

IsotoneReport check_isotone(const FunctionModel& f, const SamplePlan& plan,
                            long n_samples, const TolerancePolicy& tol);

/// Isotonicity of the differential. On coordinate boxes the Hessian-entry
/// criterion applies: for functions claiming convexity only the mixed (i!=j)
/// second derivatives must be nonnegative, otherwise all of them. The
/// direct pair test compares gradients at comparable points in the cone
/// order and is the only branch run on Loewner domains. extra_pairs are
/// injected ahead of the sampled pairs (deterministic regression fixtures).
struct IsotoneDiffReport {
    ClassVerdict verdict;
    bool hessian_test_ran = false;
    double hessian_worst = 0.0;
    double pair_worst = 0.0;
};

IsotoneDiffReport check_isotone_differential(
    const FunctionModel& f, const SamplePlan& plan, long n_samples,
    const TolerancePolicy& tol, Orientation orientation = Orientation::Isotone,
    const std::vector<std::pair<Point, Point>>& extra_pairs = {});

/// Signed slack of the pair condition grad f(x) <= grad f(y) for x <= y
/// (or the reverse for the antitone orientation).
double differential_pair_slack(const FunctionModel& f, const Point& x, const Point& y,
                               Orientation orientation = Orientation::Isotone);

} // namespace majorder
