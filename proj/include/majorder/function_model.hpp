#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "majorder/rng.hpp"
#include "majorder/space.hpp"

namespace majorder {

/// Axis-aligned open box. For Loewner domains the box is one-dimensional
/// and bounds the spectrum instead of the coordinates.
struct Box {
    std::vector<double> lo, hi;

    Box() = default;
    Box(std::vector<double> l, std::vector<double> h);

    static Box cube(int dim, double lo, double hi);
    static Box unbounded(int dim);

    int dim() const { return static_cast<int>(lo.size()); }
    bool bounded() const;
    bool contains(const std::vector<double>& coords, double margin_abs = 0.0) const;
    Box shrunk(double per_face) const;
    double max_width() const;
};

/// Perturbation modulus for the perturbed-convexity inequality.
/// Quadratic(alpha) is (alpha/2) t^2 (strong convexity), NegQuadratic(beta)
/// is -(beta/2) t^2 (semiconvexity); Table interpolates linearly through
/// knots with eval(0) = 0.
struct Modulus {
    enum class Form { Zero, Quadratic, NegQuadratic, Table };

    Form form = Form::Zero;
    double param = 0.0;
    std::vector<std::pair<double, double>> knots;

    static Modulus zero() { return {}; }
    static Modulus quadratic(double alpha);
    static Modulus neg_quadratic(double beta);
    static Modulus table(std::vector<std::pair<double, double>> knots);
    static Modulus parse(const std::string& text); // "zero" | "quad:A" | "negquad:B"

    double operator()(double t) const;
    std::string describe() const;
};

/// Truth labels for a function. Unset means unknown/not claimed; zoo
/// constructors set the labels the literature supports and tests treat them
/// as oracles for the checkers.
struct Claims {
    std::optional<bool> convex;
    std::optional<bool> isotone;
    std::optional<bool> antitone;
    std::optional<bool> isotone_differential;
    std::optional<bool> antitone_differential;
    std::optional<bool> two_box_monotone;
    std::optional<double> strongly_smooth_sigma;
    std::optional<double> strongly_convex_alpha;
    std::optional<double> semiconvex_beta;
    // Parameter depends on the compact subset (e.g. entropy): tests derive
    // alpha or sigma from the box in play.
    bool strongly_convex_on_compacts = false;
    bool strongly_smooth_on_compacts = false;
};

/// An evaluable function with optional analytic derivatives and a domain
/// predicate. Gradients fall back to central finite differences unless the
/// function is marked nondifferentiable, in which case asking for one is a
/// CapabilityError rather than silently differencing across kinks.
struct FunctionModel {
    std::string name;
    OrderedSpace domain_space;
    std::optional<Box> domain_box;
    std::function<double(const Point&)> eval_fn;
    std::function<Point(const Point&)> gradient_fn;
    std::function<Point(const Point&)> hessian_fn; // packed upper triangle
    std::function<bool(const Point&)> domain_fn;   // overrides the box test
    double fd_step = 1e-5;
    double fd_hess_step = 1e-3;
    bool differentiable = true;
    Claims claims;

    bool in_domain(const Point& p) const;
    double eval(const Point& p) const;
    double eval_unchecked(const Point& p) const { return eval_fn(p); }

    bool gradient_available() const;
    Point gradient(const Point& p) const;

    bool hessian_available() const;
    Point hessian_packed(const Point& p) const;
};

/// Negation, for semiconcavity tests and mirror-orientation checks.
FunctionModel negate(const FunctionModel& f);

/// Seeded sampling plan: where to sample and how far to stay from the open
/// faces (relative margin, guards singular gradients at the boundary).
struct SamplePlan {
    Box box;
    std::uint64_t seed = 0;
    double margin = 1e-3;
};

/// Draws one interior point of the plan's box; for Loewner spaces, a random
/// rotation of a diagonal matrix with spectrum inside the (inset) window.
Point sample_point(const OrderedSpace& space, const Box& box, double margin, Rng& rng);

/// Draws a cone increment with the given scale (componentwise nonnegative,
/// or G^T G for Loewner).
Point sample_cone_increment(const OrderedSpace& space, double scale, Rng& rng);

/// Draws y with x <= y, both inside the inset box.
Point sample_dominating(const OrderedSpace& space, const Box& box, double margin,
                        const Point& x, Rng& rng);

} // namespace majorder
