#include "majorder/convex_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace majorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct WorstTracker {
    double worst = kInf;
    std::optional<Witness> witness;
    long tested = 0;
    long skipped = 0;

    void record(double residual, std::vector<Point> pts, double lambda, long index) {
        ++tested;
        if (residual < worst) {
            worst = residual;
            witness = Witness{std::move(pts), lambda, index};
        }
    }

    ClassVerdict finish(std::uint64_t seed, const TolerancePolicy& tol, double scale) const {
        ClassVerdict v;
        v.samples_tested = tested;
        v.samples_skipped = skipped;
        v.seed = seed;
        if (tested == 0)
            throw EmptyDomainError("checker: every sample fell outside the domain");
        v.worst_residual = worst;
        v.holds = worst >= -tol.threshold(scale);
        // only a genuine violation is interesting as a witness
        if (v.holds) v.witness.reset();
        else v.witness = witness;
        return v;
    }
};

} // namespace

double omega_convexity_residual(const FunctionModel& f, const Modulus& w,
                                const Point& x, const Point& y, double lambda) {
    const Point mid = (1.0 - lambda) * x + lambda * y;
    const double dist = f.domain_space.norm(x - y);
    return (1.0 - lambda) * f.eval(x) + lambda * f.eval(y) -
           lambda * (1.0 - lambda) * w(dist) - f.eval(mid);
}

ClassVerdict check_omega_convex(const FunctionModel& f, const Modulus& w,
                                const SamplePlan& plan, long n_samples,
                                const TolerancePolicy& tol) {
    Rng rng(plan.seed);
    WorstTracker t;
    double scale = 1.0;
    for (long i = 0; i < n_samples; ++i) {
        const Point x = sample_point(f.domain_space, plan.box, plan.margin, rng);
        const Point y = sample_point(f.domain_space, plan.box, plan.margin, rng);
        const double lambda = rng.uniform_open();
        const Point mid = (1.0 - lambda) * x + lambda * y;
        if (!f.in_domain(x) || !f.in_domain(y) || !f.in_domain(mid)) {
            ++t.skipped;
            continue;
        }
        const double r = omega_convexity_residual(f, w, x, y, lambda);
        scale = std::max({scale, std::abs(f.eval_unchecked(x)), std::abs(f.eval_unchecked(y))});
        t.record(r, {x, y}, lambda, i);
    }
    return t.finish(plan.seed, tol, scale);
}

double gradient_inequality_residual(const FunctionModel& f, const Modulus& w,
                                    const Point& a, const Point& x) {
    if (!f.in_domain(a) || !f.in_domain(x))
        throw DomainError("gradient_inequality_residual: points must be interior");
    const Point g = f.gradient(a);
    const Point d = x - a;
    return f.eval(x) - f.eval(a) - f.domain_space.inner(g, d) - w(f.domain_space.norm(d));
}

SmoothnessReport check_strongly_smooth(const FunctionModel& f, double sigma,
                                       const SamplePlan& plan, long n_samples,
                                       const TolerancePolicy& tol) {
    if (!f.gradient_available())
        throw CapabilityError("check_strongly_smooth: " + f.name + " has no usable gradient");
    if (!(sigma > 0.0)) throw Error("check_strongly_smooth: sigma must be > 0");

    Rng rng(plan.seed);
    SmoothnessReport rep;
    rep.lipschitz_worst = kInf;
    rep.upper_bound_worst = kInf;
    rep.cocoercivity_sq_worst = kInf;
    rep.cocoercivity_unsq_worst = kInf;
    rep.cocoercivity_tested = f.claims.convex.value_or(false);

    WorstTracker t;
    double scale = 1.0;
    const OrderedSpace& space = f.domain_space;
    for (long i = 0; i < n_samples; ++i) {
        const Point x = sample_point(space, plan.box, plan.margin, rng);
        const Point y = sample_point(space, plan.box, plan.margin, rng);
        if (!f.in_domain(x) || !f.in_domain(y)) {
            ++t.skipped;
            continue;
        }
        const Point gx = f.gradient(x), gy = f.gradient(y);
        const double dist = space.norm(x - y);
        const double gdist = space.norm(gx - gy);
        const double lip = sigma * dist - gdist;
        const double upper = space.inner(gx, y - x) + 0.5 * sigma * dist * dist -
                             (f.eval(y) - f.eval(x));
        rep.lipschitz_worst = std::min(rep.lipschitz_worst, lip);
        rep.upper_bound_worst = std::min(rep.upper_bound_worst, upper);
        if (rep.cocoercivity_tested) {
            const double bregman = f.eval(y) - f.eval(x) - space.inner(gx, y - x);
            rep.cocoercivity_sq_worst =
                std::min(rep.cocoercivity_sq_worst, bregman - gdist * gdist / (2.0 * sigma));
            rep.cocoercivity_unsq_worst =
                std::min(rep.cocoercivity_unsq_worst, bregman - gdist / (2.0 * sigma));
        }
        scale = std::max({scale, std::abs(f.eval_unchecked(x)), sigma * dist});
        t.record(std::min(lip, upper), {x, y}, 0.0, i);
    }
    rep.verdict = t.finish(plan.seed, tol, scale);
    return rep;
}

double legendre_conjugate(const FunctionModel& f, const Point& x_star,
                          const Box& search_box, int grid_per_axis) {
    if (!search_box.bounded()) throw EmptyDomainError("legendre_conjugate: box must be bounded");
    if (grid_per_axis < 2) throw Error("legendre_conjugate: need at least 2 grid points per axis");
    const int d = search_box.dim();
    const OrderedSpace& space = f.domain_space;

    auto objective = [&](const Point& p) -> double {
        return space.inner(x_star, p) - f.eval(p);
    };

    // coarse tensor grid
    std::vector<double> step(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
        step[a] = (search_box.hi[a] - search_box.lo[a]) / (grid_per_axis - 1);
    long total = 1;
    for (int a = 0; a < d; ++a) total *= grid_per_axis;

    double best = -kInf;
    Point best_pt(std::vector<double>(static_cast<std::size_t>(d), 0.0));
    long evaluated = 0;
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        Point p(std::vector<double>(static_cast<std::size_t>(d)));
        for (int a = 0; a < d; ++a) {
            p[a] = search_box.lo[a] + step[a] * static_cast<double>(rest % grid_per_axis);
            rest /= grid_per_axis;
        }
        if (!f.in_domain(p)) continue;
        ++evaluated;
        const double v = objective(p);
        if (v > best) {
            best = v;
            best_pt = p;
        }
    }
    if (evaluated == 0) throw EmptyDomainError("legendre_conjugate: no grid point in the domain");

    // golden-section coordinate refinement around the best cell
    const double phi = 0.6180339887498949;
    std::vector<double> radius = step;
    for (int round = 0; round < 40; ++round) {
        for (int a = 0; a < d; ++a) {
            double lo = std::max(search_box.lo[a], best_pt[a] - radius[a]);
            double hi = std::min(search_box.hi[a], best_pt[a] + radius[a]);
            double c = hi - phi * (hi - lo);
            double e = lo + phi * (hi - lo);
            Point pc = best_pt, pe = best_pt;
            pc[a] = c;
            pe[a] = e;
            const double vc = f.in_domain(pc) ? objective(pc) : -kInf;
            const double ve = f.in_domain(pe) ? objective(pe) : -kInf;
            const double vbest = std::max(vc, ve);
            if (vbest > best) {
                best = vbest;
                best_pt[a] = vc >= ve ? c : e;
            }
            radius[a] *= phi;
        }
    }
    return best;
}

double box_increment(const FunctionModel& f, const Point& base, int i, int j,
                     double vi, double wi, double vj, double wj) {
    const int d = static_cast<int>(base.dim());
    if (!(0 <= i && i < j && j < d))
        throw DimensionError("box_increment: need axis indices 0 <= i < j < dim");
    if (vi == wi || vj == wj)
        throw DegenerateBoxError("box_increment: box must be nondegenerate on both axes");

    auto corner = [&](double a, double b) {
        Point p = base;
        p[static_cast<std::size_t>(i)] = a;
        p[static_cast<std::size_t>(j)] = b;
        if (!f.in_domain(p)) throw DomainError("box_increment: corner outside the domain");
        return f.eval(p);
    };
    return corner(vi, vj) - corner(vi, wj) - corner(wi, vj) + corner(wi, wj);
}

ClassVerdict check_2box_monotone(const FunctionModel& f, const SamplePlan& plan,
                                 long n_samples, const TolerancePolicy& tol) {
    const int d = plan.box.dim();
    if (d < 2)
        throw CapabilityError("check_2box_monotone: needs a box domain of dimension >= 2");

    Rng rng(plan.seed);
    WorstTracker t;
    double scale = 1.0;
    for (long s = 0; s < n_samples; ++s) {
        const Point base = sample_point(f.domain_space, plan.box, plan.margin, rng);
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(d)));
        if (i == j) j = (j + 1) % d;
        if (i > j) std::swap(i, j);
        auto edge = [&](int axis, double at) {
            const auto a = static_cast<std::size_t>(axis);
            const double w = plan.box.hi[a] - plan.box.lo[a];
            const double lo = plan.box.lo[a] + plan.margin * w;
            const double hi = plan.box.hi[a] - plan.margin * w;
            double v = at;
            double u = lo + rng.uniform() * (hi - lo);
            // nondegenerate span ending above the base coordinate
            while (std::abs(u - v) < 1e-9 * w) u = lo + rng.uniform() * (hi - lo);
            if (u < v) std::swap(u, v);
            return std::pair<double, double>(v, u);
        };
        const auto [vi, wi] = edge(i, base[static_cast<std::size_t>(i)]);
        const auto [vj, wj] = edge(j, base[static_cast<std::size_t>(j)]);
        Point probe = base;
        probe[static_cast<std::size_t>(i)] = vi;
        probe[static_cast<std::size_t>(j)] = vj;
        Point probe2 = base;
        probe2[static_cast<std::size_t>(i)] = wi;
        probe2[static_cast<std::size_t>(j)] = wj;
        if (!f.in_domain(probe) || !f.in_domain(probe2)) {
            ++t.skipped;
            continue;
        }
        double r;
        try {
            r = box_increment(f, base, i, j, vi, wi, vj, wj);
        } catch (const DomainError&) {
            ++t.skipped;
            continue;
        }
        scale = std::max(scale, std::abs(f.eval_unchecked(base)));
        t.record(r, {probe, probe2}, 0.0, s);
    }
    return t.finish(plan.seed, tol, scale);
}

IsotoneReport check_isotone(const FunctionModel& f, const SamplePlan& plan,
                            long n_samples, const TolerancePolicy& tol) {
    Rng rng(plan.seed);
    IsotoneReport rep;
    rep.gradient_test_ran = f.gradient_available();
    rep.gradient_worst = kInf;
    rep.pair_worst = kInf;

    WorstTracker t;
    double scale = 1.0;
    const OrderedSpace& space = f.domain_space;
    for (long i = 0; i < n_samples; ++i) {
        const Point x = sample_point(space, plan.box, plan.margin, rng);
        const Point y = sample_dominating(space, plan.box, plan.margin, x, rng);
        if (!f.in_domain(x) || !f.in_domain(y)) {
            ++t.skipped;
            continue;
        }
        double r = kInf;
        if (rep.gradient_test_ran) {
            const double gslack = cone_slack(space, f.gradient(x));
            rep.gradient_worst = std::min(rep.gradient_worst, gslack);
            r = std::min(r, gslack);
        }
        const double pslack = f.eval(y) - f.eval(x);
        rep.pair_worst = std::min(rep.pair_worst, pslack);
        r = std::min(r, pslack);
        scale = std::max(scale, std::abs(f.eval_unchecked(x)));
        t.record(r, {x, y}, 0.0, i);
    }
    rep.verdict = t.finish(plan.seed, tol, scale);
    return rep;
}

double differential_pair_slack(const FunctionModel& f, const Point& x, const Point& y,
                               Orientation orientation) {
    const Point gx = f.gradient(x), gy = f.gradient(y);
    const Point diff = orientation == Orientation::Isotone ? gy - gx : gx - gy;
    return cone_slack(f.domain_space, diff);
}

IsotoneDiffReport check_isotone_differential(
    const FunctionModel& f, const SamplePlan& plan, long n_samples,
    const TolerancePolicy& tol, Orientation orientation,
    const std::vector<std::pair<Point, Point>>& extra_pairs) {
    if (!f.gradient_available() && !f.hessian_available())
        throw CapabilityError("check_isotone_differential: " + f.name +
                              " exposes neither gradients nor Hessians");

    const OrderedSpace& space = f.domain_space;
    IsotoneDiffReport rep;
    rep.hessian_test_ran = !space.is_loewner() && f.hessian_available();
    rep.hessian_worst = kInf;
    rep.pair_worst = kInf;

    // Only mixed entries are constrained for convex functions; everything
    // otherwise. The antitone orientation mirrors the sign.
    const bool mixed_only =
        orientation == Orientation::Isotone && f.claims.convex.value_or(false);
    const double sign = orientation == Orientation::Isotone ? 1.0 : -1.0;

    Rng rng(plan.seed);
    WorstTracker t;
    double scale = 1.0;
    long index = 0;

    auto test_pair = [&](const Point& x, const Point& y) {
        if (!f.in_domain(x) || !f.in_domain(y)) {
            ++t.skipped;
            ++index;
            return;
        }
        double r = kInf;
        if (rep.hessian_test_ran) {
            const Point h = f.hessian_packed(x);
            const int d = static_cast<int>(x.dim());
            double hmin = kInf;
            for (int a = 0; a < d; ++a)
                for (int b = mixed_only ? a + 1 : a; b < d; ++b)
                    hmin = std::min(hmin, sign * h[packed_index(d, a, b)]);
            if (d == 1) hmin = sign * h[0]; // no mixed entries on the line
            rep.hessian_worst = std::min(rep.hessian_worst, hmin);
            r = std::min(r, hmin);
        }
        const double pslack = differential_pair_slack(f, x, y, orientation);
        rep.pair_worst = std::min(rep.pair_worst, pslack);
        r = std::min(r, pslack);
        scale = std::max(scale, space.norm(f.gradient(x)));
        t.record(r, {x, y}, 0.0, index++);
    };

    for (const auto& [x, y] : extra_pairs) test_pair(x, y);
    for (long i = 0; i < n_samples; ++i) {
        const Point x = sample_point(space, plan.box, plan.margin, rng);
        const Point y = sample_dominating(space, plan.box, plan.margin, x, rng);
        test_pair(x, y);
    }
    rep.verdict = t.finish(plan.seed, tol, scale);
    return rep;
}

} // namespace majorder
