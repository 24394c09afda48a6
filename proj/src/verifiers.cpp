#include "majorder/verifiers.hpp"

#include <cmath>
#include <sstream>

#include "majorder/zoo.hpp"
#include <json.hpp>

namespace majorder {

std::string theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::T4_Full: return "t4";
        case TheoremId::T4_Prefix: return "t4w";
        case TheoremId::T5_Ldown: return "t5";
        case TheoremId::T5_Rup: return "t5r";
        case TheoremId::T6: return "t6";
        case TheoremId::T7_JensenGap: return "t7";
        case TheoremId::C1_Parallelogram: return "c1";
        case TheoremId::R9_WeakParallelogram: return "r9";
        case TheoremId::T8_SzegoBellman: return "t8";
        case TheoremId::T9_TraceFamily: return "t9";
        case TheoremId::T10_Popoviciu_a: return "t10a";
        case TheoremId::T10_Popoviciu_b: return "t10b";
    }
    return "?";
}

namespace {

nlohmann::json point_json(const Point& p) {
    return nlohmann::json(p.coords);
}

std::string measure_digest(const char* theorem, const DiscreteMeasure& mu,
                           const DiscreteMeasure& nu, Relation relation) {
    nlohmann::json j;
    j["theorem"] = theorem;
    j["relation"] = relation_name(relation);
    j["space"] = mu.space.describe();
    j["weights"] = mu.weights;
    auto& xs = j["x"];
    for (const auto& p : mu.support) xs.push_back(point_json(p));
    auto& ys = j["y"];
    for (const auto& p : nu.support) ys.push_back(point_json(p));
    return j.dump();
}

std::string points_digest(const char* theorem,
                          std::initializer_list<std::pair<const char*, const Point*>> pts) {
    nlohmann::json j;
    j["theorem"] = theorem;
    for (const auto& [name, p] : pts) j[name] = point_json(*p);
    return j.dump();
}

void require_relation(Relation relation, const DiscreteMeasure& mu,
                      const DiscreteMeasure& nu, const TolerancePolicy& tol) {
    MajorizationVerdict v;
    try {
        v = check_relation(relation, mu, nu, tol);
    } catch (const ChainViolationError& e) {
        throw PreconditionError(std::string("relation precondition failed: ") + e.what());
    }
    if (!v.holds) {
        std::ostringstream msg;
        msg << "relation " << relation_name(relation) << " does not hold";
        if (v.failing_index)
            msg << " (first failing prefix " << *v.failing_index + 1
                << ", slack " << v.prefix_slacks[static_cast<std::size_t>(*v.failing_index)] << ")";
        else
            msg << " (equality defect " << v.equality_defect << ")";
        throw PreconditionError(msg.str());
    }
}

void require_supports_in_domain(const FunctionModel& f, const DiscreteMeasure& mu,
                                const DiscreteMeasure& nu) {
    for (const auto& p : mu.support)
        if (!f.in_domain(p)) throw PreconditionError("left support leaves the domain of " + f.name);
    for (const auto& p : nu.support)
        if (!f.in_domain(p)) throw PreconditionError("right support leaves the domain of " + f.name);
}

void require_in_domain(const FunctionModel& f, const Point& p, const char* label) {
    if (!f.in_domain(p))
        throw PreconditionError(std::string(label) + " leaves the domain of " + f.name);
}

bool is_ldown_side(Relation r) { return r == Relation::Ldown || r == Relation::wLdown; }

} // namespace

InequalityReport verify_T4(const FunctionModel& f, const Modulus& w,
                           const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           Relation relation, const TolerancePolicy& tol) {
    require_relation(relation, mu, nu, tol);
    require_supports_in_domain(f, mu, nu);
    const bool weak = relation_is_weak(relation);
    const bool ldown = is_ldown_side(relation);

    InequalityReport rep;
    rep.theorem = weak ? TheoremId::T4_Prefix : TheoremId::T4_Full;
    rep.instance_digest = measure_digest("t4", mu, nu, relation);
    if (!f.claims.isotone_differential.value_or(false))
        rep.advisories.push_back("f does not claim an isotone differential");
    // the weak L-down prefix inequalities lean on isotonicity of f; the
    // mirrored relation needs the mirrored hypothesis
    if (relation == Relation::wLdown && !f.claims.isotone.value_or(false))
        rep.advisories.push_back("weak relation: f does not claim isotonicity");
    if (relation == Relation::wRup && !f.claims.antitone.value_or(false))
        rep.advisories.push_back("weak relation: f does not claim antitonicity");

    const OrderedSpace& space = mu.space;
    const std::size_t n = mu.size();
    double big = 0.0, small = 0.0, penalty = 0.0;
    rep.prefix_reports.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = mu.weights[k];
        const double fx = f.eval(mu.support[k]);
        const double fy = f.eval(nu.support[k]);
        // Ldown: the y-sums dominate; Rup: the x-sums dominate.
        big += lam * (ldown ? fy : fx);
        small += lam * (ldown ? fx : fy);
        penalty += lam * w(space.norm(mu.support[k] - nu.support[k]));
        PrefixReport pr;
        pr.n = static_cast<int>(k + 1);
        pr.lhs = big;
        pr.rhs = small + penalty;
        pr.residual = pr.lhs - pr.rhs;
        rep.prefix_reports.push_back(pr);
    }
    rep.lhs = big;
    rep.rhs = small + penalty;
    rep.residual = rep.lhs - rep.rhs;

    const double thr = tol.threshold(std::max({1.0, std::abs(rep.lhs), std::abs(rep.rhs)}));
    if (weak) {
        rep.holds = true;
        for (const auto& pr : rep.prefix_reports) rep.holds = rep.holds && pr.residual >= -thr;
    } else {
        rep.prefix_reports.clear();
        rep.holds = rep.residual >= -thr;
    }
    return rep;
}

InequalityReport verify_T5(const FunctionModel& f, double sigma,
                           const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           Relation relation, const TolerancePolicy& tol) {
    if (!(sigma > 0.0)) throw Error("verify_T5: sigma must be > 0");
    require_relation(relation, mu, nu, tol);
    require_supports_in_domain(f, mu, nu);
    const bool ldown = is_ldown_side(relation);

    InequalityReport rep;
    rep.theorem = ldown ? TheoremId::T5_Ldown : TheoremId::T5_Rup;
    rep.instance_digest = measure_digest("t5", mu, nu, relation);

    if (!f.claims.antitone_differential.value_or(false)) {
        // no declared label: probe the instance chain itself, advisory only
        bool probed = false;
        if (f.gradient_available()) {
            const auto& chain = ldown ? mu.support : nu.support;
            double worst = 0.0;
            for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
                const Point& lowpt = ldown ? chain[k + 1] : chain[k];
                const Point& highpt = ldown ? chain[k] : chain[k + 1];
                worst = std::min(worst,
                                 differential_pair_slack(f, lowpt, highpt, Orientation::Antitone));
            }
            probed = true;
            if (worst < -tol.threshold(1.0))
                rep.advisories.push_back("differential is not antitone along the instance chain");
        }
        if (!probed) rep.advisories.push_back("f does not claim an antitone differential");
    }
    // the weak relations need a sign on the dangling barycenter term:
    // antitone f for wL-down, isotone f for the mirrored wR-up
    if (relation == Relation::wLdown && !f.claims.antitone.value_or(false))
        rep.advisories.push_back("weak relation: f does not claim antitonicity");
    if (relation == Relation::wRup && !f.claims.isotone.value_or(false))
        rep.advisories.push_back("weak relation: f does not claim isotonicity");

    const OrderedSpace& space = mu.space;
    double fsmall = 0.0, fbig = 0.0, quad = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k) {
        const double lam = mu.weights[k];
        const double fx = f.eval(mu.support[k]);
        const double fy = f.eval(nu.support[k]);
        // Ldown bounds the y-sums from above; Rup bounds the x-sums.
        fsmall += lam * (ldown ? fy : fx);
        fbig += lam * (ldown ? fx : fy);
        const double d = space.norm(mu.support[k] - nu.support[k]);
        quad += lam * 0.5 * sigma * d * d;
    }
    rep.lhs = fsmall;
    rep.rhs = fbig + quad;
    rep.residual = rep.rhs - rep.lhs;
    const double thr = tol.threshold(std::max({1.0, std::abs(rep.lhs), std::abs(rep.rhs)}));
    rep.holds = rep.residual >= -thr;
    return rep;
}

InequalityReport verify_T6(const FunctionModel& f, const DiscreteMeasure& mu,
                           const DiscreteMeasure& nu, Relation relation,
                           const TolerancePolicy& tol) {
    if (relation_is_weak(relation))
        throw Error("verify_T6: defined for the non-weak relations");
    require_relation(relation, mu, nu, tol);
    require_supports_in_domain(f, mu, nu);
    for (const auto& pts : {std::cref(mu.support), std::cref(nu.support)})
        for (const auto& p : pts.get())
            for (double c : p.coords)
                if (!(c > 0.0))
                    throw PreconditionError("t6: supports must lie in the open positive orthant");

    InequalityReport rep;
    rep.theorem = TheoremId::T6;
    rep.instance_digest = measure_digest("t6", mu, nu, relation);
    if (!f.claims.two_box_monotone.value_or(false))
        rep.advisories.push_back("f does not claim 2-box monotonicity");
    if (!f.claims.convex.value_or(false))
        rep.advisories.push_back("f does not claim convexity");

    const bool ldown = is_ldown_side(relation);
    double big = 0.0, small = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k) {
        const double lam = mu.weights[k];
        big += lam * f.eval(ldown ? nu.support[k] : mu.support[k]);
        small += lam * f.eval(ldown ? mu.support[k] : nu.support[k]);
    }
    rep.lhs = big;
    rep.rhs = small;
    rep.residual = big - small;
    rep.holds = rep.residual >= -tol.threshold(std::max({1.0, std::abs(big), std::abs(small)}));
    return rep;
}

InequalityReport verify_T7(const FunctionModel& f, const Point& x1, const Point& x2,
                           const Point& y1, const Point& y2, double lambda,
                           const TolerancePolicy& tol) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw Error("verify_T7: lambda must be in (0,1)");
    const OrderedSpace& space = f.domain_space;
    const Point ymid = (1.0 - lambda) * y1 + lambda * y2;
    const Point xmid = (1.0 - lambda) * x1 + lambda * x2;

    const std::pair<const char*, std::pair<const Point*, const Point*>> links[] = {
        {"y2 <= x2", {&y2, &x2}},
        {"x2 <= (1-l)y1+l*y2", {&x2, &ymid}},
        {"(1-l)y1+l*y2 <= x1", {&ymid, &x1}},
        {"x1 <= y1", {&x1, &y1}},
    };
    for (const auto& [name, pair] : links)
        if (!leq(space, *pair.first, *pair.second, tol))
            throw PreconditionError(std::string("t7 ordering violated: ") + name);
    for (const auto& [p, label] : {std::pair{&x1, "x1"}, {&x2, "x2"}, {&y1, "y1"},
                                   {&y2, "y2"}, {&xmid, "x midpoint"}, {&ymid, "y midpoint"}})
        require_in_domain(f, *p, label);

    InequalityReport rep;
    rep.theorem = TheoremId::T7_JensenGap;
    rep.instance_digest = points_digest("t7", {{"x1", &x1}, {"x2", &x2}, {"y1", &y1}, {"y2", &y2}});
    if (!f.claims.convex.value_or(false)) rep.advisories.push_back("f does not claim convexity");
    if (!f.claims.isotone_differential.value_or(false))
        rep.advisories.push_back("f does not claim an isotone differential");

    auto gap = [&](const Point& a, const Point& b, const Point& mid) {
        return (1.0 - lambda) * f.eval(a) + lambda * f.eval(b) - f.eval(mid);
    };
    const double gap_x = gap(x1, x2, xmid);
    const double gap_y = gap(y1, y2, ymid);
    rep.lhs = gap_y;
    rep.rhs = gap_x;
    rep.residual = gap_y - gap_x;
    const double thr = tol.threshold(std::max({1.0, std::abs(gap_x), std::abs(gap_y)}));
    rep.holds = rep.residual >= -thr && gap_x >= -thr;
    return rep;
}

InequalityReport verify_parallelogram(const FunctionModel& f, const Point& x1,
                                      const Point& x2, const Point& y1, const Point& y2,
                                      ParallelogramVariant variant,
                                      const TolerancePolicy& tol) {
    const OrderedSpace& space = f.domain_space;
    const double scale =
        std::max({1.0, space.norm(x1), space.norm(x2), space.norm(y1), space.norm(y2)});

    if (variant == ParallelogramVariant::Equal) {
        const std::pair<const char*, std::pair<const Point*, const Point*>> links[] = {
            {"y2 <= x2", {&y2, &x2}}, {"x2 <= x1", {&x2, &x1}}, {"x1 <= y1", {&x1, &y1}}};
        for (const auto& [name, pair] : links)
            if (!leq(space, *pair.first, *pair.second, tol))
                throw PreconditionError(std::string("c1 ordering violated: ") + name);
        const Point defect = 0.5 * (x1 + x2) - 0.5 * (y1 + y2);
        if (space.norm(defect) > tol.threshold(scale))
            throw PreconditionError("c1 midpoints differ: |(x1+x2)/2 - (y1+y2)/2| = " +
                                    std::to_string(space.norm(defect)));
    } else {
        const std::pair<const char*, std::pair<const Point*, const Point*>> links[] = {
            {"x2 <= x1", {&x2, &x1}}, {"x1 <= y1", {&x1, &y1}}};
        for (const auto& [name, pair] : links)
            if (!leq(space, *pair.first, *pair.second, tol))
                throw PreconditionError(std::string("r9 ordering violated: ") + name);
        if (!cone_contains(space, (y1 + y2) - (x1 + x2), tol))
            throw PreconditionError("r9 sum condition violated: x1+x2 <= y1+y2 fails");
        for (const auto& [p, label] : {std::pair{&x1, "x1"}, {&x2, "x2"}, {&y1, "y1"}, {&y2, "y2"}})
            if (!cone_contains(space, *p, tol))
                throw PreconditionError(std::string("r9: ") + label + " is not in the positive cone");
    }
    for (const auto& [p, label] : {std::pair{&x1, "x1"}, {&x2, "x2"}, {&y1, "y1"}, {&y2, "y2"}})
        require_in_domain(f, *p, label);

    InequalityReport rep;
    rep.theorem = variant == ParallelogramVariant::Equal ? TheoremId::C1_Parallelogram
                                                         : TheoremId::R9_WeakParallelogram;
    rep.instance_digest = points_digest(theorem_name(rep.theorem).c_str(),
                                        {{"x1", &x1}, {"x2", &x2}, {"y1", &y1}, {"y2", &y2}});
    if (!f.claims.convex.value_or(false)) rep.advisories.push_back("f does not claim convexity");
    if (!f.claims.isotone_differential.value_or(false))
        rep.advisories.push_back("f does not claim an isotone differential");
    if (variant == ParallelogramVariant::WeakSum && !f.claims.isotone.value_or(false))
        rep.advisories.push_back("weak-sum variant: f does not claim isotonicity");

    rep.lhs = f.eval(y1) + f.eval(y2);
    rep.rhs = f.eval(x1) + f.eval(x2);
    rep.residual = rep.lhs - rep.rhs;
    rep.holds = rep.residual >= -tol.threshold(std::max({1.0, std::abs(rep.lhs), std::abs(rep.rhs)}));
    return rep;
}

InequalityReport verify_T8(const FunctionModel& f, const Modulus& w,
                           const std::vector<Point>& chain, const TolerancePolicy& tol) {
    if (chain.empty()) throw EmptyChainError("t8: empty chain");
    const OrderedSpace& space = f.domain_space;
    const int bad = chain_violation_index(space, chain, ChainDirection::Decreasing, tol);
    if (bad >= 0)
        throw PreconditionError("t8: chain is not decreasing at index " + std::to_string(bad));
    if (!cone_contains(space, chain.back(), tol))
        throw PreconditionError("t8: the chain must be nonnegative (x_n >= 0 fails)");

    const std::size_t n = chain.size();
    Point alternating = space.zero();
    double sign_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double s = (k % 2 == 0) ? 1.0 : -1.0;
        alternating = alternating + s * chain[k];
        sign_sum += s;
    }
    const Point origin = space.zero();
    require_in_domain(f, origin, "origin");
    require_in_domain(f, alternating, "alternating sum");
    for (const auto& p : chain) require_in_domain(f, p, "chain point");

    InequalityReport rep;
    rep.theorem = TheoremId::T8_SzegoBellman;
    {
        nlohmann::json j;
        j["theorem"] = "t8";
        auto& pts = j["chain"];
        for (const auto& p : chain) pts.push_back(point_json(p));
        rep.instance_digest = j.dump();
    }
    if (!f.claims.isotone_differential.value_or(false))
        rep.advisories.push_back("f does not claim an isotone differential");

    double lhs = (1.0 - sign_sum) * f.eval(origin);
    for (std::size_t k = 0; k < n; ++k)
        lhs += ((k % 2 == 0) ? 1.0 : -1.0) * f.eval(chain[k]);
    double rhs = f.eval(alternating);
    for (std::size_t k = 0; k + 1 < n; ++k)
        rhs += w(space.norm(chain[k] - chain[k + 1]));
    rhs += w(space.norm(alternating));

    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = lhs - rhs;
    rep.holds = rep.residual >= -tol.threshold(std::max({1.0, std::abs(lhs), std::abs(rhs)}));
    return rep;
}

InequalityReport verify_T9(const ScalarFunction& f_scalar, const std::vector<Point>& a,
                           const std::vector<Point>& b, int m,
                           const TolerancePolicy& tol) {
    if (a.empty() || a.size() != b.size())
        throw DimensionError("t9: families must be nonempty and of equal length");
    const OrderedSpace space = OrderedSpace::loewner(m);
    const int bad = chain_violation_index(space, a, ChainDirection::Decreasing, tol);
    if (bad >= 0)
        throw PreconditionError("t9: A-family is not decreasing at index " + std::to_string(bad));
    if (!cone_contains(space, a.back(), tol))
        throw PreconditionError("t9: A_n >= 0 fails");
    Point partial = space.zero();
    for (std::size_t j = 0; j < a.size(); ++j) {
        partial = partial + (b[j] - a[j]);
        if (!cone_contains(space, partial, tol))
            throw PreconditionError("t9: partial-sum dominance fails at j = " +
                                    std::to_string(j + 1));
    }

    InequalityReport rep;
    rep.theorem = TheoremId::T9_TraceFamily;
    {
        nlohmann::json j;
        j["theorem"] = "t9";
        j["f"] = f_scalar.name;
        auto& ja = j["A"];
        for (const auto& p : a) ja.push_back(point_json(p));
        auto& jb = j["B"];
        for (const auto& p : b) jb.push_back(point_json(p));
        rep.instance_digest = j.dump();
    }
    if (!f_scalar.convex) rep.advisories.push_back("scalar function does not claim convexity");
    if (!f_scalar.nondecreasing)
        rep.advisories.push_back("scalar function does not claim monotonicity");

    double ta = 0.0, tb = 0.0;
    for (const auto& p : a) ta += spectral_sum(f_scalar.f, p, m);
    for (const auto& p : b) tb += spectral_sum(f_scalar.f, p, m);
    rep.lhs = tb;
    rep.rhs = ta;
    rep.residual = tb - ta;
    rep.holds = rep.residual >= -tol.threshold(std::max({1.0, std::abs(ta), std::abs(tb)}));
    return rep;
}

InequalityReport verify_T10(const FunctionModel& f, const Modulus& w, const Point& x,
                            const Point& y, const Point& z, PopoviciuCase which,
                            const TolerancePolicy& tol) {
    const OrderedSpace& space = f.domain_space;
    if (!leq(space, y, x, tol)) throw PreconditionError("t10 ordering violated: y <= x");
    if (!leq(space, z, y, tol)) throw PreconditionError("t10 ordering violated: z <= y");
    const Point bar = (1.0 / 3.0) * (x + y + z);
    const bool a_ok = leq(space, y, bar, tol);
    const bool b_ok = leq(space, bar, y, tol);
    if (which == PopoviciuCase::A && !a_ok) {
        if (!b_ok) throw AmbiguousCaseError("t10: barycenter and y are incomparable");
        throw PreconditionError("t10 case (a) needs y <= barycenter; the instance fits case (b)");
    }
    if (which == PopoviciuCase::B && !b_ok) {
        if (!a_ok) throw AmbiguousCaseError("t10: barycenter and y are incomparable");
        throw PreconditionError("t10 case (b) needs barycenter <= y; the instance fits case (a)");
    }

    const Point mxy = 0.5 * (x + y), myz = 0.5 * (y + z), mzx = 0.5 * (z + x);
    for (const auto& [p, label] :
         {std::pair{&x, "x"}, {&y, "y"}, {&z, "z"}, {&bar, "barycenter"},
          {&mxy, "(x+y)/2"}, {&myz, "(y+z)/2"}, {&mzx, "(z+x)/2"}})
        require_in_domain(f, *p, label);

    InequalityReport rep;
    rep.theorem = which == PopoviciuCase::A ? TheoremId::T10_Popoviciu_a
                                            : TheoremId::T10_Popoviciu_b;
    rep.instance_digest =
        points_digest(theorem_name(rep.theorem).c_str(), {{"x", &x}, {"y", &y}, {"z", &z}});
    if (!f.claims.isotone_differential.value_or(false))
        rep.advisories.push_back("f does not claim an isotone differential");

    const double lhs = (f.eval(x) + f.eval(y) + f.eval(z)) / 3.0 + f.eval(bar);
    double rhs = (2.0 / 3.0) * (f.eval(mxy) + f.eval(myz) + f.eval(mzx));
    // fixed per-case omega coefficient pattern
    if (which == PopoviciuCase::A) {
        rhs += (1.0 / 6.0) * w(space.norm(x - y) / 2.0);
        rhs += (1.0 / 6.0) * w(space.norm(2.0 * z - x - y) / 6.0);
        rhs += (1.0 / 3.0) * w(space.norm(2.0 * y - x - z) / 6.0);
        rhs += (1.0 / 3.0) * w(space.norm(z - y) / 2.0);
    } else {
        rhs += (1.0 / 3.0) * w(space.norm(x - y) / 2.0);
        rhs += (1.0 / 6.0) * w(space.norm(2.0 * x - y - z) / 6.0);
        rhs += (1.0 / 3.0) * w(space.norm(2.0 * y - x - z) / 6.0);
        rhs += (1.0 / 6.0) * w(space.norm(z - y) / 2.0);
    }
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = lhs - rhs;
    rep.holds = rep.residual >= -tol.threshold(std::max({1.0, std::abs(lhs), std::abs(rhs)}));
    return rep;
}

} // namespace majorder
