#include "majorder/measure.hpp"

#include <algorithm>
#include <cmath>

namespace majorder {

bool relation_is_weak(Relation r) {
    return r == Relation::wHLP || r == Relation::wLdown || r == Relation::wRup;
}

std::string relation_name(Relation r) {
    switch (r) {
        case Relation::HLP: return "hlp";
        case Relation::wHLP: return "whlp";
        case Relation::Ldown: return "ldown";
        case Relation::wLdown: return "wldown";
        case Relation::Rup: return "rup";
        case Relation::wRup: return "wrup";
    }
    return "?";
}

Relation relation_from_name(const std::string& name) {
    if (name == "hlp") return Relation::HLP;
    if (name == "whlp") return Relation::wHLP;
    if (name == "ldown") return Relation::Ldown;
    if (name == "wldown") return Relation::wLdown;
    if (name == "rup") return Relation::Rup;
    if (name == "wrup") return Relation::wRup;
    throw Error("unknown relation: " + name);
}

DiscreteMeasure::DiscreteMeasure(OrderedSpace s, std::vector<double> w,
                                 std::vector<Point> pts)
    : space(s), weights(std::move(w)), support(std::move(pts)) {
    validate();
}

void DiscreteMeasure::validate() const {
    if (weights.empty() || weights.size() != support.size())
        throw DimensionError("measure: weights and support must be nonempty and equal length");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0 && w <= 1.0))
            throw Error("measure: weights must lie in (0,1]");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw Error("measure: weights must sum to 1 (defect " +
                    std::to_string(total - 1.0) + ")");
    for (const auto& p : support) {
        if (static_cast<int>(p.dim()) != space.ambient_dim())
            throw DimensionError("measure: support point dimension mismatch");
        if (!p.all_finite()) throw NumericError("measure: non-finite support point");
    }
}

Point DiscreteMeasure::barycenter() const {
    Point b = space.zero();
    for (std::size_t k = 0; k < size(); ++k) b = b + weights[k] * support[k];
    return b;
}

MajorizationVerdict check_hlp(const std::vector<double>& x, const std::vector<double>& y,
                              bool weak, const TolerancePolicy& tol) {
    if (x.size() != y.size() || x.empty())
        throw DimensionError("check_hlp: vectors must be nonempty and of equal length");

    std::vector<double> xs = x, ys = y;
    std::stable_sort(xs.begin(), xs.end(), std::greater<>());
    std::stable_sort(ys.begin(), ys.end(), std::greater<>());

    MajorizationVerdict v;
    v.relation = weak ? Relation::wHLP : Relation::HLP;

    double px = 0.0, py = 0.0, scale = 0.0;
    v.prefix_slacks.reserve(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        px += xs[k];
        py += ys[k];
        scale = std::max({scale, std::abs(px), std::abs(py)});
        v.prefix_slacks.push_back(py - px);
    }
    const double threshold = tol.threshold(scale);

    v.holds = true;
    for (std::size_t k = 0; k < v.prefix_slacks.size(); ++k) {
        if (v.prefix_slacks[k] < -threshold) {
            v.holds = false;
            if (!v.failing_index) v.failing_index = static_cast<int>(k);
        }
    }
    v.equality_defect = std::abs(py - px);
    if (!weak && v.equality_defect > threshold) v.holds = false;
    return v;
}

namespace {

// Shared prefix machinery for the L-down / R-up relations. The chain
// condition differs per relation and is checked by the callers.
MajorizationVerdict prefix_verdict(Relation rel, const DiscreteMeasure& mu,
                                   const DiscreteMeasure& nu, bool weak,
                                   const TolerancePolicy& tol) {
    mu.validate();
    nu.validate();
    if (!(mu.space == nu.space))
        throw DimensionError("majorization: measures live in different spaces");
    if (mu.size() != nu.size())
        throw DimensionError("majorization: measures have different support sizes");
    for (std::size_t k = 0; k < mu.size(); ++k)
        if (std::abs(mu.weights[k] - nu.weights[k]) > 1e-12)
            throw WeightMismatchError("majorization: weight arrays differ at index " +
                                      std::to_string(k));

    const OrderedSpace& space = mu.space;
    double scale = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k)
        scale += mu.weights[k] * (space.norm(mu.support[k]) + space.norm(nu.support[k]));
    const double threshold = tol.threshold(scale);

    MajorizationVerdict v;
    v.relation = rel;
    v.holds = true;

    Point prefix = space.zero();
    for (std::size_t k = 0; k < mu.size(); ++k) {
        prefix = prefix + mu.weights[k] * (nu.support[k] - mu.support[k]);
        const double slack = cone_slack(space, prefix);
        v.prefix_slacks.push_back(slack);
        if (slack < -threshold) {
            v.holds = false;
            if (!v.failing_index) v.failing_index = static_cast<int>(k);
        }
    }
    v.equality_defect = space.norm(prefix);
    if (!weak && v.equality_defect > threshold) v.holds = false;
    return v;
}

} // namespace

MajorizationVerdict check_L_down(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                 bool weak, const TolerancePolicy& tol) {
    mu.validate();
    const int bad = chain_violation_index(mu.space, mu.support,
                                          ChainDirection::Decreasing, tol);
    if (bad >= 0)
        throw ChainViolationError("check_L_down: left support is not a decreasing chain "
                                  "at index " + std::to_string(bad), bad);
    return prefix_verdict(weak ? Relation::wLdown : Relation::Ldown, mu, nu, weak, tol);
}

MajorizationVerdict check_R_up(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               bool weak, const TolerancePolicy& tol) {
    nu.validate();
    const int bad = chain_violation_index(nu.space, nu.support,
                                          ChainDirection::Increasing, tol);
    if (bad >= 0)
        throw ChainViolationError("check_R_up: right support is not an increasing chain "
                                  "at index " + std::to_string(bad), bad);
    return prefix_verdict(weak ? Relation::wRup : Relation::Rup, mu, nu, weak, tol);
}

MajorizationVerdict check_relation(Relation r, const DiscreteMeasure& mu,
                                   const DiscreteMeasure& nu, const TolerancePolicy& tol) {
    switch (r) {
        case Relation::Ldown: return check_L_down(mu, nu, false, tol);
        case Relation::wLdown: return check_L_down(mu, nu, true, tol);
        case Relation::Rup: return check_R_up(mu, nu, false, tol);
        case Relation::wRup: return check_R_up(mu, nu, true, tol);
        default:
            throw Error("check_relation: scalar HLP relations take raw vectors");
    }
}

DoublyStochasticMatrix DoublyStochasticMatrix::identity(int n) {
    DoublyStochasticMatrix p;
    p.n = n;
    p.entries.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) p.entries[static_cast<std::size_t>(i) * n + i] = 1.0;
    return p;
}

DoublyStochasticMatrix DoublyStochasticMatrix::uniform(int n) {
    DoublyStochasticMatrix p;
    p.n = n;
    p.entries.assign(static_cast<std::size_t>(n) * n, 1.0 / n);
    return p;
}

DoublyStochasticMatrix DoublyStochasticMatrix::from_entries(int n, std::vector<double> e) {
    DoublyStochasticMatrix p;
    p.n = n;
    p.entries = std::move(e);
    p.validate();
    return p;
}

void DoublyStochasticMatrix::validate() const {
    if (entries.size() != static_cast<std::size_t>(n) * n)
        throw DimensionError("doubly stochastic matrix: wrong entry count");
    for (double e : entries)
        if (e < 0.0) throw Error("doubly stochastic matrix: negative entry");
    for (int i = 0; i < n; ++i) {
        double row = 0.0, col = 0.0;
        for (int j = 0; j < n; ++j) {
            row += at(i, j);
            col += at(j, i);
        }
        if (std::abs(row - 1.0) > 1e-12 || std::abs(col - 1.0) > 1e-12)
            throw Error("doubly stochastic matrix: row/column sums must be 1");
    }
}

std::vector<Point> apply_doubly_stochastic(const OrderedSpace& space,
                                           const DoublyStochasticMatrix& P,
                                           const std::vector<Point>& points) {
    if (static_cast<std::size_t>(P.n) != points.size())
        throw DimensionError("apply_doubly_stochastic: matrix size does not match point count");
    std::vector<Point> out;
    out.reserve(points.size());
    for (int i = 0; i < P.n; ++i) {
        Point x = space.zero();
        for (int j = 0; j < P.n; ++j) x = x + P.at(i, j) * points[static_cast<std::size_t>(j)];
        out.push_back(std::move(x));
    }
    return out;
}

MajorizationVerdict verify_ostrowski(const OrderedSpace& space,
                                     const DoublyStochasticMatrix& P,
                                     const std::vector<Point>& nu_points,
                                     const TolerancePolicy& tol) {
    if (!is_monotone_chain(space, nu_points, ChainDirection::Decreasing, tol))
        throw ChainViolationError("verify_ostrowski: input points are not decreasing",
                                  chain_violation_index(space, nu_points,
                                                        ChainDirection::Decreasing, tol));
    const std::size_t n = nu_points.size();
    const std::vector<double> w(n, 1.0 / static_cast<double>(n));
    const std::vector<Point> image = apply_doubly_stochastic(space, P, nu_points);
    const DiscreteMeasure mu(space, w, image);
    const DiscreteMeasure nu(space, w, nu_points);
    return check_L_down(mu, nu, false, tol);
}

} // namespace majorder
