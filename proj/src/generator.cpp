#include "majorder/generator.hpp"

#include <algorithm>
#include <cmath>

namespace majorder {

namespace {

// feasible anchor range so that anchor and anchor+total both sit inside
// the box with an absolute margin
double anchor_low(const Box& box, std::size_t axis, double margin) {
    return box.lo[axis] + margin;
}

bool orthant_chain_fits(const Box& box, const Point& total, double margin) {
    for (std::size_t i = 0; i < total.dim(); ++i)
        if (anchor_low(box, i, margin) + total[i] > box.hi[i] - margin) return false;
    return true;
}

} // namespace

std::vector<double> gen_weights(const GeneratorConfig& cfg, Rng& rng) {
    const int n = cfg.n_points;
    std::vector<double> w(static_cast<std::size_t>(n));
    if (cfg.weight_scheme == WeightScheme::Uniform) {
        std::fill(w.begin(), w.end(), 1.0 / n);
        return w;
    }
    // Dirichlet(1,...,1), clamped below and renormalized so every weight
    // stays in (0,1]
    double total = 0.0;
    for (auto& v : w) {
        v = rng.exponential();
        total += v;
    }
    for (auto& v : w) v = std::max(v / total, 1e-3);
    total = 0.0;
    for (double v : w) total += v;
    for (auto& v : w) v /= total;
    return w;
}

std::vector<Point> gen_decreasing_chain(const GeneratorConfig& cfg, Rng& rng) {
    const OrderedSpace& space = cfg.space;
    const int n = cfg.n_points;
    const double margin = 1e-3 * cfg.domain_box.max_width();

    double scale = cfg.chain_scale;
    for (int attempt = 0;; ++attempt) {
        std::vector<Point> increments;
        increments.reserve(static_cast<std::size_t>(n - 1));
        Point total = space.zero();
        for (int k = 0; k + 1 < n; ++k) {
            Point d = sample_cone_increment(space, scale, rng);
            total = total + d;
            increments.push_back(std::move(d));
        }

        if (!space.is_loewner()) {
            if (orthant_chain_fits(cfg.domain_box, total, margin)) {
                Point anchor(std::vector<double>(total.dim()));
                for (std::size_t i = 0; i < total.dim(); ++i) {
                    const double lo = anchor_low(cfg.domain_box, i, margin);
                    const double hi = cfg.domain_box.hi[i] - margin - total[i];
                    anchor[i] = rng.uniform(lo, hi);
                }
                std::vector<Point> chain(static_cast<std::size_t>(n), anchor);
                for (int k = n - 2; k >= 0; --k)
                    chain[static_cast<std::size_t>(k)] =
                        chain[static_cast<std::size_t>(k + 1)] +
                        increments[static_cast<std::size_t>(k)];
                return chain;
            }
        } else {
            const double lo = cfg.domain_box.lo[0], hi = cfg.domain_box.hi[0];
            const double top = max_eigenvalue(total, space.n);
            if (lo + margin + top < hi - margin) {
                const double base = rng.uniform(lo + margin, hi - margin - top);
                std::vector<double> diag(static_cast<std::size_t>(space.n), base);
                Point anchor = diag_matrix(diag);
                std::vector<Point> chain(static_cast<std::size_t>(n), anchor);
                for (int k = n - 2; k >= 0; --k)
                    chain[static_cast<std::size_t>(k)] =
                        chain[static_cast<std::size_t>(k + 1)] +
                        increments[static_cast<std::size_t>(k)];
                return chain;
            }
        }
        if (attempt >= 8)
            throw BoxTooSmallError("gen_decreasing_chain: chain cannot fit the box even "
                                   "after shrinking increments");
        scale *= 0.5;
    }
}

std::vector<Point> support_from_deficits(const OrderedSpace& space,
                                         const std::vector<Point>& chain,
                                         const std::vector<double>& weights,
                                         const std::vector<Point>& deficits) {
    if (chain.size() != weights.size() || deficits.size() != chain.size())
        throw DimensionError("support_from_deficits: length mismatch");
    std::vector<Point> out;
    out.reserve(chain.size());
    Point prev = space.zero();
    for (std::size_t k = 0; k < chain.size(); ++k) {
        out.push_back(chain[k] + (1.0 / weights[k]) * (deficits[k] - prev));
        prev = deficits[k];
    }
    return out;
}

GeneratedPair gen_majorized_pair(const GeneratorConfig& cfg, Rng& rng) {
    const OrderedSpace& space = cfg.space;
    const int n = cfg.n_points;
    const bool weak = relation_is_weak(cfg.relation);
    const bool ldown = cfg.relation == Relation::Ldown || cfg.relation == Relation::wLdown;
    if (cfg.relation == Relation::HLP || cfg.relation == Relation::wHLP)
        throw Error("gen_majorized_pair: scalar HLP relations are not generated here");

    const std::vector<double> weights = gen_weights(cfg, rng);
    std::vector<Point> chain = gen_decreasing_chain(cfg, rng);
    if (!ldown) std::reverse(chain.begin(), chain.end()); // increasing chain for R-up

    const double margin = 1e-4 * cfg.domain_box.max_width();
    auto inside = [&](const Point& p) {
        if (!space.is_loewner()) {
            for (std::size_t i = 0; i < p.dim(); ++i)
                if (!(p[i] >= cfg.domain_box.lo[i] + margin &&
                      p[i] <= cfg.domain_box.hi[i] - margin))
                    return false;
            return true;
        }
        return min_eigenvalue(p, space.n) >= cfg.domain_box.lo[0] + margin &&
               max_eigenvalue(p, space.n) <= cfg.domain_box.hi[0] - margin;
    };

    // deficits are divided by the weights in the telescoping step, so their
    // scale must respect the smallest weight to keep the supports in the box
    const double min_weight = *std::min_element(weights.begin(), weights.end());
    double scale = cfg.deficit_scale * min_weight;
    for (int attempt = 0;; ++attempt) {
        std::vector<Point> deficits(static_cast<std::size_t>(n), space.zero());
        for (int k = 0; k + 1 < n; ++k)
            deficits[static_cast<std::size_t>(k)] = sample_cone_increment(space, scale, rng);
        if (weak) deficits[static_cast<std::size_t>(n - 1)] = sample_cone_increment(space, scale, rng);

        const std::vector<Point> shifted = support_from_deficits(space, chain, weights, deficits);
        std::vector<Point> candidate;
        candidate.reserve(shifted.size());
        if (ldown) {
            candidate = shifted; // y_n = x_n + tele_n
        } else {
            // R-up: the chain is the right support; x_n = y_n - tele_n
            for (std::size_t k = 0; k < shifted.size(); ++k)
                candidate.push_back(2.0 * chain[k] - shifted[k]);
        }
        if (std::all_of(candidate.begin(), candidate.end(), inside)) {
            GeneratedPair pair;
            if (ldown) {
                pair.mu = DiscreteMeasure(space, weights, chain);
                pair.nu = DiscreteMeasure(space, weights, candidate);
            } else {
                pair.mu = DiscreteMeasure(space, weights, candidate);
                pair.nu = DiscreteMeasure(space, weights, chain);
            }
            pair.deficits = deficits;
            return pair;
        }
        if (attempt >= 8)
            throw DomainEscapeError("gen_majorized_pair: support escaped the box after "
                                    "8 deficit shrinks");
        scale *= 0.5;
    }
}

GeneratedPair gen_majorized_pair(const GeneratorConfig& cfg) {
    Rng rng(cfg.seed);
    return gen_majorized_pair(cfg, rng);
}

JensenInstance gen_jensen_instance(const OrderedSpace& space, const Box& box, Rng& rng) {
    JensenInstance inst;
    inst.lambda = rng.uniform(0.1, 0.9);
    const Point y2 = sample_point(space, box, 1e-3, rng);
    const Point y1 = sample_dominating(space, box, 1e-3, y2, rng);
    const Point mid = (1.0 - inst.lambda) * y1 + inst.lambda * y2;
    // scalar interpolation keeps every ordering link exact in the cone
    const double t = rng.uniform();
    const double s = rng.uniform();
    inst.x2 = y2 + t * (mid - y2);
    inst.x1 = mid + s * (y1 - mid);
    inst.y1 = y1;
    inst.y2 = y2;
    return inst;
}

ParallelogramInstance gen_parallelogram_instance(const OrderedSpace& space, const Box& box,
                                                 Rng& rng, ParallelogramVariant variant) {
    ParallelogramInstance inst;
    if (variant == ParallelogramVariant::Equal) {
        // center +- R for the outer pair, center +- tR for the inner one
        const Point y2 = sample_point(space, box, 1e-3, rng);
        const Point y1 = sample_dominating(space, box, 1e-3, y2, rng);
        const Point center = 0.5 * (y1 + y2);
        const Point radius = 0.5 * (y1 - y2);
        const double t = rng.uniform();
        inst.y1 = y1;
        inst.y2 = y2;
        inst.x1 = center + t * radius;
        inst.x2 = center - 1.0 * (t * radius);
        return inst;
    }
    // weak-sum variant on the positive cone: y2 >= x2 keeps the sum condition
    inst.x2 = sample_point(space, box, 1e-3, rng);
    inst.x1 = sample_dominating(space, box, 1e-3, inst.x2, rng);
    inst.y1 = sample_dominating(space, box, 1e-3, inst.x1, rng);
    inst.y2 = sample_dominating(space, box, 1e-3, inst.x2, rng);
    return inst;
}

std::vector<Point> gen_t8_chain(const OrderedSpace& space, const Box& box, int n, Rng& rng) {
    GeneratorConfig cfg;
    cfg.space = space;
    cfg.n_points = n;
    cfg.domain_box = box;
    cfg.chain_scale = 0.25 * box.max_width();
    return gen_decreasing_chain(cfg, rng);
}

TraceFamilyInstance gen_t9_instance(int m, const Box& spectral_box, int n, Rng& rng) {
    const OrderedSpace space = OrderedSpace::loewner(m);
    GeneratorConfig cfg;
    cfg.space = space;
    cfg.n_points = n;
    cfg.domain_box = spectral_box;
    cfg.chain_scale = 0.2 * spectral_box.max_width();

    TraceFamilyInstance inst;
    inst.a = gen_decreasing_chain(cfg, rng);
    // deficit construction: B_k = A_k + F_k - F_{k-1} with F_k >= 0 in the
    // cone gives partial-sum dominance with certificate F_j
    const double scale = 0.15 * spectral_box.max_width();
    Point prev = space.zero();
    for (int k = 0; k < n; ++k) {
        const Point fk = sample_cone_increment(space, scale, rng);
        inst.b.push_back(inst.a[static_cast<std::size_t>(k)] + fk - prev);
        prev = fk;
    }
    return inst;
}

PopoviciuInstance gen_t10_instance(const OrderedSpace& space, const Box& box,
                                   PopoviciuCase which, Rng& rng) {
    // x = y + p, z = y - q; the barycenter sits at y + (p - q)/3, so making
    // p - q a cone element selects case (a), and q - p case (b).
    const double width = box.max_width();
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Point y = sample_point(space, box, 0.25, rng);
        const Point small = sample_cone_increment(space, 0.05 * width, rng);
        const Point extra = sample_cone_increment(space, 0.08 * width, rng);
        const Point p = which == PopoviciuCase::A ? small + extra : small;
        const Point q = which == PopoviciuCase::A ? small : small + extra;
        PopoviciuInstance inst{y + p, y, y - q};
        auto inside = [&](const Point& pt) {
            if (!space.is_loewner()) {
                for (std::size_t i = 0; i < pt.dim(); ++i)
                    if (!(pt[i] > box.lo[i] && pt[i] < box.hi[i])) return false;
                return true;
            }
            return min_eigenvalue(pt, space.n) > box.lo[0] &&
                   max_eigenvalue(pt, space.n) < box.hi[0];
        };
        if (inside(inst.x) && inside(inst.z)) return inst;
    }
    throw BoxTooSmallError("gen_t10_instance: could not fit the triplet in the box");
}

GeneratedPair necessity_fixture() {
    const OrderedSpace space = OrderedSpace::orthant(2);
    const std::vector<double> w{0.5, 0.5};
    GeneratedPair pair;
    pair.mu = DiscreteMeasure(space, w, {Point({1.5, 1.0}), Point({0.5, 1.0})});
    pair.nu = DiscreteMeasure(space, w, {Point({2.0, 2.0}), Point({0.0, 0.0})});
    pair.deficits = {Point({0.25, 0.5}), Point({0.0, 0.0})};
    return pair;
}

std::optional<SearchHit> search_counterexample(const FunctionModel& f, const Modulus& w,
                                               TheoremId theorem, const GeneratorConfig& cfg,
                                               std::uint64_t budget,
                                               const TolerancePolicy& tol, double sigma) {
    const bool inject_fixture =
        (theorem == TheoremId::T4_Full || theorem == TheoremId::T4_Prefix) &&
        f.name == "neg_geom_mean" && !cfg.space.is_loewner() && cfg.space.n == 2;

    for (std::uint64_t i = 0; i < budget; ++i) {
        Rng rng(cfg.seed, 0, i);
        InequalityReport rep;
        try {
            if (inject_fixture && i == 0) {
                const GeneratedPair fix = necessity_fixture();
                rep = verify_T4(f, w, fix.mu, fix.nu, Relation::Ldown, tol);
            } else {
                GeneratorConfig local = cfg;
                const GeneratedPair pair = gen_majorized_pair(local, rng);
                switch (theorem) {
                    case TheoremId::T4_Full:
                    case TheoremId::T4_Prefix:
                        rep = verify_T4(f, w, pair.mu, pair.nu, cfg.relation, tol);
                        break;
                    case TheoremId::T5_Ldown:
                    case TheoremId::T5_Rup:
                        rep = verify_T5(f, sigma, pair.mu, pair.nu, cfg.relation, tol);
                        break;
                    case TheoremId::T6:
                        rep = verify_T6(f, pair.mu, pair.nu, cfg.relation, tol);
                        break;
                    default:
                        throw Error("search_counterexample: unsupported theorem " +
                                    theorem_name(theorem));
                }
            }
        } catch (const PreconditionError&) {
            continue; // not an applicable instance, spend the budget elsewhere
        }
        if (rep.residual < -tol.threshold(std::max({1.0, std::abs(rep.lhs), std::abs(rep.rhs)})))
            return SearchHit{rep, i};
    }
    return std::nullopt;
}

} // namespace majorder
