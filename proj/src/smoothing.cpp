#include "majorder/smoothing.hpp"

#include <cmath>

namespace majorder {

void MollifierSpec::validate(const FunctionModel& f) const {
    if (!(bandwidth > 0.0)) throw Error("mollify: bandwidth must be > 0");
    if (quad_nodes_per_axis < 3 || quad_nodes_per_axis % 2 == 0)
        throw Error("mollify: quadrature nodes per axis must be odd and >= 3");
    if (epsilon < 0.0) throw Error("mollify: epsilon must be >= 0");
    if (!box.bounded()) throw Error("mollify: box K must be compact");
    if (f.domain_space.is_loewner())
        throw CapabilityError("mollify: defined for coordinate boxes only");
    if (box.dim() != f.domain_space.ambient_dim())
        throw DimensionError("mollify: box dimension does not match the function");
    // f must be evaluable on K expanded by h
    Point probe(box.lo);
    for (auto& v : probe.coords) v -= bandwidth;
    if (!f.in_domain(probe))
        throw DomainError("mollify: K expanded by h escapes the domain (low corner)");
    for (std::size_t i = 0; i < probe.coords.size(); ++i) probe[i] = box.hi[i] + bandwidth;
    if (!f.in_domain(probe))
        throw DomainError("mollify: K expanded by h escapes the domain (high corner)");
}

namespace {

// Midpoint nodes on [-h, h] with bump weights, mirrored exactly so that
// sum w_i t_i = 0 in floating point.
void bump_nodes(double h, int q, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<std::size_t>(q));
    weights.resize(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i)
        nodes[static_cast<std::size_t>(i)] = -h + (2.0 * i + 1.0) * h / q;
    for (int i = 0; i < q / 2; ++i)
        nodes[static_cast<std::size_t>(q - 1 - i)] = -nodes[static_cast<std::size_t>(i)];
    nodes[static_cast<std::size_t>(q / 2)] = 0.0;
    double total = 0.0;
    for (int i = 0; i < q; ++i) {
        const double r = nodes[static_cast<std::size_t>(i)] / h;
        weights[static_cast<std::size_t>(i)] = std::exp(-1.0 / (1.0 - r * r));
        total += weights[static_cast<std::size_t>(i)];
    }
    for (auto& w : weights) w /= total;
    // mirror weights exactly as well
    for (int i = 0; i < q / 2; ++i)
        weights[static_cast<std::size_t>(q - 1 - i)] = weights[static_cast<std::size_t>(i)];
}

} // namespace

FunctionModel mollify(const FunctionModel& f, const MollifierSpec& spec) {
    spec.validate(f);
    const int dim = spec.box.dim();
    const int q = spec.quad_nodes_per_axis;

    std::vector<double> nodes1d, weights1d;
    bump_nodes(spec.bandwidth, q, nodes1d, weights1d);

    // enumerate the tensor product once; evaluation walks this table
    long count = 1;
    for (int a = 0; a < dim; ++a) count *= q;
    std::vector<std::vector<double>> offsets(static_cast<std::size_t>(count));
    std::vector<double> weights(static_cast<std::size_t>(count));
    for (long idx = 0; idx < count; ++idx) {
        long rest = idx;
        std::vector<double> off(static_cast<std::size_t>(dim));
        double w = 1.0;
        for (int a = 0; a < dim; ++a) {
            const int i = static_cast<int>(rest % q);
            rest /= q;
            off[static_cast<std::size_t>(a)] = nodes1d[static_cast<std::size_t>(i)];
            w *= weights1d[static_cast<std::size_t>(i)];
        }
        offsets[static_cast<std::size_t>(idx)] = std::move(off);
        weights[static_cast<std::size_t>(idx)] = w;
    }

    FunctionModel g;
    g.name = "mollified(" + f.name + ")";
    g.domain_space = f.domain_space;
    g.domain_box = spec.box;
    const double eps = spec.epsilon;
    auto base = f; // value copy keeps the closure self-contained
    g.eval_fn = [base, offsets, weights, eps](const Point& x) {
        double s = 0.0;
        Point shifted = x;
        for (std::size_t j = 0; j < offsets.size(); ++j) {
            for (std::size_t a = 0; a < shifted.dim(); ++a)
                shifted[a] = x[a] - offsets[j][a];
            double quad = 0.0;
            if (eps != 0.0) {
                double n2 = 0.0;
                for (double v : shifted.coords) n2 += v * v;
                quad = eps * n2;
            }
            s += weights[j] * (base.eval_fn(shifted) + quad);
        }
        return s;
    };
    g.fd_step = 1e-6;
    g.claims.two_box_monotone = f.claims.two_box_monotone;
    g.claims.convex = f.claims.convex;
    if (eps > 0.0) g.claims.strongly_convex_alpha = 2.0 * eps;
    // the quadratic shift has nonnegative gradient only on positive boxes
    bool positive_box = true;
    for (double lo : spec.box.lo) positive_box = positive_box && lo >= 0.0;
    if (f.claims.isotone.value_or(false) && (eps == 0.0 || positive_box))
        g.claims.isotone = true;
    return g;
}

double uniform_error(const FunctionModel& f, const FunctionModel& g, const Box& k,
                     int grid_per_axis) {
    if (grid_per_axis < 2) throw Error("uniform_error: need at least 2 grid points per axis");
    const int dim = k.dim();
    long total = 1;
    for (int a = 0; a < dim; ++a) total *= grid_per_axis;
    double worst = 0.0;
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        Point p(std::vector<double>(static_cast<std::size_t>(dim)));
        for (int a = 0; a < dim; ++a) {
            const auto i = static_cast<double>(rest % grid_per_axis);
            rest /= grid_per_axis;
            p[static_cast<std::size_t>(a)] =
                k.lo[static_cast<std::size_t>(a)] +
                (k.hi[static_cast<std::size_t>(a)] - k.lo[static_cast<std::size_t>(a)]) * i /
                    (grid_per_axis - 1);
        }
        worst = std::max(worst, std::abs(f.eval_fn(p) - g.eval_fn(p)));
    }
    return worst;
}

FunctionModel quadratic_shift(const FunctionModel& f, double epsilon) {
    FunctionModel g = f;
    g.name = f.name + "+quad";
    auto ev = f.eval_fn;
    g.eval_fn = [ev, epsilon](const Point& p) {
        double n2 = 0.0;
        for (double v : p.coords) n2 += v * v;
        return ev(p) + epsilon * n2;
    };
    if (f.gradient_fn) {
        auto gr = f.gradient_fn;
        g.gradient_fn = [gr, epsilon](const Point& p) {
            Point out = gr(p);
            for (std::size_t i = 0; i < out.dim(); ++i) out[i] += 2.0 * epsilon * p[i];
            return out;
        };
    }
    g.claims = Claims{};
    g.claims.convex = f.claims.convex;
    g.claims.two_box_monotone = f.claims.two_box_monotone;
    if (epsilon > 0.0) g.claims.strongly_convex_alpha = 2.0 * epsilon;
    return g;
}

} // namespace majorder
