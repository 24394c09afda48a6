#include "majorder/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace majorder {

Box::Box(std::vector<double> l, std::vector<double> h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.size() != hi.size() || lo.empty())
        throw DimensionError("box: lo/hi must be nonempty and of equal length");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw DegenerateBoxError("box: lo must be < hi on every axis");
}

Box Box::cube(int dim, double lo, double hi) {
    return Box(std::vector<double>(static_cast<std::size_t>(dim), lo),
               std::vector<double>(static_cast<std::size_t>(dim), hi));
}

Box Box::unbounded(int dim) {
    const double inf = std::numeric_limits<double>::infinity();
    return Box(std::vector<double>(static_cast<std::size_t>(dim), -inf),
               std::vector<double>(static_cast<std::size_t>(dim), inf));
}

bool Box::bounded() const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) return false;
    return true;
}

bool Box::contains(const std::vector<double>& coords, double margin_abs) const {
    if (coords.size() != lo.size()) throw DimensionError("box: dimension mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!(coords[i] > lo[i] + margin_abs && coords[i] < hi[i] - margin_abs))
            return false;
    return true;
}

Box Box::shrunk(double per_face) const {
    Box b = *this;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        b.lo[i] += per_face;
        b.hi[i] -= per_face;
        if (!(b.lo[i] < b.hi[i]))
            throw BoxTooSmallError("box: shrinking by " + std::to_string(per_face) +
                                   " leaves no interior");
    }
    return b;
}

double Box::max_width() const {
    double w = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) w = std::max(w, hi[i] - lo[i]);
    return w;
}

Modulus Modulus::quadratic(double alpha) {
    if (!(alpha > 0.0)) throw Error("modulus: quadratic parameter must be > 0");
    Modulus m;
    m.form = Form::Quadratic;
    m.param = alpha;
    return m;
}

Modulus Modulus::neg_quadratic(double beta) {
    if (!(beta > 0.0)) throw Error("modulus: neg-quadratic parameter must be > 0");
    Modulus m;
    m.form = Form::NegQuadratic;
    m.param = beta;
    return m;
}

Modulus Modulus::table(std::vector<std::pair<double, double>> knots) {
    Modulus m;
    m.form = Form::Table;
    m.knots = std::move(knots);
    std::sort(m.knots.begin(), m.knots.end());
    if (m.knots.empty() || m.knots.front().first != 0.0 || m.knots.front().second != 0.0)
        throw Error("modulus: table must start with the knot (0,0)");
    return m;
}

Modulus Modulus::parse(const std::string& text) {
    if (text == "zero" || text.empty()) return zero();
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string head = text.substr(0, colon);
        const double value = std::stod(text.substr(colon + 1));
        if (head == "quad") return quadratic(value);
        if (head == "negquad") return neg_quadratic(value);
    }
    throw Error("modulus: cannot parse '" + text + "' (want zero|quad:A|negquad:B)");
}

double Modulus::operator()(double t) const {
    switch (form) {
        case Form::Zero: return 0.0;
        case Form::Quadratic: return 0.5 * param * t * t;
        case Form::NegQuadratic: return -0.5 * param * t * t;
        case Form::Table: break;
    }
    if (t <= knots.front().first) return knots.front().second;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (t <= knots[i].first) {
            const auto& [t0, v0] = knots[i - 1];
            const auto& [t1, v1] = knots[i];
            return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
        }
    }
    return knots.back().second; // constant extrapolation
}

std::string Modulus::describe() const {
    switch (form) {
        case Form::Zero: return "zero";
        case Form::Quadratic: return "quad:" + std::to_string(param);
        case Form::NegQuadratic: return "negquad:" + std::to_string(param);
        case Form::Table: return "table(" + std::to_string(knots.size()) + ")";
    }
    return "?";
}

bool FunctionModel::in_domain(const Point& p) const {
    if (static_cast<int>(p.dim()) != domain_space.ambient_dim()) return false;
    if (!p.all_finite()) return false;
    if (domain_fn) return domain_fn(p);
    if (!domain_box) return true;
    if (domain_space.is_loewner()) {
        // the box bounds the spectrum
        const double lo = domain_box->lo[0], hi = domain_box->hi[0];
        const double lmin = min_eigenvalue(p, domain_space.n);
        const double lmax = max_eigenvalue(p, domain_space.n);
        return lmin > lo && lmax < hi;
    }
    return domain_box->contains(p.coords);
}

double FunctionModel::eval(const Point& p) const {
    if (!in_domain(p))
        throw DomainError("eval: point outside the domain of " +
                          (name.empty() ? std::string("<anonymous>") : name));
    return eval_fn(p);
}

bool FunctionModel::gradient_available() const {
    return static_cast<bool>(gradient_fn) || differentiable;
}

Point FunctionModel::gradient(const Point& p) const {
    if (gradient_fn) return gradient_fn(p);
    if (!differentiable)
        throw CapabilityError("gradient: " + name +
                              " is nondifferentiable and has no analytic gradient");
    // central differences, step scaled per coordinate magnitude
    const double h = fd_step * std::max(1.0, domain_space.norm(p));
    Point g(std::vector<double>(p.dim(), 0.0));
    Point e = p;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        const double saved = e[i];
        e[i] = saved + h;
        const double fp = eval(e);
        e[i] = saved - h;
        const double fm = eval(e);
        e[i] = saved;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

bool FunctionModel::hessian_available() const {
    return static_cast<bool>(hessian_fn) || differentiable;
}

Point FunctionModel::hessian_packed(const Point& p) const {
    if (hessian_fn) return hessian_fn(p);
    if (!differentiable)
        throw CapabilityError("hessian: " + name +
                              " is nondifferentiable and has no analytic Hessian");
    const int d = static_cast<int>(p.dim());
    const double h = fd_hess_step * std::max(1.0, domain_space.norm(p));
    Point out(std::vector<double>(packed_size(d), 0.0));
    Point e = p;
    const double f0 = eval(p);
    for (int i = 0; i < d; ++i) {
        const double si = e[static_cast<std::size_t>(i)];
        e[static_cast<std::size_t>(i)] = si + h;
        const double fp = eval(e);
        e[static_cast<std::size_t>(i)] = si - h;
        const double fm = eval(e);
        e[static_cast<std::size_t>(i)] = si;
        out[packed_index(d, i, i)] = (fp - 2.0 * f0 + fm) / (h * h);
        for (int j = i + 1; j < d; ++j) {
            const double sj = e[static_cast<std::size_t>(j)];
            e[static_cast<std::size_t>(i)] = si + h;
            e[static_cast<std::size_t>(j)] = sj + h;
            const double fpp = eval(e);
            e[static_cast<std::size_t>(j)] = sj - h;
            const double fpm = eval(e);
            e[static_cast<std::size_t>(i)] = si - h;
            const double fmm = eval(e);
            e[static_cast<std::size_t>(j)] = sj + h;
            const double fmp = eval(e);
            e[static_cast<std::size_t>(i)] = si;
            e[static_cast<std::size_t>(j)] = sj;
            out[packed_index(d, i, j)] = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
        }
    }
    return out;
}

FunctionModel negate(const FunctionModel& f) {
    FunctionModel g = f;
    g.name = "neg(" + f.name + ")";
    const auto ev = f.eval_fn;
    g.eval_fn = [ev](const Point& p) { return -ev(p); };
    if (f.gradient_fn) {
        const auto gr = f.gradient_fn;
        g.gradient_fn = [gr](const Point& p) { return -1.0 * gr(p); };
    }
    if (f.hessian_fn) {
        const auto he = f.hessian_fn;
        g.hessian_fn = [he](const Point& p) { return -1.0 * he(p); };
    }
    g.claims = Claims{};
    return g;
}

static double inset_lo(const Box& box, std::size_t i, double margin) {
    const double w = box.hi[i] - box.lo[i];
    return box.lo[i] + margin * w;
}

static double inset_hi(const Box& box, std::size_t i, double margin) {
    const double w = box.hi[i] - box.lo[i];
    return box.hi[i] - margin * w;
}

Point sample_point(const OrderedSpace& space, const Box& box, double margin, Rng& rng) {
    if (!box.bounded())
        throw EmptyDomainError("sampling requires a bounded box; pass one explicitly");
    if (!space.is_loewner()) {
        if (box.dim() != space.ambient_dim())
            throw DimensionError("sample_point: box dimension mismatch");
        Point p(std::vector<double>(box.lo.size()));
        for (std::size_t i = 0; i < box.lo.size(); ++i)
            p[i] = rng.uniform(inset_lo(box, i, margin), inset_hi(box, i, margin));
        return p;
    }
    // Loewner: random rotation of a diagonal with spectrum in the window.
    if (box.dim() != 1)
        throw DimensionError("sample_point: Loewner boxes are a 1-d spectral window");
    const int m = space.n;
    std::vector<double> d(static_cast<std::size_t>(m));
    for (auto& v : d) v = rng.uniform(inset_lo(box, 0, margin), inset_hi(box, 0, margin));
    Point a = diag_matrix(d);
    // conjugate by a few random Givens rotations; spectrum is untouched
    std::vector<double> full = unpack_symmetric(a, m);
    auto at = [&](int i, int j) -> double& { return full[static_cast<std::size_t>(i) * m + j]; };
    const int rounds = std::max(1, m - 1) * 2;
    for (int r = 0; r < rounds; ++r) {
        const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
        if (i == j) j = (j + 1) % m;
        const double theta = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < m; ++k) {
            const double aki = at(k, i), akj = at(k, j);
            at(k, i) = c * aki - s * akj;
            at(k, j) = s * aki + c * akj;
        }
        for (int k = 0; k < m; ++k) {
            const double aik = at(i, k), ajk = at(j, k);
            at(i, k) = c * aik - s * ajk;
            at(j, k) = s * aik + c * ajk;
        }
    }
    // symmetrize exactly before packing
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            at(i, j) = at(j, i) = 0.5 * (at(i, j) + at(j, i));
    return pack_symmetric(full, m);
}

Point sample_cone_increment(const OrderedSpace& space, double scale, Rng& rng) {
    if (!space.is_loewner()) {
        Point d(std::vector<double>(static_cast<std::size_t>(space.ambient_dim())));
        for (auto& v : d.coords) v = scale * rng.uniform();
        return d;
    }
    const int m = space.n;
    std::vector<double> g(static_cast<std::size_t>(m) * m);
    for (auto& v : g) v = rng.uniform(-1.0, 1.0);
    // G^T G, scaled so the norm is on the order of `scale`
    std::vector<double> full(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int k = 0; k < m; ++k)
                s += g[static_cast<std::size_t>(k) * m + i] * g[static_cast<std::size_t>(k) * m + j];
            full[static_cast<std::size_t>(i) * m + j] = s * scale / m;
        }
    return pack_symmetric(full, m);
}

Point sample_dominating(const OrderedSpace& space, const Box& box, double margin,
                        const Point& x, Rng& rng) {
    if (!space.is_loewner()) {
        Point y = x;
        for (std::size_t i = 0; i < y.dim(); ++i) {
            const double room = inset_hi(box, i, margin) - x[i];
            y[i] = x[i] + rng.uniform() * std::max(0.0, room);
        }
        return y;
    }
    const int m = space.n;
    const double room = inset_hi(box, 0, margin) - max_eigenvalue(x, m);
    if (room <= 0.0) return x;
    Point d = sample_cone_increment(space, 1.0, rng);
    const double dmax = max_eigenvalue(d, m);
    if (dmax <= 0.0) return x;
    return x + (rng.uniform() * room / dmax) * d;
}

} // namespace majorder
