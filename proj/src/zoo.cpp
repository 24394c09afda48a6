#include "majorder/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace majorder {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> parse_weights(const std::string& csv) {
    std::vector<double> w;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) w.push_back(std::stod(item));
    if (w.empty()) throw Error("zoo: empty weight list");
    return w;
}
} // namespace

ScalarFunction scalar_square() {
    return {"square",
            [](double t) { return t * t; },
            [](double t) { return 2.0 * t; },
            [](double) { return 2.0; },
            -kInf, kInf, true, false, true};
}

ScalarFunction scalar_identity() {
    return {"identity",
            [](double t) { return t; },
            [](double) { return 1.0; },
            [](double) { return 0.0; },
            -kInf, kInf, true, true, true};
}

ScalarFunction scalar_exp() {
    return {"exp",
            [](double t) { return std::exp(t); },
            [](double t) { return std::exp(t); },
            [](double t) { return std::exp(t); },
            -kInf, kInf, true, true};
}

ScalarFunction scalar_xlogx() {
    return {"xlogx",
            [](double t) { return t * std::log(t); },
            [](double t) { return 1.0 + std::log(t); },
            [](double t) { return 1.0 / t; },
            0.0, kInf, true, false, true};
}

ScalarFunction scalar_log() {
    return {"log",
            [](double t) { return std::log(t); },
            [](double t) { return 1.0 / t; },
            [](double t) { return -1.0 / (t * t); },
            0.0, kInf, false, true};
}

ScalarFunction scalar_by_name(const std::string& name) {
    if (name == "square") return scalar_square();
    if (name == "identity") return scalar_identity();
    if (name == "exp") return scalar_exp();
    if (name == "xlogx") return scalar_xlogx();
    if (name == "log") return scalar_log();
    throw Error("zoo: unknown scalar function '" + name + "'");
}

FunctionModel perspective(const ScalarFunction& f, PerspectiveInterval interval) {
    FunctionModel m;
    m.domain_space = OrderedSpace::orthant(2);
    const char* tag = interval == PerspectiveInterval::NegativeHalfLine  ? "neg"
                      : interval == PerspectiveInterval::PositiveHalfLine ? "pos"
                                                                          : "full";
    m.name = "perspective:" + f.name + ":" + tag;
    m.domain_fn = [interval](const Point& p) {
        if (!(p[1] > 0.0)) return false;
        const double r = p[0] / p[1];
        switch (interval) {
            case PerspectiveInterval::NegativeHalfLine: return r < 0.0;
            case PerspectiveInterval::PositiveHalfLine: return r > 0.0;
            case PerspectiveInterval::FullLine: return true;
        }
        return false;
    };
    auto sf = f.f;
    auto sdf = f.df;
    auto sddf = f.ddf;
    m.eval_fn = [sf](const Point& p) { return p[1] * sf(p[0] / p[1]); };
    m.gradient_fn = [sf, sdf](const Point& p) {
        const double r = p[0] / p[1];
        return Point({sdf(r), sf(r) - r * sdf(r)});
    };
    m.hessian_fn = [sddf](const Point& p) {
        const double r = p[0] / p[1];
        const double h = sddf(r);
        // packed [xx, xy, yy]
        return Point({h / p[1], -(p[0] / (p[1] * p[1])) * h,
                      (p[0] * p[0] / (p[1] * p[1] * p[1])) * h});
    };
    m.claims.convex = f.convex;
    if (interval == PerspectiveInterval::NegativeHalfLine)
        m.claims.isotone_differential = true;
    return m;
}

FunctionModel negative_entropy(int n) {
    FunctionModel m;
    m.name = "neg_entropy:" + std::to_string(n);
    m.domain_space = OrderedSpace::orthant_interior(n);
    m.domain_box = Box(std::vector<double>(static_cast<std::size_t>(n), 0.0),
                       std::vector<double>(static_cast<std::size_t>(n), kInf));
    m.eval_fn = [](const Point& p) {
        double s = 0.0;
        for (double v : p.coords) s += v * std::log(v);
        return s;
    };
    m.gradient_fn = [](const Point& p) {
        Point g = p;
        for (auto& v : g.coords) v = 1.0 + std::log(v);
        return g;
    };
    m.hessian_fn = [n](const Point& p) {
        Point h(std::vector<double>(packed_size(n), 0.0));
        for (int i = 0; i < n; ++i)
            h[packed_index(n, i, i)] = 1.0 / p[static_cast<std::size_t>(i)];
        return h;
    };
    m.claims.convex = true;
    m.claims.isotone = false; // fails below 1/e
    m.claims.isotone_differential = true;
    m.claims.two_box_monotone = true;
    m.claims.strongly_convex_on_compacts = true;
    return m;
}

FunctionModel minus_entropy(int n) {
    FunctionModel m = negate(negative_entropy(n));
    m.name = "minus_entropy:" + std::to_string(n);
    m.claims = Claims{};
    m.claims.convex = false;
    m.claims.antitone_differential = true;
    m.claims.strongly_smooth_on_compacts = true;
    return m;
}

FunctionModel log_sum_exp(int n) {
    FunctionModel m;
    m.name = "lse:" + std::to_string(n);
    m.domain_space = OrderedSpace::orthant(n);
    m.eval_fn = [](const Point& p) {
        const double top = *std::max_element(p.coords.begin(), p.coords.end());
        double s = 0.0;
        for (double v : p.coords) s += std::exp(v - top);
        return top + std::log(s);
    };
    m.gradient_fn = [](const Point& p) {
        const double top = *std::max_element(p.coords.begin(), p.coords.end());
        Point g = p;
        double s = 0.0;
        for (auto& v : g.coords) {
            v = std::exp(v - top);
            s += v;
        }
        for (auto& v : g.coords) v /= s;
        return g;
    };
    m.hessian_fn = [n](const Point& p) {
        const double top = *std::max_element(p.coords.begin(), p.coords.end());
        std::vector<double> s(static_cast<std::size_t>(n));
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            s[static_cast<std::size_t>(i)] = std::exp(p[static_cast<std::size_t>(i)] - top);
            total += s[static_cast<std::size_t>(i)];
        }
        for (auto& v : s) v /= total;
        Point h(std::vector<double>(packed_size(n), 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double si = s[static_cast<std::size_t>(i)], sj = s[static_cast<std::size_t>(j)];
                h[packed_index(n, i, j)] = (i == j ? si : 0.0) - si * sj;
            }
        return h;
    };
    m.claims.convex = true;
    m.claims.isotone = true;
    m.claims.isotone_differential = false;
    m.claims.two_box_monotone = false;
    m.claims.strongly_smooth_sigma = 2.0; // safe desk-scale bound
    return m;
}

FunctionModel trace_function(const ScalarFunction& f, int m_dim) {
    FunctionModel m;
    m.name = "trace:" + f.name + ":" + std::to_string(m_dim);
    m.domain_space = OrderedSpace::loewner(m_dim);
    m.domain_box = Box({f.lo}, {f.hi}); // spectral window
    auto sf = f.f;
    auto sdf = f.df;
    m.eval_fn = [sf, m_dim](const Point& p) { return spectral_sum(sf, p, m_dim); };
    m.gradient_fn = [sdf, m_dim](const Point& p) { return sym_apply(sdf, p, m_dim); };
    m.claims.convex = f.convex;
    m.claims.isotone = f.nondecreasing; // Weyl monotonicity
    // isotone differential in the Loewner order needs f' operator monotone
    if (f.convex) m.claims.isotone_differential = f.derivative_operator_monotone;
    return m;
}

FunctionModel neg_geometric_mean() {
    FunctionModel m;
    m.name = "neg_geom_mean";
    m.domain_space = OrderedSpace::orthant_interior(2);
    // evaluation extends to the closed quadrant; derivatives only inside
    m.domain_fn = [](const Point& p) { return p[0] >= 0.0 && p[1] >= 0.0; };
    m.eval_fn = [](const Point& p) { return -2.0 * std::sqrt(p[0] * p[1]); };
    m.gradient_fn = [](const Point& p) {
        return Point({-std::sqrt(p[1] / p[0]), -std::sqrt(p[0] / p[1])});
    };
    m.hessian_fn = [](const Point& p) {
        const double x = p[0], y = p[1];
        return Point({0.5 * std::pow(x, -1.5) * std::sqrt(y),
                      -0.5 / std::sqrt(x * y),
                      0.5 * std::sqrt(x) * std::pow(y, -1.5)});
    };
    m.claims.convex = true;
    m.claims.isotone = false;
    m.claims.antitone = true;
    m.claims.isotone_differential = false;
    m.claims.two_box_monotone = false;
    return m;
}

FunctionModel bilinear_saddle() {
    FunctionModel m;
    m.name = "bilinear_saddle";
    m.domain_space = OrderedSpace::orthant(2);
    m.eval_fn = [](const Point& p) { return (2.0 * p[0] - 1.0) * (2.0 * p[1] - 1.0); };
    m.gradient_fn = [](const Point& p) {
        return Point({2.0 * (2.0 * p[1] - 1.0), 2.0 * (2.0 * p[0] - 1.0)});
    };
    m.hessian_fn = [](const Point&) { return Point({0.0, 4.0, 0.0}); };
    m.claims.convex = false;
    m.claims.isotone_differential = true;
    m.claims.two_box_monotone = true;
    return m;
}

FunctionModel frechet_hoeffding(FrechetHoeffdingKind kind) {
    FunctionModel m;
    m.name = kind == FrechetHoeffdingKind::Lower ? "fh_lower" : "fh_upper";
    m.domain_space = OrderedSpace::orthant(2);
    m.domain_fn = [](const Point& p) {
        return p[0] >= 0.0 && p[0] <= 1.0 && p[1] >= 0.0 && p[1] <= 1.0;
    };
    if (kind == FrechetHoeffdingKind::Lower)
        m.eval_fn = [](const Point& p) { return std::min(p[0], p[1]); };
    else
        m.eval_fn = [](const Point& p) { return std::max(p[0] + p[1] - 1.0, 0.0); };
    m.differentiable = false;
    m.claims.two_box_monotone = true;
    m.claims.isotone = true;
    m.claims.convex = kind == FrechetHoeffdingKind::Upper;
    return m;
}

FunctionModel power_p_sum(int n, double p) {
    if (!(p > 1.0)) throw Error("power_p_sum: exponent must be > 1");
    FunctionModel m;
    std::ostringstream label;
    label << "power:" << p << ":" << n;
    m.name = label.str();
    m.domain_space = OrderedSpace::orthant(n);
    m.eval_fn = [p](const Point& pt) {
        double s = 0.0;
        for (double v : pt.coords) s += std::pow(std::abs(v), p);
        return s;
    };
    m.gradient_fn = [p](const Point& pt) {
        Point g = pt;
        for (auto& v : g.coords)
            v = v == 0.0 ? 0.0 : p * std::pow(std::abs(v), p - 1.0) * (v > 0.0 ? 1.0 : -1.0);
        return g;
    };
    m.hessian_fn = [p, n](const Point& pt) {
        Point h(std::vector<double>(packed_size(n), 0.0));
        for (int i = 0; i < n; ++i) {
            const double v = std::abs(pt[static_cast<std::size_t>(i)]);
            h[packed_index(n, i, i)] =
                p == 2.0 ? 2.0 : p * (p - 1.0) * std::pow(v, p - 2.0);
        }
        return h;
    };
    m.claims.convex = true;
    m.claims.isotone = false; // |.|^p decreases left of the origin
    m.claims.isotone_differential = true;
    m.claims.two_box_monotone = true;
    if (p == 2.0) m.claims.strongly_convex_alpha = 2.0;
    return m;
}

FunctionModel composite_linear(const ScalarFunction& f, const std::vector<double>& w) {
    for (double v : w)
        if (v < 0.0) throw Error("composite_linear: direction vector must be nonnegative");
    const int n = static_cast<int>(w.size());
    FunctionModel m;
    m.name = "composite:" + f.name;
    m.domain_space = OrderedSpace::orthant(n);
    auto sf = f.f;
    auto sdf = f.df;
    auto sddf = f.ddf;
    auto dir = w;
    auto dot = [dir](const Point& p) {
        double s = 0.0;
        for (std::size_t i = 0; i < dir.size(); ++i) s += dir[i] * p[i];
        return s;
    };
    m.eval_fn = [sf, dot](const Point& p) { return sf(dot(p)); };
    m.gradient_fn = [sdf, dot, dir](const Point& p) {
        const double d = sdf(dot(p));
        Point g(std::vector<double>(dir.size()));
        for (std::size_t i = 0; i < dir.size(); ++i) g[i] = d * dir[i];
        return g;
    };
    m.hessian_fn = [sddf, dot, dir, n](const Point& p) {
        const double d = sddf(dot(p));
        Point h(std::vector<double>(packed_size(n)));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                h[packed_index(n, i, j)] =
                    d * dir[static_cast<std::size_t>(i)] * dir[static_cast<std::size_t>(j)];
        return h;
    };
    m.claims.convex = f.convex;
    m.claims.two_box_monotone = true;
    m.claims.isotone_differential = f.convex;
    return m;
}

FunctionModel linear_functional(const std::vector<double>& w) {
    const int n = static_cast<int>(w.size());
    FunctionModel m;
    m.name = "linear";
    m.domain_space = OrderedSpace::orthant(n);
    auto dir = w;
    m.eval_fn = [dir](const Point& p) {
        double s = 0.0;
        for (std::size_t i = 0; i < dir.size(); ++i) s += dir[i] * p[i];
        return s;
    };
    m.gradient_fn = [dir](const Point&) { return Point(dir); };
    m.hessian_fn = [n](const Point&) {
        return Point(std::vector<double>(packed_size(n), 0.0));
    };
    m.claims.convex = true;
    m.claims.isotone = std::all_of(w.begin(), w.end(), [](double v) { return v >= 0.0; });
    m.claims.isotone_differential = true;
    m.claims.antitone_differential = true;
    m.claims.two_box_monotone = true;
    return m;
}

FunctionModel scalar_model(const ScalarFunction& f) {
    FunctionModel m;
    m.name = "scalar:" + f.name;
    m.domain_space = OrderedSpace::real_line();
    m.domain_box = Box({f.lo}, {f.hi});
    auto sf = f.f;
    auto sdf = f.df;
    auto sddf = f.ddf;
    m.eval_fn = [sf](const Point& p) { return sf(p[0]); };
    m.gradient_fn = [sdf](const Point& p) { return Point({sdf(p[0])}); };
    m.hessian_fn = [sddf](const Point& p) { return Point({sddf(p[0])}); };
    m.claims.convex = f.convex;
    m.claims.isotone = f.nondecreasing;
    m.claims.isotone_differential = f.convex;
    return m;
}

FunctionModel zoo_make(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.empty()) throw Error("zoo: empty function name");
    const std::string& head = parts[0];

    auto arg = [&](std::size_t i) -> const std::string& {
        if (i >= parts.size()) throw Error("zoo: '" + spec + "' is missing arguments");
        return parts[i];
    };

    if (head == "neg_entropy") return negative_entropy(std::stoi(arg(1)));
    if (head == "minus_entropy") return minus_entropy(std::stoi(arg(1)));
    if (head == "lse") return log_sum_exp(std::stoi(arg(1)));
    if (head == "neg_geom_mean" || head == "neg_geometric_mean") return neg_geometric_mean();
    if (head == "bilinear_saddle") return bilinear_saddle();
    if (head == "fh_lower") return frechet_hoeffding(FrechetHoeffdingKind::Lower);
    if (head == "fh_upper") return frechet_hoeffding(FrechetHoeffdingKind::Upper);
    if (head == "power") return power_p_sum(std::stoi(arg(2)), std::stod(arg(1)));
    if (head == "composite") return composite_linear(scalar_by_name(arg(1)), parse_weights(arg(2)));
    if (head == "linear") return linear_functional(parse_weights(arg(1)));
    if (head == "trace") return trace_function(scalar_by_name(arg(1)), std::stoi(arg(2)));
    if (head == "scalar") return scalar_model(scalar_by_name(arg(1)));
    if (head == "perspective") {
        const std::string& kind = arg(2);
        PerspectiveInterval iv = kind == "neg" ? PerspectiveInterval::NegativeHalfLine
                                 : kind == "pos" ? PerspectiveInterval::PositiveHalfLine
                                                 : PerspectiveInterval::FullLine;
        return perspective(scalar_by_name(arg(1)), iv);
    }
    throw Error("zoo: unknown function '" + spec + "'");
}

Box zoo_default_box(const FunctionModel& f) {
    const int n = f.domain_space.is_loewner() ? 1 : f.domain_space.ambient_dim();
    const std::string& name = f.name;
    auto starts = [&](const char* prefix) { return name.rfind(prefix, 0) == 0; };
    if (starts("neg_entropy") || starts("minus_entropy")) return Box::cube(n, 0.02, 3.0);
    if (starts("neg_geom_mean")) return Box::cube(2, 0.05, 3.0);
    if (starts("fh_")) return Box::cube(2, 0.0, 1.0);
    if (starts("trace")) {
        const double lo = f.domain_box ? f.domain_box->lo[0] : -kInf;
        return Box::cube(1, std::isfinite(lo) ? 0.1 : -2.0, 3.0);
    }
    if (starts("perspective")) {
        const bool neg = name.size() >= 4 && name.compare(name.size() - 4, 4, ":neg") == 0;
        if (neg) return Box({-3.0, 0.1}, {-0.1, 3.0});
        return Box({0.1, 0.1}, {3.0, 3.0});
    }
    return Box::cube(n, -2.0, 2.0);
}

std::vector<std::string> zoo_catalog() {
    return {"neg_entropy:N", "minus_entropy:N",  "lse:N",
            "neg_geom_mean", "bilinear_saddle",  "fh_lower",
            "fh_upper",      "power:P:N",        "composite:SCALAR:w1,w2,...",
            "linear:w1,...", "trace:SCALAR:M",   "perspective:SCALAR:neg|pos|full",
            "scalar:NAME"};
}

} // namespace majorder
