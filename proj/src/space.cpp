#include "majorder/space.hpp"

#include <algorithm>
#include <cmath>

namespace majorder {

bool Point::all_finite() const {
    return std::all_of(coords.begin(), coords.end(),
                       [](double v) { return std::isfinite(v); });
}

static void require_same_dim(const Point& a, const Point& b, const char* what) {
    if (a.dim() != b.dim())
        throw DimensionError(std::string(what) + ": dimension mismatch (" +
                             std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

Point operator+(const Point& a, const Point& b) {
    require_same_dim(a, b, "point addition");
    Point r = a;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] += b[i];
    return r;
}

Point operator-(const Point& a, const Point& b) {
    require_same_dim(a, b, "point subtraction");
    Point r = a;
    for (std::size_t i = 0; i < r.dim(); ++i) r[i] -= b[i];
    return r;
}

Point operator*(double s, const Point& p) {
    Point r = p;
    for (auto& v : r.coords) v *= s;
    return r;
}

bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }

OrderedSpace OrderedSpace::real_line() { return {SpaceKind::RealLine, 1}; }

OrderedSpace OrderedSpace::orthant(int n) {
    if (n < 1) throw DimensionError("orthant dimension must be >= 1");
    return {SpaceKind::Orthant, n};
}

OrderedSpace OrderedSpace::orthant_interior(int n) {
    if (n < 1) throw DimensionError("orthant dimension must be >= 1");
    return {SpaceKind::OrthantInterior, n};
}

OrderedSpace OrderedSpace::loewner(int m) {
    if (m < 1) throw DimensionError("Loewner dimension must be >= 1");
    return {SpaceKind::Loewner, m};
}

int OrderedSpace::ambient_dim() const {
    return is_loewner() ? static_cast<int>(packed_size(n)) : n;
}

double OrderedSpace::norm(const Point& p) const {
    if (static_cast<int>(p.dim()) != ambient_dim())
        throw DimensionError("norm: point does not belong to this space");
    if (!is_loewner()) {
        double s = 0.0;
        for (double v : p.coords) s += v * v;
        return std::sqrt(s);
    }
    // Frobenius: off-diagonal entries appear twice in the full matrix.
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = p[packed_index(n, i, j)];
            s += (i == j) ? v * v : 2.0 * v * v;
        }
    return std::sqrt(s);
}

double OrderedSpace::inner(const Point& a, const Point& b) const {
    require_same_dim(a, b, "inner product");
    if (static_cast<int>(a.dim()) != ambient_dim())
        throw DimensionError("inner: point does not belong to this space");
    if (!is_loewner()) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
        return s;
    }
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const std::size_t k = packed_index(n, i, j);
            s += (i == j) ? a[k] * b[k] : 2.0 * a[k] * b[k];
        }
    return s;
}

Point OrderedSpace::zero() const {
    return Point(std::vector<double>(static_cast<std::size_t>(ambient_dim()), 0.0));
}

std::string OrderedSpace::describe() const {
    switch (kind) {
        case SpaceKind::RealLine: return "real_line";
        case SpaceKind::Orthant: return "orthant(" + std::to_string(n) + ")";
        case SpaceKind::OrthantInterior: return "orthant_interior(" + std::to_string(n) + ")";
        case SpaceKind::Loewner: return "loewner(" + std::to_string(n) + ")";
    }
    return "?";
}

bool operator==(const OrderedSpace& a, const OrderedSpace& b) {
    return a.kind == b.kind && a.n == b.n;
}

// --- cone and order -------------------------------------------------------

double cone_slack(const OrderedSpace& space, const Point& p) {
    if (static_cast<int>(p.dim()) != space.ambient_dim())
        throw DimensionError("cone_slack: point does not belong to this space");
    if (!p.all_finite()) throw NumericError("cone_slack: non-finite coordinates");
    if (space.is_loewner()) return min_eigenvalue(p, space.n);
    double slack = p[0];
    for (double v : p.coords) slack = std::min(slack, v);
    return slack;
}

bool cone_contains(const OrderedSpace& space, const Point& p,
                   const TolerancePolicy& tol) {
    return cone_slack(space, p) >= -tol.threshold(space.norm(p));
}

bool leq(const OrderedSpace& space, const Point& a, const Point& b,
         const TolerancePolicy& tol) {
    return cone_contains(space, b - a, tol);
}

int chain_violation_index(const OrderedSpace& space, const std::vector<Point>& points,
                          ChainDirection direction, const TolerancePolicy& tol) {
    if (points.empty()) throw EmptyChainError("monotone chain: empty list");
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const bool ok = direction == ChainDirection::Decreasing
                            ? leq(space, points[k + 1], points[k], tol)
                            : leq(space, points[k], points[k + 1], tol);
        if (!ok) return static_cast<int>(k);
    }
    return -1;
}

bool is_monotone_chain(const OrderedSpace& space, const std::vector<Point>& points,
                       ChainDirection direction, const TolerancePolicy& tol) {
    return chain_violation_index(space, points, direction, tol) < 0;
}

// --- packed symmetric matrices --------------------------------------------

std::size_t packed_size(int m) {
    return static_cast<std::size_t>(m) * (m + 1) / 2;
}

std::size_t packed_index(int m, int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * m - static_cast<std::size_t>(i) * (i - 1) / 2 +
           (j - i);
}

Point pack_symmetric(const std::vector<double>& full, int m) {
    if (full.size() != static_cast<std::size_t>(m) * m)
        throw DimensionError("pack_symmetric: expected m*m entries");
    Point p(std::vector<double>(packed_size(m)));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j)
            p[packed_index(m, i, j)] = full[static_cast<std::size_t>(i) * m + j];
    return p;
}

std::vector<double> unpack_symmetric(const Point& p, int m) {
    if (p.dim() != packed_size(m))
        throw DimensionError("unpack_symmetric: packed length does not match dimension");
    std::vector<double> full(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            full[static_cast<std::size_t>(i) * m + j] = p[packed_index(m, i, j)];
    return full;
}

Point diag_matrix(const std::vector<double>& diagonal) {
    const int m = static_cast<int>(diagonal.size());
    Point p(std::vector<double>(packed_size(m), 0.0));
    for (int i = 0; i < m; ++i) p[packed_index(m, i, i)] = diagonal[i];
    return p;
}

std::vector<double> diagonal_of(const Point& p, int m) {
    std::vector<double> d(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) d[static_cast<std::size_t>(i)] = p[packed_index(m, i, i)];
    return d;
}

static double off_diagonal_mass(const std::vector<double>& a, int m) {
    double s = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double v = a[static_cast<std::size_t>(i) * m + j];
            s += 2.0 * v * v;
        }
    return std::sqrt(s);
}

EigenDecomposition jacobi_eigen(const Point& p, int m) {
    if (!p.all_finite()) throw NumericError("jacobi_eigen: non-finite entries");
    std::vector<double> a = unpack_symmetric(p, m);
    std::vector<double> q(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) q[static_cast<std::size_t>(i) * m + i] = 1.0;

    const double norm = OrderedSpace::loewner(m).norm(p);
    const double target = 1e-12 * norm;
    auto at = [&](std::vector<double>& mat, int i, int j) -> double& {
        return mat[static_cast<std::size_t>(i) * m + j];
    };

    if (norm > 0.0) {
        for (int sweep = 0; sweep < 64 && off_diagonal_mass(a, m) >= target; ++sweep) {
            for (int i = 0; i < m; ++i) {
                for (int j = i + 1; j < m; ++j) {
                    const double apq = at(a, i, j);
                    if (apq == 0.0) continue;
                    const double tau = (at(a, j, j) - at(a, i, i)) / (2.0 * apq);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    for (int k = 0; k < m; ++k) {
                        const double aki = at(a, k, i), akj = at(a, k, j);
                        at(a, k, i) = c * aki - s * akj;
                        at(a, k, j) = s * aki + c * akj;
                    }
                    for (int k = 0; k < m; ++k) {
                        const double aik = at(a, i, k), ajk = at(a, j, k);
                        at(a, i, k) = c * aik - s * ajk;
                        at(a, j, k) = s * aik + c * ajk;
                    }
                    // symmetrize the rotated pair against rounding drift
                    at(a, i, j) = at(a, j, i) = 0.5 * (at(a, i, j) + at(a, j, i));
                    for (int k = 0; k < m; ++k) {
                        const double qki = at(q, k, i), qkj = at(q, k, j);
                        at(q, k, i) = c * qki - s * qkj;
                        at(q, k, j) = s * qki + c * qkj;
                    }
                }
            }
        }
    }

    EigenDecomposition out;
    out.values.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out.values[static_cast<std::size_t>(i)] = at(a, i, i);
    out.vectors = std::move(q);
    return out;
}

double min_eigenvalue(const Point& p, int m) {
    const auto eig = jacobi_eigen(p, m);
    return *std::min_element(eig.values.begin(), eig.values.end());
}

double max_eigenvalue(const Point& p, int m) {
    const auto eig = jacobi_eigen(p, m);
    return *std::max_element(eig.values.begin(), eig.values.end());
}

Point sym_apply(const std::function<double(double)>& f_scalar, const Point& p, int m) {
    const auto eig = jacobi_eigen(p, m);
    std::vector<double> fl(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double v = f_scalar(eig.values[static_cast<std::size_t>(k)]);
        if (!std::isfinite(v))
            throw DomainError("sym_apply: scalar function undefined at eigenvalue " +
                              std::to_string(eig.values[static_cast<std::size_t>(k)]));
        fl[static_cast<std::size_t>(k)] = v;
    }
    // B = Q f(Lambda) Q^T
    Point out(std::vector<double>(packed_size(m), 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double s = 0.0;
            for (int k = 0; k < m; ++k)
                s += eig.vectors[static_cast<std::size_t>(i) * m + k] * fl[static_cast<std::size_t>(k)] *
                     eig.vectors[static_cast<std::size_t>(j) * m + k];
            out[packed_index(m, i, j)] = s;
        }
    return out;
}

double spectral_sum(const std::function<double(double)>& f_scalar, const Point& p, int m) {
    const auto eig = jacobi_eigen(p, m);
    double s = 0.0;
    for (double lambda : eig.values) {
        const double v = f_scalar(lambda);
        if (!std::isfinite(v))
            throw DomainError("spectral_sum: scalar function undefined at eigenvalue " +
                              std::to_string(lambda));
        s += v;
    }
    return s;
}

} // namespace majorder
