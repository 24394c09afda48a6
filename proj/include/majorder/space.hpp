#pragma once

#include <functional>
#include <string>
#include <vector>

#include "majorder/errors.hpp"

namespace majorder {

enum class SpaceKind { RealLine, Orthant, OrthantInterior, Loewner };
enum class ChainDirection { Decreasing, Increasing };

/// A point of an ordered space: a dense coordinate vector. For Loewner(M)
/// the coordinates are the packed upper triangle of a symmetric matrix,
/// row-major: (0,0),(0,1),...,(0,M-1),(1,1),...
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}

    std::size_t dim() const { return coords.size(); }
    double& operator[](std::size_t i) { return coords[i]; }
    double operator[](std::size_t i) const { return coords[i]; }

    bool all_finite() const;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& p);
bool operator==(const Point& a, const Point& b);

/// Finite-dimensional ordered space: R^N with an orthant cone, or Sym(M)
/// with the positive-semidefinite cone (Loewner order). OrthantInterior is
/// the same order as Orthant; the kind only marks that domains of interest
/// exclude the boundary.
struct OrderedSpace {
    SpaceKind kind = SpaceKind::RealLine;
    int n = 1; // N for orthant kinds, M for Loewner

    static OrderedSpace real_line();
    static OrderedSpace orthant(int n);
    static OrderedSpace orthant_interior(int n);
    static OrderedSpace loewner(int m);

    int ambient_dim() const;
    bool is_loewner() const { return kind == SpaceKind::Loewner; }

    /// Euclidean norm for orthant kinds, Frobenius for Loewner.
    double norm(const Point& p) const;

    /// Dual pairing: dot product, or the Frobenius inner product
    /// trace(AB) for packed symmetric points.
    double inner(const Point& a, const Point& b) const;

    Point zero() const;
    std::string describe() const;
};

bool operator==(const OrderedSpace& a, const OrderedSpace& b);

struct TolerancePolicy {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;

    static TolerancePolicy exact() { return {0.0, 0.0}; }
    static TolerancePolicy absolute(double a) { return {a, 0.0}; }

    double threshold(double scale) const { return abs_tol + rel_tol * scale; }
    TolerancePolicy scaled(double factor) const {
        return {abs_tol * factor, rel_tol * factor};
    }
};

// --- cone and order -------------------------------------------------------

/// True iff p lies in the space's cone, up to -(abs_tol + rel_tol*|p|).
bool cone_contains(const OrderedSpace& space, const Point& p,
                   const TolerancePolicy& tol);

/// Signed cone slack: the minimum coordinate (orthant) or minimum
/// eigenvalue (Loewner). Nonnegative iff p is in the cone exactly.
double cone_slack(const OrderedSpace& space, const Point& p);

/// a <= b in the cone order.
bool leq(const OrderedSpace& space, const Point& a, const Point& b,
         const TolerancePolicy& tol);

/// Checks x_1 >= ... >= x_K (Decreasing) or the dual. Single points are
/// vacuously monotone. Throws EmptyChainError on an empty list.
bool is_monotone_chain(const OrderedSpace& space, const std::vector<Point>& points,
                       ChainDirection direction, const TolerancePolicy& tol);

/// Index of the first consecutive pair violating monotonicity, or -1.
int chain_violation_index(const OrderedSpace& space, const std::vector<Point>& points,
                          ChainDirection direction, const TolerancePolicy& tol);

// --- packed symmetric matrices --------------------------------------------

std::size_t packed_size(int m);
std::size_t packed_index(int m, int i, int j);
Point pack_symmetric(const std::vector<double>& full, int m);
std::vector<double> unpack_symmetric(const Point& p, int m);
Point diag_matrix(const std::vector<double>& diagonal);
std::vector<double> diagonal_of(const Point& p, int m);

struct EigenDecomposition {
    std::vector<double> values;  // unsorted, as converged
    std::vector<double> vectors; // column k (row-major m x m) pairs with values[k]
};

/// Cyclic Jacobi rotations, iterated until the off-diagonal Frobenius mass
/// drops below 1e-12 * |m|_F. Adequate for the desk scales used here (M <= 16).
EigenDecomposition jacobi_eigen(const Point& p, int m);

/// Smallest eigenvalue of a packed symmetric point.
double min_eigenvalue(const Point& p, int m);
double max_eigenvalue(const Point& p, int m);

/// Spectral calculus: Q f(Lambda) Q^T repacked. Throws DomainError when
/// f_scalar is undefined (non-finite) at an eigenvalue.
Point sym_apply(const std::function<double(double)>& f_scalar, const Point& p, int m);

/// Sum of f over the spectrum; trace(f(A)) without reconstructing.
double spectral_sum(const std::function<double(double)>& f_scalar, const Point& p, int m);

} // namespace majorder
