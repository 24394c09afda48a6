#pragma once

#include <optional>
#include <string>
#include <vector>

#include "majorder/space.hpp"

namespace majorder {

enum class Relation { HLP, wHLP, Ldown, wLdown, Rup, wRup };

bool relation_is_weak(Relation r);
std::string relation_name(Relation r);
Relation relation_from_name(const std::string& name);

/// Discrete probability measure sum lambda_k delta_{x_k}. Weights must lie
/// in (0,1] and sum to 1 within 1e-12; support points share the space.
struct DiscreteMeasure {
    OrderedSpace space;
    std::vector<double> weights;
    std::vector<Point> support;

    DiscreteMeasure() = default;
    DiscreteMeasure(OrderedSpace s, std::vector<double> w, std::vector<Point> pts);

    std::size_t size() const { return weights.size(); }
    Point barycenter() const;
    void validate() const;
};

/// Outcome of a majorization check. prefix_slacks[n-1] is the signed slack
/// of the n-th prefix condition: the minimum cone coordinate for orthants,
/// the minimum eigenvalue for Loewner. equality_defect is the norm of the
/// barycenter difference (meaningful for the non-weak relations).
struct MajorizationVerdict {
    bool holds = false;
    Relation relation = Relation::HLP;
    std::vector<double> prefix_slacks;
    std::optional<int> failing_index;
    double equality_defect = 0.0;
};

/// Classical scalar Hardy-Littlewood-Polya check: sorts both vectors
/// descending and compares prefix sums; the non-weak form also requires
/// equal totals. Ties are resolved by stable sort (equal values cannot
/// change prefix sums).
MajorizationVerdict check_hlp(const std::vector<double>& x, const std::vector<double>& y,
                              bool weak, const TolerancePolicy& tol);

/// L-down relation: mu's support must be a decreasing chain (else
/// ChainViolationError), weight arrays must match (else
/// WeightMismatchError); then prefix dominance, plus equal barycenters for
/// the non-weak form.
MajorizationVerdict check_L_down(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                 bool weak, const TolerancePolicy& tol);

/// R-up relation: the chain condition moves to nu's support, which must be
/// increasing; prefix conditions are unchanged.
MajorizationVerdict check_R_up(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               bool weak, const TolerancePolicy& tol);

/// Dispatch on the four measure relations.
MajorizationVerdict check_relation(Relation r, const DiscreteMeasure& mu,
                                   const DiscreteMeasure& nu, const TolerancePolicy& tol);

struct DoublyStochasticMatrix {
    int n = 0;
    std::vector<double> entries; // row-major

    static DoublyStochasticMatrix identity(int n);
    static DoublyStochasticMatrix uniform(int n);
    static DoublyStochasticMatrix from_entries(int n, std::vector<double> e);

    double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
    void validate() const;
};

/// x_i = sum_j P_ij y_j, convex combinations in the space.
std::vector<Point> apply_doubly_stochastic(const OrderedSpace& space,
                                           const DoublyStochasticMatrix& P,
                                           const std::vector<Point>& points);

/// Applies P to a decreasing chain and checks that the image measure is
/// L-down majorized by the original (uniform weights). The image must come
/// out decreasing for the relation to be testable; if it does not, the
/// ChainViolationError propagates and the case counts as not applicable.
MajorizationVerdict verify_ostrowski(const OrderedSpace& space,
                                     const DoublyStochasticMatrix& P,
                                     const std::vector<Point>& nu_points,
                                     const TolerancePolicy& tol);

} // namespace majorder
