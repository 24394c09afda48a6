// Test-only oracles, kept independent of the library code paths they check.
#pragma once

#include <algorithm>
#include <vector>

namespace oracles {

// Scalar majorization via the hinge family: x is dominated iff
// sum f(x_k) <= sum f(y_k) for every f in
//   { t -> max(t - c, 0) : c in the merged support } plus {t, -t}.
// Checking the breakpoints suffices because the difference of hinge sums is
// piecewise linear in c. nondecreasing_only drops -t (the Tomic/Weyl family).
inline bool hinge_family_dominates(const std::vector<double>& x,
                                   const std::vector<double>& y,
                                   bool nondecreasing_only = false) {
    double sx = 0.0, sy = 0.0;
    for (double v : x) sx += v;
    for (double v : y) sy += v;
    if (sx > sy) return false;                       // f(t) = t
    if (!nondecreasing_only && -sx > -sy) return false; // f(t) = -t

    std::vector<double> cs = x;
    cs.insert(cs.end(), y.begin(), y.end());
    std::sort(cs.begin(), cs.end());
    for (double c : cs) {
        double hx = 0.0, hy = 0.0;
        for (double v : x) hx += std::max(v - c, 0.0);
        for (double v : y) hy += std::max(v - c, 0.0);
        if (hx > hy) return false;
    }
    return true;
}

} // namespace oracles
