#pragma once

#include "majorder/function_model.hpp"

namespace majorder {

/// Discrete mollification recipe: convolve with the compactly supported
/// bump phi(y) ~ prod exp(-1/(1-(y_i/h)^2)) on [-h,h]^N via a tensor
/// midpoint quadrature (q nodes per axis, q odd so the center node exists;
/// weights normalized to sum 1), after shifting by epsilon*|.|^2.
struct MollifierSpec {
    double bandwidth = 0.05;
    int quad_nodes_per_axis = 9;
    double epsilon = 0.0;
    Box box; // compact box K; the convolution reads f on K expanded by h

    void validate(const FunctionModel& f) const;
};

/// g(x) = sum_j w_j (f(x - y_j) + eps |x - y_j|^2). Being a convex
/// combination of shifts, the discrete sum preserves two-box increments and
/// the epsilon strong-convexity shift exactly (up to rounding); derivatives
/// are finite-difference. The output's domain is K; evaluation needs f on
/// the h-expanded box.
FunctionModel mollify(const FunctionModel& f, const MollifierSpec& spec);

/// max |f - g| over the tensor grid on K.
double uniform_error(const FunctionModel& f, const FunctionModel& g, const Box& k,
                     int grid_per_axis);

/// f + eps |.|^2, the exact shift the mollified output approximates.
FunctionModel quadratic_shift(const FunctionModel& f, double epsilon);

} // namespace majorder
