#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cornerlab::quad {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0; // integral of |f|, the scale of the relative tolerance
};

// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b], split at the
// optional interior breakpoints; the segment with the largest error estimate
// is bisected first. Succeeds when the total error estimate is below
// max(abs_tol, rel_tol * int |f|); throws numeric-failure otherwise.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                     const std::vector<double>& breakpoints = {}, std::size_t max_segments = 4000);

} // namespace cornerlab::quad
