#include "cornerlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cornerlab/error.hpp"

namespace cornerlab::quad {

namespace {

struct Segment {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;

    bool operator<(const Segment& other) const { return error < other.error; }
};

// Kronrod 15 and embedded Gauss 7 sums on one segment. The Gauss nodes are
// the even-indexed Kronrod nodes, so every point is evaluated once.
Segment evaluate(const std::function<double(double)>& f, double a, double b)
{
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double f0 = f(c);
    double kronrod = wk[0] * f0;
    double gauss = wg[0] * f0;
    double l1 = wk[0] * std::abs(f0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double lo = f(c - h * x[i]);
        const double hi = f(c + h * x[i]);
        kronrod += wk[i] * (lo + hi);
        l1 += wk[i] * (std::abs(lo) + std::abs(hi));
        if (i % 2 == 0) {
            gauss += wg[i / 2] * (lo + hi);
        }
    }
    Segment s{a, b, h * kronrod, std::abs(h * (kronrod - gauss)), std::abs(h) * l1};
    if (!std::isfinite(s.value) || !std::isfinite(s.error)) {
        throw Error(ErrorKind::numeric_failure, "quadrature produced a non-finite value");
    }
    // Rounding floor of the Kronrod sum.
    s.error = std::max(s.error, 50.0 * std::numeric_limits<double>::epsilon() * s.l1);
    return s;
}

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                     const std::vector<double>& breakpoints, std::size_t max_segments)
{
    if (a == b) {
        return {};
    }
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<double> cuts{a};
    for (double p : breakpoints) {
        if (p > a && p < b) {
            cuts.push_back(p);
        }
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Segment> queue;
    QuadResult out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Segment s = evaluate(f, cuts[i], cuts[i + 1]);
        out.value += s.value;
        out.error += s.error;
        out.l1 += s.l1;
        queue.push(s);
    }
    const auto target = [&] { return std::max(abs_tol, rel_tol * out.l1); };
    while (out.error > target() && queue.size() < max_segments) {
        const Segment worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            break; // no representable split left
        }
        queue.pop();
        const Segment left = evaluate(f, worst.a, mid);
        const Segment right = evaluate(f, mid, worst.b);
        out.value += left.value + right.value - worst.value;
        out.error += left.error + right.error - worst.error;
        out.l1 += left.l1 + right.l1 - worst.l1;
        queue.push(left);
        queue.push(right);
    }
    // Re-sum to drop the drift of the running updates.
    out = {};
    while (!queue.empty()) {
        out.value += queue.top().value;
        out.error += queue.top().error;
        out.l1 += queue.top().l1;
        queue.pop();
    }
    if (out.error > target()) {
        throw Error(ErrorKind::numeric_failure, "adaptive quadrature did not reach the requested tolerance");
    }
    out.value *= sign;
    return out;
}

} // namespace cornerlab::quad
