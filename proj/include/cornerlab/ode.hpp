#pragma once

// Adaptive Dormand-Prince 5(4) integrator with first-crossing event location.
//
// The fifth-order solution is propagated (local extrapolation) and the
// embedded fourth-order solution drives step-size control. Every accepted
// step is kept, so the solution can be evaluated anywhere by re-stepping from
// the preceding node; this keeps interior evaluations at the accuracy of a
// regular step instead of relying on a lower-order interpolant.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "cornerlab/error.hpp"

namespace cornerlab::ode {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
using Rhs = std::function<State<N>(double, const State<N>&)>;

template <std::size_t N>
struct Options {
    State<N> atol{};
    double rtol = 1e-10;
    double initial_step = 0.0; // 0 selects a step automatically
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 20'000'000;
};

template <std::size_t N>
Options<N> uniform_options(double atol, double rtol)
{
    Options<N> opt;
    opt.atol.fill(atol);
    opt.rtol = rtol;
    return opt;
}

// Scalar event function; the event fires at the first sign change from
// negative to non-negative.
template <std::size_t N>
struct Event {
    std::function<double(double, const State<N>&)> g;
    bool terminal = true;
    double value_tol = 1e-10; // target |g| at the refined point
    double time_tol = 1e-12;  // bracket width in t
};

template <std::size_t N>
struct EventHit {
    double t = 0.0;
    State<N> y{};
};

namespace detail {

struct Tableau {
    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    // b(5th) - b(4th)
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
};

template <std::size_t N>
bool all_finite(const State<N>& y)
{
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

template <std::size_t N>
struct StepOutput {
    State<N> y{};
    State<N> f{}; // derivative at the new point (first stage of the next step)
    State<N> err{};
};

// One Dormand-Prince step of size h from (t, y) with f = rhs(t, y).
template <std::size_t N>
StepOutput<N> dp_step(const Rhs<N>& rhs, double t, const State<N>& y, const State<N>& f, double h)
{
    using T = Tableau;
    State<N> tmp{};
    auto stage = [&](auto&& combine) {
        for (std::size_t i = 0; i < N; ++i) {
            tmp[i] = y[i] + h * combine(i);
        }
        return tmp;
    };
    const State<N>& k1 = f;
    const State<N> k2 = rhs(t + T::c2 * h, stage([&](std::size_t i) { return T::a21 * k1[i]; }));
    const State<N> k3 =
        rhs(t + T::c3 * h, stage([&](std::size_t i) { return T::a31 * k1[i] + T::a32 * k2[i]; }));
    const State<N> k4 = rhs(t + T::c4 * h, stage([&](std::size_t i) {
                                return T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i];
                            }));
    const State<N> k5 = rhs(t + T::c5 * h, stage([&](std::size_t i) {
                                return T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] + T::a54 * k4[i];
                            }));
    const State<N> k6 = rhs(t + h, stage([&](std::size_t i) {
                                return T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] + T::a64 * k4[i] +
                                       T::a65 * k5[i];
                            }));
    StepOutput<N> out;
    out.y = stage([&](std::size_t i) {
        return T::b1 * k1[i] + T::b3 * k3[i] + T::b4 * k4[i] + T::b5 * k5[i] + T::b6 * k6[i];
    });
    out.f = rhs(t + h, out.y);
    for (std::size_t i = 0; i < N; ++i) {
        out.err[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] + T::e6 * k6[i] +
                          T::e7 * out.f[i]);
    }
    return out;
}

template <std::size_t N>
double error_norm(const StepOutput<N>& s, const State<N>& y, const Options<N>& opt)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = opt.atol[i] + opt.rtol * std::max(std::abs(y[i]), std::abs(s.y[i]));
        const double r = s.err[i] / sc;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(N));
}

// Hairer-Norsett-Wanner starting step heuristic.
template <std::size_t N>
double initial_step(const Rhs<N>& rhs, double t, const State<N>& y, const State<N>& f, const Options<N>& opt,
                    double span)
{
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = opt.atol[i] + opt.rtol * std::abs(y[i]);
        d0 += (y[i] / sc) * (y[i] / sc);
        d1 += (f[i] / sc) * (f[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    State<N> y1{};
    for (std::size_t i = 0; i < N; ++i) {
        y1[i] = y[i] + h0 * f[i];
    }
    const State<N> f1 = rhs(t + h0, y1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = opt.atol[i] + opt.rtol * std::abs(y[i]);
        d2 += ((f1[i] - f[i]) / sc) * ((f1[i] - f[i]) / sc);
    }
    d2 = std::sqrt(d2 / N) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    return std::min({100.0 * h0, h1, span});
}

} // namespace detail

// Accepted-step nodes of an integration, evaluable at any t in [t_front, t_back].
template <std::size_t N>
class Solution {
public:
    Solution() = default;
    explicit Solution(Rhs<N> rhs) : rhs_(std::move(rhs)) {}

    const std::vector<double>& times() const noexcept { return t_; }
    const std::vector<State<N>>& states() const noexcept { return y_; }
    const std::vector<State<N>>& derivatives() const noexcept { return f_; }
    std::size_t size() const noexcept { return t_.size(); }
    bool empty() const noexcept { return t_.empty(); }
    double t_front() const { return t_.front(); }
    double t_back() const { return t_.back(); }

    void push(double t, const State<N>& y, const State<N>& f)
    {
        t_.push_back(t);
        y_.push_back(y);
        f_.push_back(f);
    }

    // State at t, clamped to the covered interval.
    State<N> at(double t) const
    {
        if (t_.empty()) {
            throw Error(ErrorKind::numeric_failure, "evaluating an empty ODE solution");
        }
        if (t <= t_.front()) {
            return y_.front();
        }
        if (t >= t_.back()) {
            return y_.back();
        }
        const auto it = std::upper_bound(t_.begin(), t_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
        if (t == t_[i]) {
            return y_[i];
        }
        return detail::dp_step<N>(rhs_, t_[i], y_[i], f_[i], t - t_[i]).y;
    }

private:
    Rhs<N> rhs_;
    std::vector<double> t_;
    std::vector<State<N>> y_;
    std::vector<State<N>> f_;
};

template <std::size_t N>
struct Result {
    Solution<N> solution;
    std::optional<EventHit<N>> event;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

// Integrates y' = rhs(t, y) from t0 to t_end (> t0). Non-finite stage values
// count as a rejected step. Throws integration-failure on step-size underflow
// or when max_steps is exceeded.
template <std::size_t N>
Result<N> integrate(const Rhs<N>& rhs, double t0, const State<N>& y0, double t_end, const Options<N>& opt,
                    const Event<N>* event = nullptr)
{
    Result<N> res{Solution<N>(rhs), std::nullopt, 0, 0};
    State<N> f0 = rhs(t0, y0);
    if (!detail::all_finite(y0) || !detail::all_finite(f0)) {
        throw Error(ErrorKind::integration_failure, "non-finite initial state or derivative");
    }
    res.solution.push(t0, y0, f0);
    if (!(t_end > t0)) {
        return res;
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double safety = 0.9;
    constexpr double min_factor = 0.2;
    constexpr double max_factor = 10.0;

    double t = t0;
    State<N> y = y0;
    State<N> f = f0;
    double h = opt.initial_step > 0.0 ? opt.initial_step : detail::initial_step<N>(rhs, t, y, f, opt, t_end - t0);
    h = std::min(h, opt.max_step);
    bool last_rejected = false;
    double g_prev = event ? event->g(t, y) : 0.0;

    while (t < t_end) {
        if (res.accepted + res.rejected >= opt.max_steps) {
            throw Error(ErrorKind::integration_failure, "maximum number of steps exceeded");
        }
        if (h <= 10.0 * eps * std::abs(t) || h < std::numeric_limits<double>::min()) {
            throw Error(ErrorKind::integration_failure, "step size underflow");
        }
        bool final_step = false;
        if (t + h >= t_end) {
            h = t_end - t;
            final_step = true;
        }
        const detail::StepOutput<N> step = detail::dp_step<N>(rhs, t, y, f, h);
        const bool finite = detail::all_finite(step.y) && detail::all_finite(step.f) && detail::all_finite(step.err);
        const double err = finite ? detail::error_norm<N>(step, y, opt) : std::numeric_limits<double>::infinity();

        if (!(err <= 1.0)) {
            ++res.rejected;
            const double fac = std::isfinite(err) ? std::max(min_factor, safety * std::pow(err, -0.2)) : min_factor;
            h *= std::min(1.0, fac);
            last_rejected = true;
            continue;
        }

        const double t_new = final_step ? t_end : t + h;
        ++res.accepted;

        if (event) {
            const double g_new = event->g(t_new, step.y);
            if (g_prev < 0.0 && g_new >= 0.0 && !res.event) {
                // Bisection on re-stepped states inside [t, t_new].
                double lo = t, hi = t_new;
                EventHit<N> best{t_new, step.y};
                double best_g = std::abs(g_new);
                for (int iter = 0; iter < 200; ++iter) {
                    const double mid = 0.5 * (lo + hi);
                    if (!(mid > lo && mid < hi)) {
                        break;
                    }
                    const State<N> ym = detail::dp_step<N>(rhs, t, y, f, mid - t).y;
                    const double gm = event->g(mid, ym);
                    if (std::abs(gm) < best_g || (std::abs(gm) == best_g && mid < best.t)) {
                        best = {mid, ym};
                        best_g = std::abs(gm);
                    }
                    if (gm < 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if (best_g <= event->value_tol && hi - lo <= event->time_tol) {
                        break;
                    }
                }
                res.event = best;
                if (event->terminal) {
                    res.solution.push(best.t, best.y, rhs(best.t, best.y));
                    return res;
                }
            }
            g_prev = g_new;
        }

        t = t_new;
        y = step.y;
        f = step.f;
        res.solution.push(t, y, f);

        double fac = err == 0.0 ? max_factor : safety * std::pow(err, -0.2);
        fac = std::clamp(fac, min_factor, max_factor);
        if (last_rejected) {
            fac = std::min(fac, 1.0);
        }
        last_rejected = false;
        h = std::min(h * fac, opt.max_step);
    }
    return res;
}

} // namespace cornerlab::ode
