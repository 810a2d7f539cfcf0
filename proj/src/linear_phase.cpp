#include "cornerlab/linear_phase.hpp"

#include <cmath>

#include "cornerlab/error.hpp"

namespace cornerlab {

namespace {

void require_stiffness(double k)
{
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw Error(ErrorKind::invalid_input, "stiffness k must be positive and finite");
    }
}

} // namespace

double DampingParams::sqrt_delta() const noexcept { return std::sqrt(delta); }

DampingParams characteristic_roots(double alpha)
{
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
        throw Error(ErrorKind::not_over_damped, "alpha must exceed 1");
    }
    DampingParams p;
    p.alpha = alpha;
    // (alpha - 1)(alpha + 1) keeps precision for alpha close to 1.
    p.delta = (alpha - 1.0) * (alpha + 1.0);
    const double sd = std::sqrt(p.delta);
    p.xi2 = -alpha - sd;
    // xi1 = 1 / xi2 avoids the cancellation in -alpha + sqrt(delta).
    p.xi1 = 1.0 / p.xi2;
    return p;
}

void validate(const InitialData& init)
{
    if (!(init.s0 < 0.0) || !std::isfinite(init.s0)) {
        throw Error(ErrorKind::invalid_input, "s0 must be negative (first impact away from the vertex)");
    }
    if (!(init.dr0 > 0.0) || !std::isfinite(init.dr0)) {
        throw Error(ErrorKind::invalid_input, "dr0 must be positive (outgoing through face 1)");
    }
    if (!(init.ds0 > 0.0) || !std::isfinite(init.ds0)) {
        throw Error(ErrorKind::invalid_input, "ds0 must be positive (moving towards the corner)");
    }
}

double first_crossing_time(const InitialData& init)
{
    if (!(init.ds0 > 0.0)) {
        throw Error(ErrorKind::no_crossing, "ds0 must be positive for the path to reach x2 = 0");
    }
    if (!(init.s0 < 0.0)) {
        throw Error(ErrorKind::invalid_input, "s0 must be negative");
    }
    return -init.s0 / init.ds0;
}

KernelValues kernels_K2_H2(const DampingParams& damping, double tau)
{
    KernelValues out;
    if (tau < 0.0) {
        return out;
    }
    const double two_sd = 2.0 * damping.sqrt_delta();
    const double e1 = std::exp(damping.xi1 * tau);
    const double e2 = std::exp(damping.xi2 * tau);
    // e1 - e2 = e2 * expm1((xi1 - xi2) tau) is free of cancellation for small
    // tau; for large tau e2 underflows first and the plain difference is exact.
    const double spread = (damping.xi1 - damping.xi2) * tau;
    const double diff = spread < 1.0 ? e2 * std::expm1(spread) : e1 - e2;
    out.K2 = diff / two_sd;
    out.dK2 = (damping.xi1 * e1 - damping.xi2 * e2) / two_sd;
    out.H2 = (-damping.xi2 * e1 + damping.xi1 * e2) / two_sd;
    // xi1 xi2 = 1, hence H2' = -K2.
    out.dH2 = -out.K2;
    return out;
}

R1PhaseState r1_phase_state(const InitialData& init, const DampingParams& damping, double k, double t)
{
    require_stiffness(k);
    const double t0 = first_crossing_time(init);
    if (!(t >= 0.0) || t > t0 * (1.0 + 1e-12)) {
        throw Error(ErrorKind::out_of_phase, "time lies outside the R1 phase [0, t0]");
    }
    const double sqrt_k = std::sqrt(k);
    const KernelValues kv = kernels_K2_H2(damping, t * sqrt_k);
    R1PhaseState st;
    st.r = init.dr0 * kv.K2 / sqrt_k;
    st.dr = init.dr0 * kv.dK2;
    st.s = init.s0 + t * init.ds0;
    st.ds = init.ds0;
    return st;
}

FaceState face_phase_state(double y1_0, double dy1_0, double dy2_0, const DampingParams& damping, double k,
                           double t)
{
    require_stiffness(k);
    if (!(t >= 0.0)) {
        throw Error(ErrorKind::out_of_phase, "face phase time must be non-negative");
    }
    const double sqrt_k = std::sqrt(k);
    const KernelValues kv = kernels_K2_H2(damping, t * sqrt_k);
    FaceState st;
    st.y1 = dy1_0 * kv.K2 / sqrt_k + y1_0 * kv.H2;
    st.dy1 = dy1_0 * kv.dK2 + y1_0 * sqrt_k * kv.dH2;
    st.y2 = t * dy2_0;
    st.dy2 = dy2_0;
    return st;
}

} // namespace cornerlab
