#pragma once

namespace cornerlab {

// Characteristic data of the over-damped oscillator y'' + 2 alpha y' + y = 0.
struct DampingParams {
    double alpha = 0.0;
    double delta = 0.0; // alpha^2 - 1
    double xi1 = 0.0;   // -alpha + sqrt(delta), the slow root
    double xi2 = 0.0;   // -alpha - sqrt(delta), the fast root

    double sqrt_delta() const noexcept;
};

// Throws not-over-damped unless alpha > 1.
DampingParams characteristic_roots(double alpha);

// Data at the first impact time t = 0: u(0) = (0, s0), u'(0) = (dr0, ds0).
struct InitialData {
    double s0 = -1.0;
    double dr0 = 1.0;
    double ds0 = 1.0;
};

// Throws invalid-input unless s0 < 0, dr0 > 0 and ds0 > 0.
void validate(const InitialData& init);

// Time at which x2 reaches 0; throws no-crossing when ds0 <= 0.
double first_crossing_time(const InitialData& init);

struct R1PhaseState {
    double r = 0.0;
    double dr = 0.0;
    double s = 0.0;
    double ds = 0.0;
};

// Closed-form motion in R1 for 0 <= t <= t0.
R1PhaseState r1_phase_state(const InitialData& init, const DampingParams& damping, double k, double t);

// Fundamental solutions of the scaled oscillator with (K2, K2')(0) = (0, 1)
// and (H2, H2')(0) = (1, 0). Zero for tau < 0.
struct KernelValues {
    double K2 = 0.0;
    double dK2 = 0.0;
    double H2 = 0.0;
    double dH2 = 0.0;
};

KernelValues kernels_K2_H2(const DampingParams& damping, double tau);

struct FaceState {
    double y1 = 0.0;  // distance beyond the face
    double dy1 = 0.0;
    double y2 = 0.0;  // tangential coordinate along the face
    double dy2 = 0.0;
};

// Spring-damper motion beyond a face, t measured from entry (t >= 0),
// tangential coordinate starting at 0. Valid while y1 >= 0.
FaceState face_phase_state(double y1_0, double dy1_0, double dy2_0, const DampingParams& damping, double k,
                           double t);

} // namespace cornerlab
