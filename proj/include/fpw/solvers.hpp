#pragma once
#include <string>
#include <vector>

#include "fpw/forward.hpp"

namespace fpw {

struct SolverOptions {
    int max_iterations = 200;   // AP sweeps or WF iterations
    double tol = 1e-6;          // relative data residual threshold
    double epsilon = 1e-12;     // magnitude guard in the AP projection
    double wf_t0 = 330.0;       // WF step warmup
    double wf_mu_max = 0.4;     // WF step ceiling
    bool record_trace = true;
};

struct Reconstruction {
    RealGrid amplitude;               // >= 0
    RealGrid phase;                   // [0,2pi)
    std::vector<double> residual_trace;
    int iterations_run = 0;
    double wall_time_s = 0.0;
    std::string method;

    ComplexField to_field() const;
    static Reconstruction from_field(const ComplexField& f, std::string method);
};

// sqrt of the bright-field image, upsampled to N x N and scaled by m/N;
// phase identically zero.
ComplexField init_upsampled_dc(const MeasurementStack& stack, const AcquisitionGeometry& geom);

// Relative data residual sqrt(sum_j ||I_pred_j - I_j||^2) / sqrt(sum_j ||I_j||^2).
double data_residual(const ComplexField& estimate, const MeasurementStack& stack);

Reconstruction ap_reconstruct(const MeasurementStack& stack, const AcquisitionGeometry& geom,
                              const SolverOptions& opts);

// Amplitude-squared least squares f(z) = sum_j || |A_j z|^2 - I_j ||^2 and its
// gradient under the real inner product Re<g, dz>.
std::pair<double, ComplexField> wf_loss_grad(const ComplexField& z, const MeasurementStack& stack,
                                             const AcquisitionGeometry& geom);

Reconstruction wf_reconstruct(const MeasurementStack& stack, const AcquisitionGeometry& geom,
                              const SolverOptions& opts);

// Zeroes spectral content outside the union of pupil supports. Exact-recovery
// tests use this: content outside measured support is unrecoverable.
ComplexField bandlimit_to_coverage(const ComplexField& object, const AcquisitionGeometry& geom);

// Multiplies recon by exp(-i*arg(sum recon*conj(ref))) so a global phase
// offset against the reference cancels.
ComplexField align_global_phase_field(const ComplexField& recon, const ComplexField& reference);

double relative_error_aligned(const ComplexField& recon, const ComplexField& reference);

// Serialization per the reconstruction interface: amplitude.png, phase.png
// (16-bit) and diagnostics.json.
void write_reconstruction(const std::string& dir, const Reconstruction& rec,
                          const ordered_json& options_echo);
Reconstruction read_reconstruction(const std::string& dir);

} // namespace fpw
