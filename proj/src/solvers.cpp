#include "fpw/solvers.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "fpw/image_io.hpp"
#include "fpw/stack_io.hpp"

namespace fs = std::filesystem;

namespace fpw {

namespace {

double wrap_phase(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    if (a >= 2.0 * M_PI) a = 0.0;
    return a;
}

double stack_energy(const MeasurementStack& stack) {
    double e = 0.0;
    for (const RealGrid& img : stack.images)
        for (double p : img.v) e += p * p;
    return e;
}

} // namespace

ComplexField Reconstruction::to_field() const { return object_from_amplitude_phase(amplitude, phase); }

Reconstruction Reconstruction::from_field(const ComplexField& f, std::string method) {
    Reconstruction r;
    r.method = std::move(method);
    r.amplitude = RealGrid(f.height, f.width);
    r.phase = RealGrid(f.height, f.width);
    for (int y = 0; y < f.height; ++y) {
        for (int x = 0; x < f.width; ++x) {
            r.amplitude.at(y, x) = std::abs(f.at(y, x));
            r.phase.at(y, x) = wrap_phase(std::arg(f.at(y, x)));
        }
    }
    return r;
}

ComplexField init_upsampled_dc(const MeasurementStack& stack, const AcquisitionGeometry& geom) {
    const RealGrid& dc = stack.images[geom.dc_index];
    RealGrid root(dc.height, dc.width);
    for (size_t i = 0; i < dc.v.size(); ++i) root.v[i] = std::sqrt(std::max(0.0, dc.v[i]));
    RealGrid up = resize_bilinear(root, geom.high_res, geom.high_res);
    const double scale = double(geom.low_res) / double(geom.high_res);
    ComplexField z(geom.high_res, geom.high_res);
    for (size_t i = 0; i < z.size(); ++i) z.data[i] = up.v[i] * scale;
    return z;
}

namespace {

double residual_from_spectrum(const ComplexField& spectrum, const MeasurementStack& stack,
                              const AcquisitionGeometry& geom, double energy) {
    double num = 0.0;
    for (int j = 0; j < geom.count(); ++j) {
        const ComplexField psi = forward_field_from_spectrum(spectrum, geom, j);
        const RealGrid& I = stack.images[j];
        for (size_t i = 0; i < psi.size(); ++i) {
            const double d = std::norm(psi.data[i]) - I.v[i];
            num += d * d;
        }
    }
    return std::sqrt(num) / std::sqrt(std::max(energy, 1e-300));
}

} // namespace

double data_residual(const ComplexField& estimate, const MeasurementStack& stack) {
    return residual_from_spectrum(dft2_centered(estimate, FftSign::Forward), stack, stack.geometry,
                                  stack_energy(stack));
}

Reconstruction ap_reconstruct(const MeasurementStack& stack, const AcquisitionGeometry& geom,
                              const SolverOptions& opts) {
    if (stack.count() != geom.count() || stack.images.empty() ||
        stack.images[0].height != geom.low_res)
        throw_error(ErrorKind::GeometryError, "ap_reconstruct: stack/geometry mismatch");

    const auto t_start = std::chrono::steady_clock::now();
    const BinaryMask pupil = pupil_mask(geom.low_res, geom.pupil_radius);
    const double energy = stack_energy(stack);

    ComplexField spectrum = dft2_centered(init_upsampled_dc(stack, geom), FftSign::Forward);
    ComplexField best = spectrum;
    double best_res = residual_from_spectrum(spectrum, stack, geom, energy);

    Reconstruction rec;
    rec.method = "ap";
    if (opts.record_trace) rec.residual_trace.push_back(best_res);

    for (int sweep = 1; sweep <= opts.max_iterations; ++sweep) {
        for (int j = 0; j < geom.count(); ++j) {
            ComplexField window = crop_centered(spectrum, geom.centers[j], geom.low_res);
            for (int y = 0; y < window.height; ++y)
                for (int x = 0; x < window.width; ++x)
                    if (!pupil.at(y, x)) window.at(y, x) = 0.0;
            ComplexField psi = dft2_centered(window, FftSign::Inverse);
            const RealGrid& I = stack.images[j];
            // image-space magnitude projection
            for (size_t i = 0; i < psi.size(); ++i)
                psi.data[i] *= std::sqrt(std::max(0.0, I.v[i])) / (std::abs(psi.data[i]) + opts.epsilon);
            const ComplexField updated = dft2_centered(psi, FftSign::Forward);
            spectrum = embed_replace(spectrum, updated, geom.centers[j], pupil);
        }
        const double res = residual_from_spectrum(spectrum, stack, geom, energy);
        if (opts.record_trace) rec.residual_trace.push_back(res);
        rec.iterations_run = sweep;
        if (res < best_res) {
            best_res = res;
            best = spectrum;
        }
        if (res < opts.tol) break;
    }

    const ComplexField field = dft2_centered(best, FftSign::Inverse);
    Reconstruction out = Reconstruction::from_field(field, "ap");
    out.residual_trace = std::move(rec.residual_trace);
    out.iterations_run = rec.iterations_run;
    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

std::pair<double, ComplexField> wf_loss_grad(const ComplexField& z, const MeasurementStack& stack,
                                             const AcquisitionGeometry& geom) {
    const ComplexField spectrum = dft2_centered(z, FftSign::Forward);
    const BinaryMask pupil = pupil_mask(geom.low_res, geom.pupil_radius);
    ComplexField grad_spec(geom.high_res, geom.high_res);
    double loss = 0.0;

    for (int j = 0; j < geom.count(); ++j) {
        ComplexField window = crop_centered(spectrum, geom.centers[j], geom.low_res);
        for (int y = 0; y < window.height; ++y)
            for (int x = 0; x < window.width; ++x)
                if (!pupil.at(y, x)) window.at(y, x) = 0.0;
        ComplexField psi = dft2_centered(window, FftSign::Inverse);
        const RealGrid& I = stack.images[j];

        ComplexField gpsi(geom.low_res, geom.low_res);
        for (size_t i = 0; i < psi.size(); ++i) {
            const double r = std::norm(psi.data[i]) - I.v[i];
            loss += r * r;
            gpsi.data[i] = 4.0 * r * psi.data[i];
        }
        ComplexField gwin = dft2_centered(gpsi, FftSign::Forward);
        for (int y = 0; y < gwin.height; ++y)
            for (int x = 0; x < gwin.width; ++x)
                if (!pupil.at(y, x)) gwin.at(y, x) = 0.0;
        embed_add(grad_spec, gwin, geom.centers[j], pupil);
    }
    return {loss, dft2_centered(grad_spec, FftSign::Inverse)};
}

Reconstruction wf_reconstruct(const MeasurementStack& stack, const AcquisitionGeometry& geom,
                              const SolverOptions& opts) {
    if (stack.count() != geom.count())
        throw_error(ErrorKind::GeometryError, "wf_reconstruct: stack/geometry mismatch");

    const auto t_start = std::chrono::steady_clock::now();
    const double energy = stack_energy(stack);
    const double res_den = std::sqrt(std::max(energy, 1e-300));

    ComplexField z = init_upsampled_dc(stack, geom);
    const double norm0 = std::max(z.energy(), 1e-300);
    // The gradient is a sum over all L*m^2 scalar measurements; the classic
    // mu/t0 step constants assume a per-measurement mean, hence this factor.
    const double mean_norm = 4.0 * double(geom.count()) * double(geom.low_res) * double(geom.low_res);

    ComplexField best = z;
    double best_res = -1.0;
    Reconstruction rec;
    rec.method = "wf";

    double initial_res = -1.0;
    for (int t = 0; t <= opts.max_iterations; ++t) {
        auto [loss, grad] = wf_loss_grad(z, stack, geom);
        const double res = std::sqrt(loss) / res_den;
        if (!std::isfinite(res)) {
            DivergenceError err("wf_reconstruct: non-finite residual");
            err.trace = rec.residual_trace;
            throw err;
        }
        if (opts.record_trace) rec.residual_trace.push_back(res);
        if (t == 0) initial_res = res;
        if (best_res < 0.0 || res < best_res) {
            best_res = res;
            best = z;
        }
        if (res > 1e6 * std::max(initial_res, 1e-300)) {
            DivergenceError err("wf_reconstruct: residual exploded");
            err.trace = rec.residual_trace;
            throw err;
        }
        if (t == opts.max_iterations || res < opts.tol) {
            rec.iterations_run = t;
            break;
        }
        const double mu = opts.wf_mu_max * std::min(1.0, double(t + 1) / opts.wf_t0);
        const double step = mu / (norm0 * mean_norm);
        for (size_t i = 0; i < z.size(); ++i) z.data[i] -= step * grad.data[i];
    }

    Reconstruction out = Reconstruction::from_field(best, "wf");
    out.residual_trace = std::move(rec.residual_trace);
    out.iterations_run = rec.iterations_run;
    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

ComplexField bandlimit_to_coverage(const ComplexField& object, const AcquisitionGeometry& geom) {
    ComplexField spectrum = dft2_centered(object, FftSign::Forward);
    const BinaryMask cover = coverage_mask(geom);
    for (int y = 0; y < spectrum.height; ++y)
        for (int x = 0; x < spectrum.width; ++x)
            if (!cover.at(y, x)) spectrum.at(y, x) = 0.0;
    return dft2_centered(spectrum, FftSign::Inverse);
}

ComplexField align_global_phase_field(const ComplexField& recon, const ComplexField& reference) {
    cplx corr = 0.0;
    for (size_t i = 0; i < recon.size(); ++i) corr += recon.data[i] * std::conj(reference.data[i]);
    const cplx rot = std::abs(corr) > 0.0 ? std::polar(1.0, -std::arg(corr)) : cplx(1.0, 0.0);
    ComplexField out = recon;
    for (auto& v : out.data) v *= rot;
    return out;
}

double relative_error_aligned(const ComplexField& recon, const ComplexField& reference) {
    const ComplexField aligned = align_global_phase_field(recon, reference);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < aligned.size(); ++i) {
        num += std::norm(aligned.data[i] - reference.data[i]);
        den += std::norm(reference.data[i]);
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

void write_reconstruction(const std::string& dir, const Reconstruction& rec,
                          const ordered_json& options_echo) {
    fs::create_directories(dir);
    write_png_gray16((fs::path(dir) / "amplitude.png").string(), rec.amplitude);
    RealGrid phase_scaled = rec.phase;
    for (double& v : phase_scaled.v) v /= 2.0 * M_PI;
    write_png_gray16((fs::path(dir) / "phase.png").string(), phase_scaled);

    ordered_json diag;
    diag["method"] = rec.method;
    diag["iterations_run"] = rec.iterations_run;
    diag["wall_time_s"] = rec.wall_time_s;
    diag["options"] = options_echo;
    diag["residual_trace"] = rec.residual_trace;
    std::ofstream f(fs::path(dir) / "diagnostics.json", std::ios::binary);
    f << diag.dump(2) << "\n";
}

Reconstruction read_reconstruction(const std::string& dir) {
    Reconstruction rec;
    rec.amplitude = read_png_gray((fs::path(dir) / "amplitude.png").string()).pixels;
    rec.phase = read_png_gray((fs::path(dir) / "phase.png").string()).pixels;
    for (double& v : rec.phase.v) {
        v *= 2.0 * M_PI;
        if (v >= 2.0 * M_PI) v = 0.0;
    }
    const fs::path dp = fs::path(dir) / "diagnostics.json";
    if (fs::exists(dp)) {
        std::ifstream f(dp, std::ios::binary);
        ordered_json diag;
        f >> diag;
        rec.method = diag.value("method", "");
        rec.iterations_run = diag.value("iterations_run", 0);
        rec.wall_time_s = diag.value("wall_time_s", 0.0);
        if (diag.contains("residual_trace"))
            rec.residual_trace = diag["residual_trace"].get<std::vector<double>>();
    }
    return rec;
}

} // namespace fpw
