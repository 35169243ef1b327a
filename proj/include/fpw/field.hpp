#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "fpw/errors.hpp"

namespace fpw {

using cplx = std::complex<double>;

struct Pixel {
    int y = 0;
    int x = 0;
    bool operator==(const Pixel&) const = default;
};

// Dense real-valued image, row-major.
struct RealGrid {
    int height = 0;
    int width = 0;
    std::vector<double> v;

    RealGrid() = default;
    RealGrid(int h, int w, double fill = 0.0) : height(h), width(w), v(size_t(h) * w, fill) {}
    double& at(int y, int x) { return v[size_t(y) * width + x]; }
    double at(int y, int x) const { return v[size_t(y) * width + x]; }
    size_t size() const { return v.size(); }
};

struct BinaryMask {
    int height = 0;
    int width = 0;
    std::vector<uint8_t> v;

    BinaryMask() = default;
    BinaryMask(int h, int w, uint8_t fill = 0) : height(h), width(w), v(size_t(h) * w, fill) {}
    uint8_t& at(int y, int x) { return v[size_t(y) * width + x]; }
    uint8_t at(int y, int x) const { return v[size_t(y) * width + x]; }
};

// 2-D complex field holding an object, a spectrum, or a low-resolution wave.
// The centered convention lives here once: the origin of both image and
// Fourier space is at index (height/2, width/2), 0-based.
struct ComplexField {
    int height = 0;
    int width = 0;
    std::vector<cplx> data;

    ComplexField() = default;
    ComplexField(int h, int w, cplx fill = {}) : height(h), width(w), data(size_t(h) * w, fill) {}

    cplx& at(int y, int x) { return data[size_t(y) * width + x]; }
    cplx at(int y, int x) const { return data[size_t(y) * width + x]; }
    size_t size() const { return data.size(); }
    Pixel center() const { return {height / 2, width / 2}; }

    bool is_finite() const;
    double energy() const; // sum |.|^2
};

enum class FftSign { Forward, Inverse };

// Unitary centered 2-D DFT (1/sqrt(HW) each direction, zero frequency at the
// array center). forward(inverse(f)) == f and energy is preserved.
ComplexField dft2_centered(const ComplexField& f, FftSign direction);

// size x size window centered at `center` (window origin convention matches
// ComplexField::center). Throws GeometryError when out of bounds.
ComplexField crop_centered(const ComplexField& f, Pixel center, int size);

// Returns a copy of dst whose window entries with mask=1 are replaced by src.
ComplexField embed_replace(const ComplexField& dst, const ComplexField& src, Pixel center,
                           const BinaryMask& mask);

// Adjoint of crop_centered under the real inner product: adds src (where
// mask=1) into the window of dst, in place.
void embed_add(ComplexField& dst, const ComplexField& src, Pixel center, const BinaryMask& mask);

// In-place 1-D FFT used by dft2_centered; non-power-of-two sizes go through
// Bluestein's algorithm.
void fft1d(std::vector<cplx>& a, FftSign direction);

} // namespace fpw
