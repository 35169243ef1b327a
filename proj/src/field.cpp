#include "fpw/field.hpp"

#include <cmath>

namespace fpw {

bool ComplexField::is_finite() const {
    for (const cplx& z : data)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double ComplexField::energy() const {
    double e = 0.0;
    for (const cplx& z : data) e += std::norm(z);
    return e;
}

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 with a directly evaluated twiddle table (best accuracy,
// sizes here are tiny).
void fft_pow2(cplx* a, int n, bool inverse) {
    if (n == 1) return;
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<cplx> tw(n / 2);
    const double sgn = inverse ? 1.0 : -1.0;
    for (int k = 0; k < n / 2; ++k) tw[k] = std::polar(1.0, sgn * 2.0 * M_PI * k / n);
    for (int len = 2; len <= n; len <<= 1) {
        const int step = n / len;
        for (int i = 0; i < n; i += len) {
            for (int k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * tw[size_t(k) * step];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

// Bluestein: re-expresses an arbitrary-size DFT as a power-of-two circular
// convolution with a chirp.
void fft_bluestein(std::vector<cplx>& a, bool inverse) {
    const int n = static_cast<int>(a.size());
    int m = 1;
    while (m < 2 * n - 1) m <<= 1;

    const double sgn = inverse ? 1.0 : -1.0;
    std::vector<cplx> chirp(n);
    for (int k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument small
        long long k2 = (1LL * k * k) % (2LL * n);
        chirp[k] = std::polar(1.0, sgn * M_PI * double(k2) / n);
    }

    std::vector<cplx> fa(m), fb(m);
    for (int k = 0; k < n; ++k) fa[k] = a[k] * chirp[k];
    fb[0] = std::conj(chirp[0]);
    for (int k = 1; k < n; ++k) fb[k] = fb[m - k] = std::conj(chirp[k]);

    fft_pow2(fa.data(), m, false);
    fft_pow2(fb.data(), m, false);
    for (int k = 0; k < m; ++k) fa[k] *= fb[k];
    fft_pow2(fa.data(), m, true);
    for (int k = 0; k < n; ++k) a[k] = fa[k] * chirp[k] / double(m);
}

} // namespace

void fft1d(std::vector<cplx>& a, FftSign direction) {
    const bool inverse = direction == FftSign::Inverse;
    if (is_pow2(static_cast<int>(a.size())))
        fft_pow2(a.data(), static_cast<int>(a.size()), inverse);
    else
        fft_bluestein(a, inverse);
}

namespace {

// Cyclic shift by `shift` (out[(i+shift) mod n] = in[i]) along both axes.
ComplexField roll2(const ComplexField& f, int sy, int sx) {
    ComplexField out(f.height, f.width);
    for (int y = 0; y < f.height; ++y) {
        int yy = (y + sy) % f.height;
        for (int x = 0; x < f.width; ++x) {
            int xx = (x + sx) % f.width;
            out.at(yy, xx) = f.at(y, x);
        }
    }
    return out;
}

} // namespace

ComplexField dft2_centered(const ComplexField& f, FftSign direction) {
    if (f.height < 1 || f.width < 1)
        throw_error(ErrorKind::InvalidField, "empty field");
    if (!f.is_finite())
        throw_error(ErrorKind::InvalidField, "non-finite entries in dft2_centered input");

    const int h = f.height, w = f.width;
    // ifftshift: move the centered origin to index 0
    ComplexField g = roll2(f, (h - h / 2) % h, (w - w / 2) % w);

    std::vector<cplx> buf(std::max(h, w));
    for (int y = 0; y < h; ++y) {
        buf.assign(g.data.begin() + size_t(y) * w, g.data.begin() + size_t(y + 1) * w);
        buf.resize(w);
        fft1d(buf, direction);
        std::copy(buf.begin(), buf.end(), g.data.begin() + size_t(y) * w);
    }
    for (int x = 0; x < w; ++x) {
        buf.resize(h);
        for (int y = 0; y < h; ++y) buf[y] = g.at(y, x);
        fft1d(buf, direction);
        for (int y = 0; y < h; ++y) g.at(y, x) = buf[y];
    }

    const double scale = 1.0 / std::sqrt(double(h) * double(w));
    for (cplx& z : g.data) z *= scale;

    // fftshift: origin back to the array center
    return roll2(g, h / 2, w / 2);
}

ComplexField crop_centered(const ComplexField& f, Pixel center, int size) {
    const int sy = center.y - size / 2;
    const int sx = center.x - size / 2;
    if (size < 1 || sy < 0 || sx < 0 || sy + size > f.height || sx + size > f.width)
        throw_error(ErrorKind::GeometryError, "crop window out of bounds");
    ComplexField out(size, size);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) out.at(y, x) = f.at(sy + y, sx + x);
    return out;
}

ComplexField embed_replace(const ComplexField& dst, const ComplexField& src, Pixel center,
                           const BinaryMask& mask) {
    if (mask.height != src.height || mask.width != src.width)
        throw_error(ErrorKind::GeometryError, "mask dimensions do not match src");
    const int sy = center.y - src.height / 2;
    const int sx = center.x - src.width / 2;
    if (sy < 0 || sx < 0 || sy + src.height > dst.height || sx + src.width > dst.width)
        throw_error(ErrorKind::GeometryError, "embed window out of bounds");
    ComplexField out = dst;
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x)
            if (mask.at(y, x)) out.at(sy + y, sx + x) = src.at(y, x);
    return out;
}

void embed_add(ComplexField& dst, const ComplexField& src, Pixel center, const BinaryMask& mask) {
    if (mask.height != src.height || mask.width != src.width)
        throw_error(ErrorKind::GeometryError, "mask dimensions do not match src");
    const int sy = center.y - src.height / 2;
    const int sx = center.x - src.width / 2;
    if (sy < 0 || sx < 0 || sy + src.height > dst.height || sx + src.width > dst.width)
        throw_error(ErrorKind::GeometryError, "embed window out of bounds");
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x)
            if (mask.at(y, x)) dst.at(sy + y, sx + x) += src.at(y, x);
}

} // namespace fpw
