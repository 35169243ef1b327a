#include "fpw/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace fpw {

double overlap_area_ratio(double spacing, double radius) {
    if (spacing < 0.0 || radius <= 0.0)
        throw_error(ErrorKind::GeometryError, "overlap_area_ratio: spacing >= 0 and radius > 0 required");
    if (spacing >= 2.0 * radius) return 0.0;
    const double r = radius, d = spacing;
    const double area = 2.0 * r * r * std::acos(d / (2.0 * r)) - (d / 2.0) * std::sqrt(4.0 * r * r - d * d);
    return area / (M_PI * r * r);
}

double solve_spacing(double overlap, double radius) {
    if (!(overlap >= 0.0 && overlap < 1.0))
        throw_error(ErrorKind::GeometryError, "solve_spacing: overlap must be in [0,1)");
    if (radius <= 0.0)
        throw_error(ErrorKind::GeometryError, "solve_spacing: radius must be positive");
    if (overlap == 0.0) return 2.0 * radius;
    // ratio is strictly decreasing in d; fixed iteration count keeps this
    // bit-deterministic
    double lo = 0.0, hi = 2.0 * radius;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (overlap_area_ratio(mid, radius) > overlap)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

AcquisitionGeometry build_geometry(int high_res, int low_res, double overlap) {
    if (low_res > high_res)
        throw_error(ErrorKind::GeometryError, "build_geometry: low_res must not exceed high_res");
    if (low_res < 2 || low_res % 2 != 0)
        throw_error(ErrorKind::GeometryError, "build_geometry: low_res must be even and >= 2");
    if (!(overlap >= 0.0 && overlap < 1.0))
        throw_error(ErrorKind::GeometryError, "build_geometry: overlap must be in [0,1)");

    AcquisitionGeometry g;
    g.high_res = high_res;
    g.low_res = low_res;
    g.pupil_radius = low_res / 2.0;
    g.overlap = overlap;
    g.spacing = solve_spacing(overlap, g.pupil_radius);

    // Smallest odd G whose ideal grid spans the full center range N-m; the
    // outermost ring is then clamped onto the window boundary.
    const double span = double(high_res - low_res);
    int side = 1;
    if (span > 0.0) {
        side = static_cast<int>(std::ceil(span / g.spacing)) + 1;
        if (side % 2 == 0) side += 1;
    }
    g.grid_side = side;

    const int half = (side - 1) / 2;
    const int c0y = high_res / 2, c0x = high_res / 2;
    const int lo = low_res / 2, hi = high_res - low_res / 2;
    for (int gy = -half; gy <= half; ++gy) {
        for (int gx = -half; gx <= half; ++gx) {
            const double iy = c0y + gy * g.spacing;
            const double ix = c0x + gx * g.spacing;
            const int ry = static_cast<int>(std::llround(iy));
            const int rx = static_cast<int>(std::llround(ix));
            const int cy = std::clamp(ry, lo, hi);
            const int cx = std::clamp(rx, lo, hi);
            g.max_rounding_error = std::max({g.max_rounding_error, std::abs(ry - iy), std::abs(rx - ix)});
            const bool was_clamped = (cy != ry) || (cx != rx);
            if (was_clamped) ++g.clamped_count;
            g.clamped.push_back(was_clamped ? 1 : 0);
            g.centers.push_back({cy, cx});
        }
    }
    g.dc_index = half * side + half;
    return g;
}

BinaryMask pupil_mask(int size, double radius) {
    if (radius > size / 2.0)
        throw_error(ErrorKind::GeometryError, "pupil_mask: radius exceeds half window size");
    BinaryMask mask(size, size);
    const int c = size / 2;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double dy = y - c, dx = x - c;
            mask.at(y, x) = (std::sqrt(dy * dy + dx * dx) < radius) ? 1 : 0;
        }
    }
    return mask;
}

BinaryMask coverage_mask(const AcquisitionGeometry& geom) {
    BinaryMask out(geom.high_res, geom.high_res);
    const BinaryMask pupil = pupil_mask(geom.low_res, geom.pupil_radius);
    const int m = geom.low_res;
    for (const Pixel& c : geom.centers) {
        const int sy = c.y - m / 2, sx = c.x - m / 2;
        for (int y = 0; y < m; ++y)
            for (int x = 0; x < m; ++x)
                if (pupil.at(y, x)) out.at(sy + y, sx + x) = 1;
    }
    return out;
}

} // namespace fpw
