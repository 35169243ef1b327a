#pragma once
#include <vector>

#include "fpw/field.hpp"

namespace fpw {

// Sub-aperture layout in the high-resolution spectrum. Centers form a G x G
// grid symmetric about DC (G odd, so a bright-field image always exists),
// rounded to integer pixels and clamped so each m x m window fits.
struct AcquisitionGeometry {
    int high_res = 0;          // N
    int low_res = 0;           // m
    double pupil_radius = 0.0; // r = m/2
    double overlap = 0.0;      // configured area-intersection ratio
    double spacing = 0.0;      // ideal (real-valued) adjacent-center distance
    int grid_side = 0;         // G
    std::vector<Pixel> centers;       // raster order, length G*G
    std::vector<uint8_t> clamped;     // 1 where clamping moved the center
    int dc_index = 0;                 // index of the DC-centered sub-aperture
    double max_rounding_error = 0.0;  // before clamping, <= 0.5 px
    int clamped_count = 0;

    int count() const { return static_cast<int>(centers.size()); }
};

// Area-intersection ratio of two equal circles of radius r at distance d.
double overlap_area_ratio(double spacing, double radius);

// Inverse of overlap_area_ratio by bisection on [0, 2r].
double solve_spacing(double overlap, double radius);

AcquisitionGeometry build_geometry(int high_res, int low_res, double overlap);

// 1 where distance from the window center is < radius.
BinaryMask pupil_mask(int size, double radius);

// Union of all sub-aperture pupil supports embedded in the N x N spectrum.
BinaryMask coverage_mask(const AcquisitionGeometry& geom);

} // namespace fpw
