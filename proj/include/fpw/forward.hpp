#pragma once
#include "fpw/geometry.hpp"

namespace fpw {

// Stack of low-resolution raw intensity images in acquisition order.
struct MeasurementStack {
    AcquisitionGeometry geometry;
    std::vector<RealGrid> images; // each m x m, >= 0
    double scale = 0.0;           // max intensity over all images

    int count() const { return static_cast<int>(images.size()); }
};

// Low-resolution complex field psi_j = IDFT(pupil . crop_j(DFT(object))).
ComplexField forward_field(const ComplexField& object, const AcquisitionGeometry& geom, int j);

// Same, reusing an already computed centered spectrum of the object.
ComplexField forward_field_from_spectrum(const ComplexField& spectrum, const AcquisitionGeometry& geom,
                                         int j);

// Intensity stack |psi_j|^2 for all j.
MeasurementStack forward_measure(const ComplexField& object, const AcquisitionGeometry& geom);

// amplitude . exp(i*phase), both N x N.
ComplexField object_from_amplitude_phase(const RealGrid& amplitude, const RealGrid& phase);

} // namespace fpw
