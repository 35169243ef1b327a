#include "fpw/forward.hpp"

#include <cmath>

namespace fpw {

ComplexField forward_field_from_spectrum(const ComplexField& spectrum, const AcquisitionGeometry& geom,
                                         int j) {
    if (j < 0 || j >= geom.count())
        throw_error(ErrorKind::GeometryError, "forward_field: illumination index out of range");
    ComplexField window = crop_centered(spectrum, geom.centers[j], geom.low_res);
    const BinaryMask pupil = pupil_mask(geom.low_res, geom.pupil_radius);
    for (int y = 0; y < window.height; ++y)
        for (int x = 0; x < window.width; ++x)
            if (!pupil.at(y, x)) window.at(y, x) = 0.0;
    return dft2_centered(window, FftSign::Inverse);
}

ComplexField forward_field(const ComplexField& object, const AcquisitionGeometry& geom, int j) {
    if (object.height != geom.high_res || object.width != geom.high_res)
        throw_error(ErrorKind::GeometryError, "forward_field: object size does not match geometry");
    return forward_field_from_spectrum(dft2_centered(object, FftSign::Forward), geom, j);
}

MeasurementStack forward_measure(const ComplexField& object, const AcquisitionGeometry& geom) {
    if (object.height != geom.high_res || object.width != geom.high_res)
        throw_error(ErrorKind::GeometryError, "forward_measure: object size does not match geometry");
    const ComplexField spectrum = dft2_centered(object, FftSign::Forward);

    MeasurementStack stack;
    stack.geometry = geom;
    stack.images.reserve(geom.count());
    for (int j = 0; j < geom.count(); ++j) {
        const ComplexField psi = forward_field_from_spectrum(spectrum, geom, j);
        RealGrid img(geom.low_res, geom.low_res);
        for (size_t i = 0; i < psi.size(); ++i) img.v[i] = std::norm(psi.data[i]);
        for (double p : img.v) stack.scale = std::max(stack.scale, p);
        stack.images.push_back(std::move(img));
    }
    return stack;
}

ComplexField object_from_amplitude_phase(const RealGrid& amplitude, const RealGrid& phase) {
    if (amplitude.height != phase.height || amplitude.width != phase.width)
        throw_error(ErrorKind::ShapeError, "amplitude and phase dimensions differ");
    ComplexField obj(amplitude.height, amplitude.width);
    for (size_t i = 0; i < obj.size(); ++i)
        obj.data[i] = std::polar(amplitude.v[i], phase.v[i]);
    return obj;
}

} // namespace fpw
