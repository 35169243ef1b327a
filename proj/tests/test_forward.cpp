#include "doctest.h"

#include <cmath>

#include "fpw/forward.hpp"
#include "fpw/rng.hpp"
#include "test_helpers.hpp"

using namespace fpw;
using namespace fpw::testing;

TEST_SUITE_BEGIN("forward");

TEST_CASE("overlap_area_ratio: coincident, tangent, and d=r cases") {
    CHECK(overlap_area_ratio(0.0, 10.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(overlap_area_ratio(20.0, 10.0) == 0.0);
    // closed form at d=r: (2*acos(1/2) - sqrt(3)/2) / pi
    const double expect = (2.0 * std::acos(0.5) - std::sqrt(3.0) / 2.0) / M_PI;
    CHECK(expect == doctest::Approx(0.391002).epsilon(1e-5));
    CHECK(overlap_area_ratio(10.0, 10.0) == doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(overlap_area_ratio(-1.0, 10.0), Error);
}

TEST_CASE("solve_spacing round-trips through overlap_area_ratio") {
    CHECK(solve_spacing(0.0, 8.0) == 16.0);
    const double at_r = (2.0 * std::acos(0.5) - std::sqrt(3.0) / 2.0) / M_PI;
    CHECK(solve_spacing(at_r, 8.0) == doctest::Approx(8.0).epsilon(1e-6));
    for (double ov : {0.15, 0.40, 0.65}) {
        const double d = solve_spacing(ov, 8.0);
        CHECK(std::abs(overlap_area_ratio(d, 8.0) - ov) < 1e-9);
    }
    CHECK_THROWS_AS(solve_spacing(1.0, 8.0), Error);
    CHECK_THROWS_AS(solve_spacing(-0.1, 8.0), Error);
}

TEST_CASE("solve_spacing is monotone: larger overlap, smaller spacing") {
    double prev = 1e9;
    for (double ov : {0.0, 0.15, 0.40, 0.65, 0.9}) {
        const double d = solve_spacing(ov, 8.0);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("build_geometry: zero overlap grid at N=64 m=16") {
    AcquisitionGeometry g = build_geometry(64, 16, 0.0);
    CHECK(g.spacing == 16.0);
    CHECK(g.grid_side == 5);
    CHECK(g.count() == 25);
    CHECK(g.centers[g.dc_index] == Pixel{32, 32});
    // every window fits
    for (const Pixel& c : g.centers) {
        CHECK(c.y >= 8);
        CHECK(c.y <= 56);
        CHECK(c.x >= 8);
        CHECK(c.x <= 56);
    }
}

TEST_CASE("build_geometry: full-aperture degenerate case") {
    AcquisitionGeometry g = build_geometry(64, 64, 0.0);
    CHECK(g.count() == 1);
    CHECK(g.centers[0] == Pixel{32, 32});
    CHECK(g.dc_index == 0);
}

TEST_CASE("build_geometry: 65% overlap satisfies invariants post-hoc") {
    AcquisitionGeometry g = build_geometry(64, 16, 0.65);
    CHECK(g.grid_side % 2 == 1);
    CHECK(g.count() == g.grid_side * g.grid_side);
    CHECK(std::abs(overlap_area_ratio(g.spacing, g.pupil_radius) - 0.65) < 1e-9);
    CHECK(g.max_rounding_error <= 0.5);
    // rounded adjacent spacing deviates <= 2r/m = 1 px from ideal away from
    // the clamped boundary ring
    const int G = g.grid_side;
    for (int gy = 0; gy < G; ++gy) {
        for (int gx = 0; gx + 1 < G; ++gx) {
            const int i = gy * G + gx, k = gy * G + gx + 1;
            if (g.clamped[i] || g.clamped[k]) continue;
            const double d = g.centers[k].x - g.centers[i].x;
            CHECK(std::abs(d - g.spacing) <= 2.0 * g.pupil_radius / g.low_res + 1e-12);
        }
    }
}

TEST_CASE("build_geometry rejects m > N") {
    CHECK_THROWS_AS(build_geometry(32, 64, 0.0), Error);
}

TEST_CASE("pupil_mask: center 1, corners 0, popcount matches brute force") {
    BinaryMask p = pupil_mask(16, 8.0);
    CHECK(p.at(8, 8) == 1);
    CHECK(p.at(0, 0) == 0);
    CHECK(p.at(0, 15) == 0);
    CHECK(p.at(15, 0) == 0);
    CHECK(p.at(15, 15) == 0);
    int expect = 0;
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x)
            if ((y - 8.0) * (y - 8.0) + (x - 8.0) * (x - 8.0) < 64.0) ++expect;
    int got = 0;
    for (uint8_t b : p.v) got += b;
    CHECK(got == expect);
}

TEST_CASE("forward_field: constant object gives constant DC field of modulus N/m") {
    AcquisitionGeometry g = build_geometry(64, 16, 0.0);
    ComplexField obj(64, 64, 1.0);
    ComplexField psi = forward_field(obj, g, g.dc_index);
    for (const auto& z : psi.data) {
        CHECK(std::abs(z) == doctest::Approx(4.0).epsilon(1e-10));
    }
}

TEST_CASE("forward_field: window with no spectral content is zero") {
    AcquisitionGeometry g = build_geometry(64, 16, 0.0);
    // bandlimit the object to the DC pupil only so off-center windows see nothing
    ComplexField spectrum(64, 64);
    BinaryMask pupil = pupil_mask(16, 8.0);
    Rng rng(5);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x)
            if (pupil.at(y, x))
                spectrum.at(24 + y, 24 + x) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    ComplexField obj = dft2_centered(spectrum, FftSign::Inverse);
    ComplexField psi = forward_field(obj, g, 0); // corner window, disjoint from DC pupil
    for (const auto& z : psi.data) CHECK(std::abs(z) < 1e-12);
}

TEST_CASE("forward_field: global phase passes through") {
    AcquisitionGeometry g = build_geometry(32, 8, 0.4);
    Rng rng(6);
    ComplexField obj = random_field(32, 32, rng);
    const cplx phase = std::polar(1.0, 0.77);
    ComplexField obj2 = obj;
    for (auto& z : obj2.data) z *= phase;
    ComplexField a = forward_field(obj, g, 2);
    ComplexField b = forward_field(obj2, g, 2);
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a.data[i] * phase - b.data[i]) < 1e-12);
    CHECK_THROWS_AS(forward_field(obj, g, g.count()), Error);
}

TEST_CASE("forward_measure: constant object gives uniform DC intensity (N/m)^2") {
    AcquisitionGeometry g = build_geometry(64, 16, 0.0);
    ComplexField obj(64, 64, 1.0);
    MeasurementStack s = forward_measure(obj, g);
    CHECK(s.count() == g.count());
    for (double p : s.images[g.dc_index].v) CHECK(p == doctest::Approx(16.0).epsilon(1e-10));
}

TEST_CASE("forward_measure: global-phase invariance within 1e-12") {
    AcquisitionGeometry g = build_geometry(32, 8, 0.15);
    Rng rng(9);
    ComplexField obj = random_field(32, 32, rng);
    ComplexField obj2 = obj;
    for (auto& z : obj2.data) z *= std::polar(1.0, 1.234);
    MeasurementStack a = forward_measure(obj, g);
    MeasurementStack b = forward_measure(obj2, g);
    for (int j = 0; j < a.count(); ++j)
        for (size_t i = 0; i < a.images[j].v.size(); ++i)
            CHECK(std::abs(a.images[j].v[i] - b.images[j].v[i]) <= 1e-12 * std::max(1.0, a.images[j].v[i]));
}

TEST_CASE("forward_measure: zero object gives zero stack and scale") {
    AcquisitionGeometry g = build_geometry(32, 8, 0.0);
    ComplexField obj(32, 32);
    MeasurementStack s = forward_measure(obj, g);
    CHECK(s.scale == 0.0);
    for (const auto& img : s.images)
        for (double p : img.v) CHECK(p == 0.0);
}

TEST_CASE("forward_measure: per-window energy matches pupil-masked spectrum energy") {
    AcquisitionGeometry g = build_geometry(64, 16, 0.4);
    Rng rng(10);
    ComplexField obj = random_field(64, 64, rng);
    ComplexField spectrum = dft2_centered(obj, FftSign::Forward);
    BinaryMask pupil = pupil_mask(16, 8.0);
    MeasurementStack s = forward_measure(obj, g);
    for (int j = 0; j < g.count(); ++j) {
        ComplexField w = crop_centered(spectrum, g.centers[j], 16);
        double masked_energy = 0.0;
        for (int y = 0; y < 16; ++y)
            for (int x = 0; x < 16; ++x)
                if (pupil.at(y, x)) masked_energy += std::norm(w.at(y, x));
        double intensity_sum = 0.0;
        for (double p : s.images[j].v) intensity_sum += p;
        CHECK(std::abs(intensity_sum - masked_energy) <= 1e-10 * std::max(1.0, masked_energy));
    }
}

TEST_CASE("coverage: union of pupil supports contains the DC support") {
    for (double ov : {0.0, 0.15, 0.40, 0.65}) {
        AcquisitionGeometry g = build_geometry(64, 16, ov);
        BinaryMask cover = coverage_mask(g);
        BinaryMask pupil = pupil_mask(16, 8.0);
        const Pixel dc = g.centers[g.dc_index];
        for (int y = 0; y < 16; ++y)
            for (int x = 0; x < 16; ++x)
                if (pupil.at(y, x)) CHECK(cover.at(dc.y - 8 + y, dc.x - 8 + x) == 1);
    }
}

TEST_SUITE_END();
