#include "doctest.h"

#include <cmath>

#include "fpw/field.hpp"
#include "fpw/rng.hpp"
#include "test_helpers.hpp"

using namespace fpw;
using namespace fpw::testing;

TEST_SUITE_BEGIN("field");

TEST_CASE("unit impulse at center transforms to constant 1/sqrt(HW)") {
    ComplexField f(8, 8);
    f.at(4, 4) = 1.0;
    ComplexField F = dft2_centered(f, FftSign::Forward);
    for (const auto& z : F.data) {
        CHECK(z.real() == doctest::Approx(1.0 / 8.0).epsilon(1e-13));
        CHECK(std::abs(z.imag()) < 1e-14);
    }
}

TEST_CASE("forward then inverse is identity within 1e-12") {
    Rng rng(42);
    for (int size : {16, 15, 21}) {
        ComplexField f = random_field(size, size, rng);
        ComplexField back = dft2_centered(dft2_centered(f, FftSign::Forward), FftSign::Inverse);
        CHECK(max_abs_diff(back, f) < 1e-12);
    }
}

TEST_CASE("Parseval: energy preserved within 1e-12 relative") {
    Rng rng(7);
    ComplexField f = random_field(32, 32, rng);
    const double e0 = f.energy();
    for (auto dir : {FftSign::Forward, FftSign::Inverse}) {
        const double e1 = dft2_centered(f, dir).energy();
        CHECK(std::abs(e1 - e0) / e0 < 1e-12);
    }
}

TEST_CASE("linearity on random inputs") {
    Rng rng(3);
    ComplexField a = random_field(24, 24, rng);
    ComplexField b = random_field(24, 24, rng);
    const cplx alpha(0.3, -1.1), beta(-0.7, 0.2);
    ComplexField combo(24, 24);
    for (size_t i = 0; i < combo.size(); ++i) combo.data[i] = alpha * a.data[i] + beta * b.data[i];
    ComplexField lhs = dft2_centered(combo, FftSign::Forward);
    ComplexField fa = dft2_centered(a, FftSign::Forward);
    ComplexField fb = dft2_centered(b, FftSign::Forward);
    double worst = 0.0;
    for (size_t i = 0; i < lhs.size(); ++i)
        worst = std::max(worst, std::abs(lhs.data[i] - (alpha * fa.data[i] + beta * fb.data[i])));
    CHECK(worst < 1e-10);
}

TEST_CASE("non-finite input is rejected") {
    ComplexField f(4, 4);
    f.at(1, 2) = cplx(std::numeric_limits<double>::infinity(), 0.0);
    CHECK_THROWS_WITH_AS(dft2_centered(f, FftSign::Forward), doctest::Contains("InvalidField"), Error);
}

TEST_CASE("crop: full-window crop is the identity") {
    Rng rng(11);
    ComplexField f = random_field(64, 64, rng);
    ComplexField c = crop_centered(f, f.center(), 64);
    CHECK(max_abs_diff(c, f) == 0.0);
}

TEST_CASE("crop: size 1 yields the center pixel") {
    Rng rng(12);
    ComplexField f = random_field(9, 9, rng);
    ComplexField c = crop_centered(f, f.center(), 1);
    CHECK(c.height == 1);
    CHECK(c.at(0, 0) == f.at(4, 4));
}

TEST_CASE("crop: window missing an impulse sees zeros") {
    ComplexField f(32, 32);
    f.at(10, 10) = 1.0;
    // window centered at (24,24) with size 8 spans [20,28) and misses (10,10)
    ComplexField c = crop_centered(f, {24, 24}, 8);
    for (const auto& z : c.data) CHECK(z == cplx{});
}

TEST_CASE("crop: out-of-bounds window throws GeometryError") {
    ComplexField f(16, 16);
    CHECK_THROWS_AS(crop_centered(f, {2, 2}, 8), Error);
    try {
        crop_centered(f, {2, 2}, 8);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GeometryError);
    }
}

TEST_CASE("embed: all-zero mask leaves dst unchanged") {
    Rng rng(13);
    ComplexField dst = random_field(32, 32, rng);
    ComplexField src = random_field(8, 8, rng);
    BinaryMask mask(8, 8, 0);
    ComplexField out = embed_replace(dst, src, {16, 16}, mask);
    CHECK(max_abs_diff(out, dst) == 0.0);
}

TEST_CASE("embed then crop recovers src; embed is idempotent") {
    Rng rng(14);
    ComplexField dst = random_field(32, 32, rng);
    ComplexField src = random_field(8, 8, rng);
    BinaryMask mask(8, 8, 1);
    const Pixel c{12, 20};
    ComplexField once = embed_replace(dst, src, c, mask);
    CHECK(max_abs_diff(crop_centered(once, c, 8), src) == 0.0);
    ComplexField twice = embed_replace(once, src, c, mask);
    CHECK(max_abs_diff(twice, once) == 0.0);
}

TEST_CASE("embed: shape mismatch between src and mask throws") {
    ComplexField dst(16, 16), src(4, 4);
    BinaryMask mask(5, 4, 1);
    CHECK_THROWS_AS(embed_replace(dst, src, {8, 8}, mask), Error);
}

TEST_CASE("embed_add is the crop adjoint: <crop(f),s> == <f,embed_add(0,s)>") {
    Rng rng(15);
    ComplexField f = random_field(24, 24, rng);
    ComplexField s = random_field(6, 6, rng);
    BinaryMask mask(6, 6, 1);
    const Pixel c{9, 14};
    ComplexField cropped = crop_centered(f, c, 6);
    cplx lhs = 0.0;
    for (size_t i = 0; i < cropped.size(); ++i) lhs += std::conj(cropped.data[i]) * s.data[i];
    ComplexField embedded(24, 24);
    embed_add(embedded, s, c, mask);
    cplx rhs = 0.0;
    for (size_t i = 0; i < f.size(); ++i) rhs += std::conj(f.data[i]) * embedded.data[i];
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_SUITE_END();
