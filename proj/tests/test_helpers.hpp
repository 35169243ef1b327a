#pragma once
#include <cmath>
#include <complex>

#include "fpw/field.hpp"
#include "fpw/rng.hpp"

namespace fpw::testing {

inline ComplexField random_field(int h, int w, Rng& rng, double amp = 1.0) {
    ComplexField f(h, w);
    for (auto& z : f.data) z = cplx(rng.uniform(-amp, amp), rng.uniform(-amp, amp));
    return f;
}

inline double max_abs_diff(const ComplexField& a, const ComplexField& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

inline double rel_l2_diff(const ComplexField& a, const ComplexField& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a.data[i] - b.data[i]);
        den += std::norm(b.data[i]);
    }
    return std::sqrt(num) / std::sqrt(den > 0 ? den : 1.0);
}

} // namespace fpw::testing
