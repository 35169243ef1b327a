#pragma once
#include <string>

#include "fpw/forward.hpp"

#include "json.hpp"

namespace fpw {

using ordered_json = nlohmann::ordered_json;

// Stack directory layout: manifest.json next to stack.f32 or stack.f64,
// raw little-endian intensity planes in acquisition order, row-major.
struct StackDtype {
    static constexpr const char* f32 = "f32le";
    static constexpr const char* f64 = "f64le";
};

ordered_json geometry_to_json(const AcquisitionGeometry& g);
AcquisitionGeometry geometry_from_json(const ordered_json& j);

void write_stack(const std::string& dir, const MeasurementStack& stack, const std::string& sample_id,
                 const std::string& dtype = StackDtype::f32);

// `path` may point at the directory or at its manifest.json.
MeasurementStack read_stack(const std::string& path);

std::string read_stack_sample_id(const std::string& path);

} // namespace fpw
