#include "fpw/stack_io.hpp"

#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace fpw {

ordered_json geometry_to_json(const AcquisitionGeometry& g) {
    ordered_json j;
    j["high_res"] = g.high_res;
    j["low_res"] = g.low_res;
    j["pupil_radius"] = g.pupil_radius;
    j["overlap"] = g.overlap;
    j["spacing"] = g.spacing;
    j["grid_side"] = g.grid_side;
    j["dc_index"] = g.dc_index;
    j["max_rounding_error"] = g.max_rounding_error;
    j["clamped_count"] = g.clamped_count;
    ordered_json centers = ordered_json::array();
    for (size_t i = 0; i < g.centers.size(); ++i)
        centers.push_back({g.centers[i].y, g.centers[i].x, int(g.clamped[i])});
    j["centers"] = std::move(centers);
    return j;
}

AcquisitionGeometry geometry_from_json(const ordered_json& j) {
    AcquisitionGeometry g;
    g.high_res = j.at("high_res").get<int>();
    g.low_res = j.at("low_res").get<int>();
    g.pupil_radius = j.at("pupil_radius").get<double>();
    g.overlap = j.at("overlap").get<double>();
    g.spacing = j.at("spacing").get<double>();
    g.grid_side = j.at("grid_side").get<int>();
    g.dc_index = j.at("dc_index").get<int>();
    g.max_rounding_error = j.at("max_rounding_error").get<double>();
    g.clamped_count = j.at("clamped_count").get<int>();
    for (const auto& c : j.at("centers")) {
        g.centers.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
        g.clamped.push_back(uint8_t(c.at(2).get<int>()));
    }
    return g;
}

void write_stack(const std::string& dir, const MeasurementStack& stack, const std::string& sample_id,
                 const std::string& dtype) {
    if (dtype != StackDtype::f32 && dtype != StackDtype::f64)
        throw_error(ErrorKind::ConfigError, "unknown stack dtype: " + dtype);
    fs::create_directories(dir);

    const bool f64 = dtype == StackDtype::f64;
    const std::string data_name = f64 ? "stack.f64" : "stack.f32";

    ordered_json manifest;
    manifest["geometry"] = geometry_to_json(stack.geometry);
    manifest["count"] = stack.count();
    manifest["low_res"] = stack.geometry.low_res;
    manifest["dtype"] = dtype;
    manifest["scale"] = stack.scale;
    manifest["sample_id"] = sample_id;
    manifest["data"] = data_name;
    std::ofstream mf(fs::path(dir) / "manifest.json", std::ios::binary);
    mf << manifest.dump(2) << "\n";

    std::ofstream df(fs::path(dir) / data_name, std::ios::binary);
    for (const RealGrid& img : stack.images) {
        if (f64) {
            df.write(reinterpret_cast<const char*>(img.v.data()), std::streamsize(img.v.size() * 8));
        } else {
            std::vector<float> plane(img.v.begin(), img.v.end());
            df.write(reinterpret_cast<const char*>(plane.data()), std::streamsize(plane.size() * 4));
        }
    }
    if (!df) throw_error(ErrorKind::IoError, "failed to write stack planes in " + dir);
}

namespace {

fs::path manifest_path(const std::string& path) {
    fs::path p(path);
    if (fs::is_directory(p)) p /= "manifest.json";
    if (!fs::exists(p)) throw_error(ErrorKind::DatasetError, "stack manifest not found: " + p.string());
    return p;
}

} // namespace

MeasurementStack read_stack(const std::string& path) {
    const fs::path mp = manifest_path(path);
    std::ifstream mf(mp, std::ios::binary);
    ordered_json manifest;
    try {
        mf >> manifest;
    } catch (const std::exception& e) {
        throw_error(ErrorKind::DatasetError, std::string("bad stack manifest: ") + e.what());
    }

    MeasurementStack stack;
    stack.geometry = geometry_from_json(manifest.at("geometry"));
    stack.scale = manifest.at("scale").get<double>();
    const std::string dtype = manifest.at("dtype").get<std::string>();
    const int m = stack.geometry.low_res;
    const int count = manifest.at("count").get<int>();
    if (count != stack.geometry.count())
        throw_error(ErrorKind::DatasetError, "stack count does not match geometry");

    const fs::path dp = mp.parent_path() / manifest.at("data").get<std::string>();
    std::ifstream df(dp, std::ios::binary);
    if (!df) throw_error(ErrorKind::DatasetError, "stack data missing: " + dp.string());

    const size_t plane = size_t(m) * m;
    for (int j = 0; j < count; ++j) {
        RealGrid img(m, m);
        if (dtype == StackDtype::f64) {
            df.read(reinterpret_cast<char*>(img.v.data()), std::streamsize(plane * 8));
        } else if (dtype == StackDtype::f32) {
            std::vector<float> buf(plane);
            df.read(reinterpret_cast<char*>(buf.data()), std::streamsize(plane * 4));
            for (size_t i = 0; i < plane; ++i) img.v[i] = buf[i];
        } else {
            throw_error(ErrorKind::DatasetError, "unknown stack dtype: " + dtype);
        }
        if (!df) throw_error(ErrorKind::DatasetError, "stack data truncated: " + dp.string());
        stack.images.push_back(std::move(img));
    }
    return stack;
}

std::string read_stack_sample_id(const std::string& path) {
    std::ifstream mf(manifest_path(path), std::ios::binary);
    ordered_json manifest;
    mf >> manifest;
    return manifest.value("sample_id", "");
}

} // namespace fpw
