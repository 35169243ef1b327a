#pragma once
#include <optional>
#include <string>
#include <vector>

#include "fpw/forward.hpp"
#include "fpw/image_io.hpp"
#include "fpw/stack_io.hpp"

namespace fpw {

// Object with uncorrelated amplitude and phase: the two channels come from
// different source images by construction.
struct ObjectSample {
    RealGrid amplitude;      // [0,1]
    RealGrid phase;          // [0,2pi)
    std::string id;
    std::string source_a;    // amplitude source image id
    std::string source_p;    // phase source image id

    ComplexField to_field() const;
};

struct DatasetEntry {
    std::string id;
    std::string dir; // <split>/<id> relative to the dataset root
};

struct DatasetManifest {
    std::vector<DatasetEntry> train;
    std::vector<DatasetEntry> test;
    AcquisitionGeometry geometry;
    uint64_t seed = 0;
    std::string corpus; // description string
    std::string root;   // absolute path, not serialized
};

// Resize both sources to N x N, map amplitude to [0,1] and phase to [0,2pi)
// (values equal to 2pi wrap to 0).
ObjectSample make_object(const RealGrid& img_a, const RealGrid& img_p, int n);

// Network input: each channel resized to N x N and min-max rescaled to [0,1]
// (constant channels map to zero). Channel order = acquisition order.
std::vector<RealGrid> preprocess_stack(const MeasurementStack& stack, int n);

// Seeded smooth-blob-plus-edges texture in [0,1].
RealGrid procedural_texture(uint64_t seed, int n);

struct DatasetOptions {
    std::string corpus_dir; // empty selects procedural mode
    std::string out_dir;
    int n_train = 0;
    int n_test = 0;
    int high_res = 64;
    int low_res = 16;
    double overlap = 0.0;
    uint64_t seed = 0;
    std::string dtype = StackDtype::f32;
};

DatasetManifest generate_dataset(const DatasetOptions& opts);

DatasetManifest read_dataset_manifest(const std::string& root);

// Loads amplitude.png / phase.png of a sample directory back to [0,1] / [0,2pi).
ObjectSample load_object(const std::string& sample_dir, const std::string& id = "");

void write_object_images(const std::string& dir, const ObjectSample& obj);

} // namespace fpw
