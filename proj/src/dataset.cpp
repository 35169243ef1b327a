#include "fpw/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "fpw/rng.hpp"

namespace fs = std::filesystem;

namespace fpw {

ComplexField ObjectSample::to_field() const { return object_from_amplitude_phase(amplitude, phase); }

ObjectSample make_object(const RealGrid& img_a, const RealGrid& img_p, int n) {
    if (img_a.size() == 0 || img_p.size() == 0)
        throw_error(ErrorKind::CorpusError, "make_object: empty source image");
    ObjectSample s;
    s.amplitude = resize_bilinear(img_a, n, n);
    s.phase = resize_bilinear(img_p, n, n);
    for (double& v : s.amplitude.v) v = std::min(1.0, std::max(0.0, v));
    for (double& v : s.phase.v) {
        v = 2.0 * M_PI * std::min(1.0, std::max(0.0, v));
        if (v >= 2.0 * M_PI) v = 0.0; // half-open [0,2pi)
    }
    return s;
}

std::vector<RealGrid> preprocess_stack(const MeasurementStack& stack, int n) {
    if (stack.count() < 1) throw_error(ErrorKind::DatasetError, "preprocess_stack: empty stack");
    std::vector<RealGrid> channels;
    channels.reserve(stack.count());
    for (const RealGrid& img : stack.images) {
        RealGrid ch = resize_bilinear(img, n, n);
        const auto [mn_it, mx_it] = std::minmax_element(ch.v.begin(), ch.v.end());
        const double mn = *mn_it, mx = *mx_it;
        if (mx > mn) {
            const double inv = 1.0 / (mx - mn);
            for (double& v : ch.v) v = (v - mn) * inv;
        } else {
            std::fill(ch.v.begin(), ch.v.end(), 0.0);
        }
        channels.push_back(std::move(ch));
    }
    return channels;
}

RealGrid procedural_texture(uint64_t seed, int n) {
    Rng rng(seed);
    RealGrid img(n, n);

    // smooth blobs
    const int blobs = 4 + int(rng.below(5));
    for (int b = 0; b < blobs; ++b) {
        const double cy = rng.uniform(0.0, n);
        const double cx = rng.uniform(0.0, n);
        const double sig = rng.uniform(n / 16.0, n / 4.0);
        const double amp = rng.uniform(-1.0, 1.0);
        const double inv = 1.0 / (2.0 * sig * sig);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                img.at(y, x) += amp * std::exp(-((y - cy) * (y - cy) + (x - cx) * (x - cx)) * inv);
    }
    // hard edges: random half-plane steps
    const int edges = 1 + int(rng.below(3));
    for (int e = 0; e < edges; ++e) {
        const double theta = rng.uniform(0.0, 2.0 * M_PI);
        const double ny = std::sin(theta), nx = std::cos(theta);
        const double off = rng.uniform(0.25 * n, 0.75 * n);
        const double amp = rng.uniform(-0.6, 0.6);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                if (y * ny + x * nx > off) img.at(y, x) += amp;
    }

    const auto [mn_it, mx_it] = std::minmax_element(img.v.begin(), img.v.end());
    const double mn = *mn_it, mx = *mx_it;
    if (mx > mn) {
        const double inv = 1.0 / (mx - mn);
        for (double& v : img.v) v = (v - mn) * inv;
    } else {
        std::fill(img.v.begin(), img.v.end(), 0.5);
    }
    return img;
}

void write_object_images(const std::string& dir, const ObjectSample& obj) {
    fs::create_directories(dir);
    write_png_gray16((fs::path(dir) / "amplitude.png").string(), obj.amplitude);
    RealGrid phase_scaled = obj.phase;
    for (double& v : phase_scaled.v) v /= 2.0 * M_PI;
    write_png_gray16((fs::path(dir) / "phase.png").string(), phase_scaled);
}

ObjectSample load_object(const std::string& sample_dir, const std::string& id) {
    ObjectSample s;
    s.id = id.empty() ? fs::path(sample_dir).filename().string() : id;
    s.amplitude = read_png_gray((fs::path(sample_dir) / "amplitude.png").string()).pixels;
    s.phase = read_png_gray((fs::path(sample_dir) / "phase.png").string()).pixels;
    for (double& v : s.phase.v) {
        v *= 2.0 * M_PI;
        if (v >= 2.0 * M_PI) v = 0.0;
    }
    return s;
}

namespace {

std::vector<std::string> list_corpus(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::string ext = e.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
        if (ext == ".png") files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    return files;
}

struct SourcePicker {
    std::vector<std::string> corpus; // empty selects procedural mode

    // Returns ([0,1] image, source id) for slot `which` of sample `index`.
    std::pair<RealGrid, std::string> pick(uint64_t seed, uint64_t index, int which, int n, Rng& rng) {
        if (corpus.empty()) {
            const uint64_t sub = Rng::mix(seed, index * 2 + which);
            char name[32];
            std::snprintf(name, sizeof(name), "proc:%016llx", static_cast<unsigned long long>(sub));
            return {procedural_texture(sub, n), name};
        }
        // two distinct corpus images per sample
        const size_t a = size_t(rng.below(corpus.size()));
        size_t b = size_t(rng.below(corpus.size() - 1));
        if (b >= a) ++b;
        const size_t idx = which == 0 ? a : b;
        return {read_png_gray(corpus[idx]).pixels, fs::path(corpus[idx]).filename().string()};
    }
};

} // namespace

DatasetManifest generate_dataset(const DatasetOptions& opts) {
    SourcePicker picker;
    if (!opts.corpus_dir.empty()) {
        picker.corpus = list_corpus(opts.corpus_dir);
        if (picker.corpus.size() < 2)
            throw_error(ErrorKind::CorpusError,
                        "corpus needs at least 2 PNG images: " + opts.corpus_dir);
    }

    DatasetManifest manifest;
    manifest.geometry = build_geometry(opts.high_res, opts.low_res, opts.overlap);
    manifest.seed = opts.seed;
    manifest.corpus = picker.corpus.empty() ? "procedural" : opts.corpus_dir;
    manifest.root = fs::absolute(opts.out_dir).string();

    fs::create_directories(opts.out_dir);

    auto emit_split = [&](const std::string& split, int count, uint64_t salt_base,
                          std::vector<DatasetEntry>& entries) {
        for (int i = 0; i < count; ++i) {
            char idbuf[32];
            std::snprintf(idbuf, sizeof(idbuf), "%s_%04d", split.c_str(), i);
            const std::string id = idbuf;
            const uint64_t sample_salt = salt_base + uint64_t(i);

            Rng pick_rng(Rng::mix(opts.seed, sample_salt));
            // corpus mode draws two distinct images; slot 1 reuses pick_rng
            // state so the pair is a single deterministic draw
            auto source_a = picker.pick(opts.seed, sample_salt, 0, opts.high_res, pick_rng);
            auto source_p = picker.pick(opts.seed, sample_salt, 1, opts.high_res, pick_rng);

            ObjectSample obj = make_object(source_a.first, source_p.first, opts.high_res);
            obj.id = id;
            obj.source_a = source_a.second;
            obj.source_p = source_p.second;

            const fs::path dir = fs::path(opts.out_dir) / split / id;
            write_object_images(dir.string(), obj);
            MeasurementStack stack = forward_measure(obj.to_field(), manifest.geometry);
            write_stack(dir.string(), stack, id, opts.dtype);
            entries.push_back({id, split + "/" + id});
        }
    };

    emit_split("train", opts.n_train, 0x100000ull, manifest.train);
    emit_split("test", opts.n_test, 0x200000ull, manifest.test);

    ordered_json j;
    j["geometry"] = geometry_to_json(manifest.geometry);
    j["seed"] = manifest.seed;
    j["corpus"] = manifest.corpus;
    auto entries_json = [](const std::vector<DatasetEntry>& es) {
        ordered_json arr = ordered_json::array();
        for (const auto& e : es)
            arr.push_back({{"id", e.id},
                           {"dir", e.dir},
                           {"amplitude", e.dir + "/amplitude.png"},
                           {"phase", e.dir + "/phase.png"},
                           {"stack", e.dir + "/manifest.json"}});
        return arr;
    };
    j["train"] = entries_json(manifest.train);
    j["test"] = entries_json(manifest.test);
    std::ofstream mf(fs::path(opts.out_dir) / "manifest.json", std::ios::binary);
    mf << j.dump(2) << "\n";
    if (!mf) throw_error(ErrorKind::IoError, "failed to write dataset manifest");
    return manifest;
}

DatasetManifest read_dataset_manifest(const std::string& root) {
    const fs::path mp = fs::path(root) / "manifest.json";
    std::ifstream mf(mp, std::ios::binary);
    if (!mf) throw_error(ErrorKind::DatasetError, "dataset manifest not found: " + mp.string());
    ordered_json j;
    try {
        mf >> j;
    } catch (const std::exception& e) {
        throw_error(ErrorKind::DatasetError, std::string("bad dataset manifest: ") + e.what());
    }
    DatasetManifest m;
    m.geometry = geometry_from_json(j.at("geometry"));
    m.seed = j.at("seed").get<uint64_t>();
    m.corpus = j.at("corpus").get<std::string>();
    m.root = fs::absolute(root).string();
    for (const auto& e : j.at("train")) m.train.push_back({e.at("id"), e.at("dir")});
    for (const auto& e : j.at("test")) m.test.push_back({e.at("id"), e.at("dir")});
    return m;
}

} // namespace fpw
