#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "fpw/field.hpp"

namespace fpw {

// Grayscale image as decoded from disk: samples scaled to [0,1] plus the
// format's full-scale value (255 or 65535) for callers that need it.
struct GrayImage {
    RealGrid pixels;   // values in [0,1]
    int bit_depth = 8; // source depth
};

// Reads an 8- or 16-bit PNG; color inputs are converted to luma.
GrayImage read_png_gray(const std::string& path);

// 16-bit grayscale, value = round(65535 * clamp(v,0,1)).
void write_png_gray16(const std::string& path, const RealGrid& img);

// 8-bit RGB row-major buffer of size h*w*3.
void write_png_rgb8(const std::string& path, const std::vector<uint8_t>& rgb, int h, int w);

// Bilinear resize with half-pixel center alignment.
RealGrid resize_bilinear(const RealGrid& src, int out_h, int out_w);

} // namespace fpw
