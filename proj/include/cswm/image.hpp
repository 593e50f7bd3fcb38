#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cswm/errors.hpp"

namespace cswm {

/// Grayscale pixel grid with real-valued intensities, row-major.
/// The nominal display range is [0, 255] but intermediate pipeline
/// images may hold values outside it; only save_pgm clamps.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    Image() = default;
    Image(int w, int h, double fill = 0.0);

    double& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }

    std::size_t pixel_count() const { return pixels.size(); }
    bool same_size(const Image& other) const {
        return width == other.width && height == other.height;
    }
};

struct QualityReport {
    double mse = 0.0;
    double psnr_db = 0.0;  // +infinity when mse == 0
};

/// Reads a binary 8-bit PGM (P5). Dimensions must be divisible by 4.
Image load_pgm(const std::string& path);

/// Rounds half away from zero, clamps to [0, 255], writes binary P5.
void save_pgm(const Image& image, const std::string& path);

/// Returns the image quantized the same way save_pgm stores it.
Image quantize(const Image& image);

/// MSE / PSNR against a peak of 255. Identical images give psnr_db = +inf.
QualityReport psnr(const Image& reference, const Image& test);

}  // namespace cswm
