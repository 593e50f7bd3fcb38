#include "cswm/transforms.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

#include "cswm/errors.hpp"
#include "cswm/kernels.hpp"

namespace cswm {

namespace {

void require_even(const Image& img, const char* what) {
    if (img.width <= 0 || img.height <= 0 ||
        img.width % 2 != 0 || img.height % 2 != 0) {
        throw DimensionError(std::string(what) + ": dimensions must be positive and even, got " +
                             std::to_string(img.width) + "x" + std::to_string(img.height));
    }
}

}  // namespace

SubbandSet haar_forward_level(const Image& img) {
    require_even(img, "haar_forward_level");
    const int hh = img.height / 2;
    const int hw = img.width / 2;
    SubbandSet out{Image(hw, hh), Image(hw, hh), Image(hw, hh), Image(hw, hh)};
    for (int i = 0; i < hh; ++i) {
        for (int j = 0; j < hw; ++j) {
            const double a = img.at(2 * i, 2 * j);
            const double b = img.at(2 * i, 2 * j + 1);
            const double c = img.at(2 * i + 1, 2 * j);
            const double d = img.at(2 * i + 1, 2 * j + 1);
            out.ll.at(i, j) = (a + b + c + d) / 2.0;
            out.hl.at(i, j) = (a - b + c - d) / 2.0;
            out.lh.at(i, j) = (a + b - c - d) / 2.0;
            out.hh.at(i, j) = (a - b - c + d) / 2.0;
        }
    }
    return out;
}

Image haar_inverse_level(const SubbandSet& bands) {
    const Image& ll = bands.ll;
    if (!ll.same_size(bands.lh) || !ll.same_size(bands.hl) || !ll.same_size(bands.hh)) {
        throw DimensionError("haar_inverse_level: subband shapes disagree");
    }
    if (ll.width <= 0 || ll.height <= 0) {
        throw DimensionError("haar_inverse_level: empty subbands");
    }
    Image out(2 * ll.width, 2 * ll.height);
    for (int i = 0; i < ll.height; ++i) {
        for (int j = 0; j < ll.width; ++j) {
            const double s = bands.ll.at(i, j);
            const double h = bands.hl.at(i, j);
            const double v = bands.lh.at(i, j);
            const double d = bands.hh.at(i, j);
            out.at(2 * i, 2 * j) = (s + h + v + d) / 2.0;
            out.at(2 * i, 2 * j + 1) = (s - h + v - d) / 2.0;
            out.at(2 * i + 1, 2 * j) = (s + h - v - d) / 2.0;
            out.at(2 * i + 1, 2 * j + 1) = (s - h - v + d) / 2.0;
        }
    }
    return out;
}

DwtPyramid haar_pyramid(const Image& img) {
    if (img.width % 4 != 0 || img.height % 4 != 0 || img.width <= 0 || img.height <= 0) {
        throw DimensionError("haar_pyramid: dimensions must be positive multiples of 4, got " +
                             std::to_string(img.width) + "x" + std::to_string(img.height));
    }
    SubbandSet level1 = haar_forward_level(img);
    DwtPyramid pyr;
    pyr.level2 = haar_forward_level(level1.ll);
    pyr.lh1 = std::move(level1.lh);
    pyr.hl1 = std::move(level1.hl);
    pyr.hh1 = std::move(level1.hh);
    pyr.original_width = img.width;
    pyr.original_height = img.height;
    return pyr;
}

Image haar_inverse(const DwtPyramid& pyramid) {
    SubbandSet level1;
    level1.ll = haar_inverse_level(pyramid.level2);
    level1.lh = pyramid.lh1;
    level1.hl = pyramid.hl1;
    level1.hh = pyramid.hh1;
    Image out = haar_inverse_level(level1);
    if (pyramid.original_width != 0 &&
        (out.width != pyramid.original_width || out.height != pyramid.original_height)) {
        throw DimensionError("haar_inverse: subband shapes disagree with recorded size");
    }
    return out;
}

namespace {

// Orthonormal DCT-II basis: row k holds c_k * cos(pi*(2n+1)*k / (2N)).
std::vector<double> dct_basis(int n) {
    std::vector<double> g(static_cast<std::size_t>(n) * n);
    const double scale0 = std::sqrt(1.0 / n);
    const double scale = std::sqrt(2.0 / n);
    for (int k = 0; k < n; ++k) {
        const double ck = (k == 0) ? scale0 : scale;
        for (int j = 0; j < n; ++j) {
            g[static_cast<std::size_t>(k) * n + j] =
                ck * std::cos(std::numbers::pi * (2.0 * j + 1.0) * k / (2.0 * n));
        }
    }
    return g;
}

std::vector<double> transpose(const std::vector<double>& a, int rows, int cols) {
    std::vector<double> t(a.size());
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            t[static_cast<std::size_t>(j) * rows + i] = a[static_cast<std::size_t>(i) * cols + j];
        }
    }
    return t;
}

}  // namespace

Dct2Plan::Dct2Plan(int height, int width) : height_(height), width_(width) {
    if (height <= 0 || width <= 0) {
        throw DimensionError("Dct2Plan: dimensions must be positive");
    }
    row_basis_ = dct_basis(height);
    row_basis_t_ = transpose(row_basis_, height, height);
    col_basis_ = dct_basis(width);
    col_basis_t_ = transpose(col_basis_, width, width);
}

void Dct2Plan::forward(const double* src, double* dst) const {
    const std::size_t h = static_cast<std::size_t>(height_);
    const std::size_t w = static_cast<std::size_t>(width_);
    std::vector<double> tmp(h * w);
    kernels::matmul(row_basis_.data(), src, tmp.data(), h, h, w);
    kernels::matmul(tmp.data(), col_basis_t_.data(), dst, h, w, w);
}

void Dct2Plan::inverse(const double* src, double* dst) const {
    const std::size_t h = static_cast<std::size_t>(height_);
    const std::size_t w = static_cast<std::size_t>(width_);
    std::vector<double> tmp(h * w);
    kernels::matmul(row_basis_t_.data(), src, tmp.data(), h, h, w);
    kernels::matmul(tmp.data(), col_basis_.data(), dst, h, w, w);
}

const Dct2Plan& dct2_plan(int height, int width) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::unique_ptr<Dct2Plan>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{height, width}];
    if (!slot) slot = std::make_unique<Dct2Plan>(height, width);
    return *slot;
}

Image dct2_forward(const Image& img) {
    Image out(img.width, img.height);
    dct2_plan(img.height, img.width).forward(img.pixels.data(), out.pixels.data());
    return out;
}

Image dct2_inverse(const Image& coeffs) {
    Image out(coeffs.width, coeffs.height);
    dct2_plan(coeffs.height, coeffs.width).inverse(coeffs.pixels.data(), out.pixels.data());
    return out;
}

std::vector<int> zigzag_indices(int n) {
    if (n <= 0) throw DimensionError("zigzag_indices: grid side must be positive");
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n) * n);
    for (int s = 0; s <= 2 * (n - 1); ++s) {
        const int lo = std::max(0, s - (n - 1));
        const int hi = std::min(s, n - 1);
        if (s % 2 == 1) {
            for (int i = lo; i <= hi; ++i) order.push_back(i * n + (s - i));
        } else {
            for (int i = hi; i >= lo; --i) order.push_back(i * n + (s - i));
        }
    }
    return order;
}

}  // namespace cswm
