#pragma once

#include <utility>
#include <vector>

#include "cswm/image.hpp"

namespace cswm {

// One level of the orthonormal Haar wavelet transform.  Naming follows the
// usual convention: hl carries horizontal detail (differences across
// columns), lh vertical detail.
struct SubbandSet {
    Image ll, lh, hl, hh;
};

// Two-level decomposition.  The level-1 approximation band is not stored;
// it is re-synthesized from `level2` on inversion.
struct DwtPyramid {
    SubbandSet level2;
    Image lh1, hl1, hh1;
    int original_width = 0;
    int original_height = 0;
};

SubbandSet haar_forward_level(const Image& img);
Image haar_inverse_level(const SubbandSet& bands);

DwtPyramid haar_pyramid(const Image& img);
Image haar_inverse(const DwtPyramid& pyramid);

// Orthonormal 2-D DCT-II realized as two dense matrix products against a
// precomputed cosine basis.  Plans are immutable after construction; the
// transform entry points are safe to call from multiple threads.
class Dct2Plan {
  public:
    Dct2Plan(int height, int width);

    int height() const { return height_; }
    int width() const { return width_; }

    // src and dst are row-major height*width buffers; they may alias.
    void forward(const double* src, double* dst) const;
    void inverse(const double* src, double* dst) const;

  private:
    int height_;
    int width_;
    std::vector<double> row_basis_;       // height x height
    std::vector<double> row_basis_t_;
    std::vector<double> col_basis_;       // width x width
    std::vector<double> col_basis_t_;
};

// Process-wide plan cache keyed by shape.  Returned references stay valid
// for the lifetime of the process.
const Dct2Plan& dct2_plan(int height, int width);

Image dct2_forward(const Image& img);
Image dct2_inverse(const Image& coeffs);

// JPEG-style zigzag scan of an n x n grid, returned as row-major linear
// indices ordered from the DC corner outwards.
std::vector<int> zigzag_indices(int n);

}  // namespace cswm
