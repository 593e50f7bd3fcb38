#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cswm/image.hpp"

namespace cswm {

// Which 2-D DCT coefficients an acquisition keeps.  The kept set is a
// contiguous zigzag run from the DC corner plus a seeded scatter of
// later positions; see plan_measurements.
struct MeasurementPlan {
    int grid_side = 0;
    int v1_count = 0;
    int v2_count = 0;
    std::uint64_t selection_seed = 0;
    std::vector<int> kept_indices;  // row-major linear positions, selection order
};

struct MeasurementSet {
    MeasurementPlan plan;
    std::vector<double> values;  // one per kept index, same order
};

// Build the kept-coefficient set for a grid_side x grid_side image.
// v1_count positions form a zigzag prefix; v2_count more follow, most of
// them continuing the zigzag run, the remainder sampled uniformly from the
// leftover positions using selection_seed.
MeasurementPlan plan_measurements(int grid_side, int v1_count, int v2_count,
                                  std::uint64_t selection_seed);

// Transform the image and read off the planned coefficients.
MeasurementSet acquire(const Image& img, const MeasurementPlan& plan);

// Share of spectrum positions kept, in percent.
double measurement_fraction(const MeasurementPlan& plan);

void save_measurements(const std::string& path, const MeasurementSet& set);
MeasurementSet load_measurements(const std::string& path);

}  // namespace cswm
