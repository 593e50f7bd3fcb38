#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cswm/image.hpp"

namespace cswm {

// A key is just the seed of the pseudo-random mark plus its length; the
// mark itself is regenerated on demand.
struct WatermarkKey {
    std::uint64_t seed = 0;
    std::size_t length = 0;
};

enum class EmbedMethod { additive, multiplicative };

struct EmbedConfig {
    double alpha = 7.0;
    EmbedMethod method = EmbedMethod::additive;
};

struct DetectionReport {
    double right_response = 0.0;
    std::vector<std::uint64_t> wrong_seeds;
    std::vector<double> wrong_responses;
    bool decision = false;     // right response beats every wrong one
    double separation = 0.0;   // (right - mean(wrong)) / stddev(wrong)
};

// The mark carried by `key`: i.i.d. standard normal draws.
std::vector<double> generate_sequence(const WatermarkKey& key);

// Expected mark length for an image: one coefficient per element of the
// second-level horizontal-detail subband.
std::size_t mark_length(const Image& img);

// Insert the mark into the second-level horizontal-detail band and
// resynthesize.  Output pixels are real-valued; quantize() to store.
Image embed(const Image& img, const WatermarkKey& key, const EmbedConfig& config);

// Correlation response of `img` against the mark of `key`.
double correlate(const Image& img, const WatermarkKey& key);

std::vector<std::uint64_t> make_wrong_seeds(std::uint64_t right_seed,
                                            std::uint64_t base,
                                            std::size_t count);

DetectionReport detect(const Image& img, const WatermarkKey& right_key,
                       const std::vector<std::uint64_t>& wrong_seeds);

void save_key(const std::string& path, const WatermarkKey& key);
WatermarkKey load_key(const std::string& path);

}  // namespace cswm
