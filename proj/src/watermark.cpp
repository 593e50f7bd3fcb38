#include "cswm/watermark.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "cswm/errors.hpp"
#include "cswm/kernels.hpp"
#include "cswm/prng.hpp"
#include "cswm/transforms.hpp"

namespace cswm {

std::vector<double> generate_sequence(const WatermarkKey& key) {
    if (key.length == 0) throw ConfigError("generate_sequence: key length must be positive");
    return prng::normal_sequence(key.seed, key.length);
}

std::size_t mark_length(const Image& img) {
    return static_cast<std::size_t>(img.width / 4) * static_cast<std::size_t>(img.height / 4);
}

Image embed(const Image& img, const WatermarkKey& key, const EmbedConfig& config) {
    if (config.alpha < 0.0) throw ConfigError("embed: alpha must be non-negative");
    DwtPyramid pyr = haar_pyramid(img);
    Image& band = pyr.level2.hl;
    if (key.length != band.pixels.size()) {
        throw ConfigError("embed: key length " + std::to_string(key.length) +
                          " does not match subband size " + std::to_string(band.pixels.size()));
    }
    const std::vector<double> mark = generate_sequence(key);
    if (config.method == EmbedMethod::additive) {
        kernels::axpy(band.pixels.data(), config.alpha, mark.data(), mark.size());
    } else {
        for (std::size_t i = 0; i < mark.size(); ++i) {
            band.pixels[i] += config.alpha * mark[i] * std::abs(band.pixels[i]);
        }
    }
    return haar_inverse(pyr);
}

double correlate(const Image& img, const WatermarkKey& key) {
    const DwtPyramid pyr = haar_pyramid(img);
    const Image& band = pyr.level2.hl;
    if (key.length != band.pixels.size()) {
        throw ConfigError("correlate: key length does not match subband size");
    }
    const std::vector<double> mark = generate_sequence(key);
    return kernels::dot(mark.data(), band.pixels.data(), mark.size());
}

std::vector<std::uint64_t> make_wrong_seeds(std::uint64_t right_seed,
                                            std::uint64_t base,
                                            std::size_t count) {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(count);
    for (std::uint64_t s = base + 1; seeds.size() < count; ++s) {
        if (s != right_seed) seeds.push_back(s);
    }
    return seeds;
}

DetectionReport detect(const Image& img, const WatermarkKey& right_key,
                       const std::vector<std::uint64_t>& wrong_seeds) {
    if (wrong_seeds.empty()) throw ConfigError("detect: need at least one wrong seed");
    for (const std::uint64_t s : wrong_seeds) {
        if (s == right_key.seed) {
            throw ConfigError("detect: wrong seed " + std::to_string(s) +
                              " duplicates the right key");
        }
    }
    DetectionReport report;
    report.right_response = correlate(img, right_key);
    report.wrong_seeds = wrong_seeds;
    report.wrong_responses.reserve(wrong_seeds.size());
    for (const std::uint64_t s : wrong_seeds) {
        report.wrong_responses.push_back(
            correlate(img, WatermarkKey{s, right_key.length}));
    }

    report.decision = true;
    for (const double r : report.wrong_responses) {
        if (report.right_response <= r) report.decision = false;
    }

    const std::size_t n = report.wrong_responses.size();
    if (n >= 2) {
        double mean = 0.0;
        for (const double r : report.wrong_responses) mean += r;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const double r : report.wrong_responses) {
            var += (r - mean) * (r - mean);
        }
        var /= static_cast<double>(n - 1);
        const double sd = std::sqrt(var);
        report.separation = sd > 0.0 ? (report.right_response - mean) / sd : 0.0;
    }
    return report;
}

void save_key(const std::string& path, const WatermarkKey& key) {
    nlohmann::json j;
    j["seed"] = key.seed;
    j["length"] = key.length;
    j["distribution"] = "normal";
    std::ofstream out(path);
    if (!out) throw IoError("cannot open key file for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing key file: " + path);
}

WatermarkKey load_key(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open key file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed key file " + path + ": " + e.what());
    }
    if (!j.contains("seed") || !j.contains("length")) {
        throw ConfigError("key file " + path + " missing seed or length");
    }
    if (j.value("distribution", "normal") != "normal") {
        throw ConfigError("key file " + path + " requests unsupported distribution");
    }
    WatermarkKey key;
    key.seed = j["seed"].get<std::uint64_t>();
    key.length = j["length"].get<std::size_t>();
    return key;
}

}  // namespace cswm
