#include "cswm/cs_attack.hpp"

#include <fstream>
#include <random>

#include <json.hpp>

#include "cswm/errors.hpp"
#include "cswm/prng.hpp"
#include "cswm/transforms.hpp"

namespace cswm {

namespace {

// Share of the scattered group that stays contiguous with the zigzag run.
// Keeping the bulk of the budget on low frequencies is what makes the
// later reconstruction well-posed for natural images.
constexpr double kContiguousShare = 0.95;

}  // namespace

MeasurementPlan plan_measurements(int grid_side, int v1_count, int v2_count,
                                  std::uint64_t selection_seed) {
    if (grid_side <= 0 || grid_side % 4 != 0) {
        throw ConfigError("plan_measurements: grid side must be a positive multiple of 4");
    }
    if (v1_count < 0 || v2_count < 0) {
        throw ConfigError("plan_measurements: coefficient counts must be non-negative");
    }
    const long long total = static_cast<long long>(grid_side) * grid_side;
    const long long kept = static_cast<long long>(v1_count) + v2_count;
    if (kept > total) {
        throw ConfigError("plan_measurements: " + std::to_string(kept) +
                          " coefficients requested from a grid of " + std::to_string(total));
    }

    const std::vector<int> order = zigzag_indices(grid_side);
    const int core = static_cast<int>(kContiguousShare * v2_count);
    const int scattered = v2_count - core;

    MeasurementPlan plan;
    plan.grid_side = grid_side;
    plan.v1_count = v1_count;
    plan.v2_count = v2_count;
    plan.selection_seed = selection_seed;
    plan.kept_indices.assign(order.begin(), order.begin() + v1_count + core);

    if (scattered > 0) {
        std::vector<int> pool(order.begin() + v1_count + core, order.end());
        std::mt19937_64 gen(selection_seed);
        const std::vector<int> extra = prng::sample_without_replacement(
            gen, std::move(pool), static_cast<std::size_t>(scattered));
        plan.kept_indices.insert(plan.kept_indices.end(), extra.begin(), extra.end());
    }
    return plan;
}

MeasurementSet acquire(const Image& img, const MeasurementPlan& plan) {
    if (img.width != plan.grid_side || img.height != plan.grid_side) {
        throw DimensionError("acquire: plan is for a " + std::to_string(plan.grid_side) +
                             "-sided grid, image is " + std::to_string(img.width) + "x" +
                             std::to_string(img.height));
    }
    const Image spectrum = dct2_forward(img);
    MeasurementSet set;
    set.plan = plan;
    set.values.reserve(plan.kept_indices.size());
    for (const int idx : plan.kept_indices) {
        set.values.push_back(spectrum.pixels[static_cast<std::size_t>(idx)]);
    }
    return set;
}

double measurement_fraction(const MeasurementPlan& plan) {
    const double total = static_cast<double>(plan.grid_side) * plan.grid_side;
    return 100.0 * static_cast<double>(plan.v1_count + plan.v2_count) / total;
}

void save_measurements(const std::string& path, const MeasurementSet& set) {
    nlohmann::json j;
    j["grid_side"] = set.plan.grid_side;
    j["v1_count"] = set.plan.v1_count;
    j["v2_count"] = set.plan.v2_count;
    j["selection_seed"] = set.plan.selection_seed;
    j["values"] = set.values;
    std::ofstream out(path);
    if (!out) throw IoError("cannot open measurement file for writing: " + path);
    out << j.dump() << '\n';
    if (!out) throw IoError("failed writing measurement file: " + path);
}

MeasurementSet load_measurements(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open measurement file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed measurement file " + path + ": " + e.what());
    }
    for (const char* field : {"grid_side", "v1_count", "v2_count", "selection_seed", "values"}) {
        if (!j.contains(field)) {
            throw ConfigError("measurement file " + path + " missing field " + field);
        }
    }
    MeasurementSet set;
    set.plan = plan_measurements(j["grid_side"].get<int>(), j["v1_count"].get<int>(),
                                 j["v2_count"].get<int>(),
                                 j["selection_seed"].get<std::uint64_t>());
    set.values = j["values"].get<std::vector<double>>();
    if (set.values.size() != set.plan.kept_indices.size()) {
        throw ConfigError("measurement file " + path + " holds " +
                          std::to_string(set.values.size()) + " values for " +
                          std::to_string(set.plan.kept_indices.size()) + " kept positions");
    }
    return set;
}

}  // namespace cswm
