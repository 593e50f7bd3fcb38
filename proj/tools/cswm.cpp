// Command-line surface for the watermarking pipeline: embed a mark, run the
// partial-DCT acquisition + TV reconstruction, detect, or drive the whole
// sweep that regenerates the quality/detection table.
//
// Exit codes: 0 success (detect: mark found), 1 usage/validation error,
// 2 I/O error, 3 mark not detected, 4 solver did not converge.

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cswm/cs_attack.hpp"
#include "cswm/errors.hpp"
#include "cswm/image.hpp"
#include "cswm/kernels.hpp"
#include "cswm/tv_solver.hpp"
#include "cswm/watermark.hpp"

namespace {

using nlohmann::json;

std::string fmt(double v, int precision = 6) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

// JSON value for a PSNR: finite values stay numeric, +inf becomes "inf".
json psnr_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw cswm::IoError("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw cswm::IoError("failed writing: " + path);
}

json solver_json(const cswm::SolverConfig& cfg) {
    return json{{"max_iterations", cfg.max_iterations},
                {"step_size", cfg.step_size},
                {"smoothing_epsilon", cfg.smoothing_epsilon},
                {"stop_tolerance", cfg.stop_tolerance}};
}

void require_square(const cswm::Image& img, const char* cmd) {
    if (img.width != img.height) {
        throw cswm::DimensionError(std::string(cmd) + ": image must be square, got " +
                                   std::to_string(img.width) + "x" + std::to_string(img.height));
    }
}

constexpr std::pair<int, int> kSweepRows[] = {
    {2000, 12000}, {2000, 15000}, {0, 17000}, {1000, 17000}, {5000, 15000}, {0, 30000},
};

int run_embed(const std::string& input, const std::string& output,
              std::uint64_t seed, double alpha) {
    const cswm::Image original = cswm::load_pgm(input);
    const cswm::WatermarkKey key{seed, cswm::mark_length(original)};
    const cswm::Image marked =
        cswm::embed(original, key, cswm::EmbedConfig{alpha, cswm::EmbedMethod::additive});
    const cswm::QualityReport quality = cswm::psnr(original, marked);
    cswm::save_pgm(marked, output);
    const std::string key_path = output + ".key.json";
    cswm::save_key(key_path, key);
    std::cout << "psnr_db=" << fmt(quality.psnr_db) << '\n'
              << "output=" << output << '\n'
              << "key=" << key_path << '\n';
    return 0;
}

int run_attack(const std::string& input, const std::string& output, int v1, int v2,
               std::uint64_t selection_seed, const cswm::SolverConfig& solver) {
    const cswm::Image img = cswm::load_pgm(input);
    require_square(img, "attack");
    const cswm::MeasurementPlan plan =
        cswm::plan_measurements(img.width, v1, v2, selection_seed);
    const cswm::MeasurementSet measurements = cswm::acquire(img, plan);
    const cswm::ReconstructionResult result = cswm::reconstruct(measurements, solver);
    const cswm::QualityReport quality = cswm::psnr(img, result.image);
    cswm::save_pgm(result.image, output);

    write_json(output + ".json",
               json{{"grid_side", plan.grid_side},
                    {"v1_count", v1},
                    {"v2_count", v2},
                    {"selection_seed", selection_seed},
                    {"fraction_percent", cswm::measurement_fraction(plan)},
                    {"iterations_used", result.iterations_used},
                    {"converged", result.converged},
                    {"initial_tv", result.initial_tv},
                    {"final_tv", result.final_tv},
                    {"data_residual", result.data_residual},
                    {"psnr_db_vs_input", psnr_json(quality.psnr_db)},
                    {"solver", solver_json(solver)},
                    {"output_image", output}});

    std::cout << "fraction_percent=" << fmt(cswm::measurement_fraction(plan), 2) << '\n'
              << "iterations=" << result.iterations_used << '\n'
              << "converged=" << (result.converged ? "true" : "false") << '\n'
              << "psnr_db=" << fmt(quality.psnr_db) << '\n'
              << "output=" << output << '\n';
    return result.converged ? 0 : 4;
}

int run_detect(const std::string& input, const std::string& key_path,
               std::size_t wrong_count, std::uint64_t wrong_seed_base,
               const std::string& report_path, const std::string& csv_path) {
    const cswm::Image img = cswm::load_pgm(input);
    const cswm::WatermarkKey key = cswm::load_key(key_path);
    if (wrong_count < 1) throw cswm::ConfigError("detect: wrong-count must be at least 1");
    const std::vector<std::uint64_t> wrong_seeds =
        cswm::make_wrong_seeds(key.seed, wrong_seed_base, wrong_count);
    const cswm::DetectionReport report = cswm::detect(img, key, wrong_seeds);
    const double max_wrong =
        *std::max_element(report.wrong_responses.begin(), report.wrong_responses.end());

    const json j{{"decision", report.decision},
                 {"right_seed", key.seed},
                 {"right_response", report.right_response},
                 {"max_wrong_response", max_wrong},
                 {"separation", report.separation},
                 {"wrong_key_count", report.wrong_responses.size()},
                 {"wrong_seeds", report.wrong_seeds},
                 {"wrong_responses", report.wrong_responses}};
    std::cout << j.dump(2) << '\n';
    if (!report_path.empty()) write_json(report_path, j);

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw cswm::IoError("cannot open for writing: " + csv_path);
        csv << "index,seed,response,is_right\n";
        csv << "0," << key.seed << ',' << fmt(report.right_response) << ",true\n";
        for (std::size_t i = 0; i < report.wrong_seeds.size(); ++i) {
            csv << (i + 1) << ',' << report.wrong_seeds[i] << ','
                << fmt(report.wrong_responses[i]) << ",false\n";
        }
        if (!csv) throw cswm::IoError("failed writing: " + csv_path);
    }
    return report.decision ? 0 : 3;
}

int run_experiment(const std::string& input, const std::string& output_csv,
                   std::uint64_t seed, double alpha, std::uint64_t selection_seed,
                   std::size_t wrong_count, std::uint64_t wrong_seed_base,
                   const cswm::SolverConfig& solver) {
    const cswm::Image original = cswm::load_pgm(input);
    require_square(original, "experiment");
    const cswm::WatermarkKey key{seed, cswm::mark_length(original)};
    // The attacker sees the stored 8-bit watermarked image, so quality is
    // measured against the quantized version.
    const cswm::Image marked = cswm::quantize(
        cswm::embed(original, key, cswm::EmbedConfig{alpha, cswm::EmbedMethod::additive}));
    if (wrong_count < 1) throw cswm::ConfigError("experiment: wrong-count must be at least 1");
    const std::vector<std::uint64_t> wrong_seeds =
        cswm::make_wrong_seeds(key.seed, wrong_seed_base, wrong_count);

    json rows_json = json::array();
    for (const auto& [v1, v2] : kSweepRows) rows_json.push_back({v1, v2});
    write_json(output_csv + ".manifest.json",
               json{{"image_path", input},
                    {"watermark_seed", seed},
                    {"alpha", alpha},
                    {"selection_seed", selection_seed},
                    {"wrong_seed_base", wrong_seed_base},
                    {"wrong_key_seeds", wrong_seeds},
                    {"rows", rows_json},
                    {"solver", solver_json(solver)},
                    {"outputs", json{{"csv", output_csv}}}});

    std::ofstream csv(output_csv);
    if (!csv) throw cswm::IoError("cannot open for writing: " + output_csv);
    csv << "v1,v2,fraction_percent,psnr_db,detection,right_response,max_wrong_response\n";

    for (const auto& [v1, v2] : kSweepRows) {
        const cswm::MeasurementPlan plan =
            cswm::plan_measurements(original.width, v1, v2, selection_seed);
        const cswm::MeasurementSet measurements = cswm::acquire(marked, plan);
        const cswm::ReconstructionResult result = cswm::reconstruct(measurements, solver);
        if (!result.converged) {
            std::cerr << "error: solver did not converge at row v1=" << v1 << " v2=" << v2
                      << " after " << result.iterations_used << " iterations\n";
            return 4;
        }
        const cswm::QualityReport quality = cswm::psnr(marked, result.image);
        const cswm::DetectionReport report = cswm::detect(result.image, key, wrong_seeds);
        const double max_wrong =
            *std::max_element(report.wrong_responses.begin(), report.wrong_responses.end());

        csv << v1 << ',' << v2 << ',' << fmt(cswm::measurement_fraction(plan)) << ','
            << fmt(quality.psnr_db) << ',' << (report.decision ? "true" : "false") << ','
            << fmt(report.right_response) << ',' << fmt(max_wrong) << '\n';
        csv.flush();
        if (!csv) throw cswm::IoError("failed writing: " + output_csv);

        std::cout << "row v1=" << v1 << " v2=" << v2
                  << " fraction_percent=" << fmt(cswm::measurement_fraction(plan), 2)
                  << " psnr_db=" << fmt(quality.psnr_db)
                  << " detection=" << (report.decision ? "true" : "false")
                  << " iterations=" << result.iterations_used << '\n';
    }
    return 0;
}

int run_psnr(const std::string& a_path, const std::string& b_path) {
    const cswm::Image a = cswm::load_pgm(a_path);
    const cswm::Image b = cswm::load_pgm(b_path);
    std::cout << fmt(cswm::psnr(a, b).psnr_db) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wavelet-domain image watermarking, partial-DCT acquisition, and "
                 "total-variation reconstruction"};
    app.require_subcommand(1);

    cswm::SolverConfig solver;
    std::string input, output, key_path, csv_path;
    std::uint64_t seed = 1;
    std::uint64_t selection_seed = 42;
    std::uint64_t wrong_seed_base = 10000;
    std::size_t wrong_count = 100;
    double alpha = 7.0;
    int v1 = 0, v2 = 0;
    std::string psnr_a, psnr_b;

    const auto add_solver_flags = [&](CLI::App* cmd) {
        cmd->add_option("--max-iters", solver.max_iterations, "Iteration cap");
        cmd->add_option("--step", solver.step_size, "Fallback gradient step");
        cmd->add_option("--epsilon", solver.smoothing_epsilon, "TV smoothing epsilon");
        cmd->add_option("--tolerance", solver.stop_tolerance,
                        "Relative TV change that stops iterating (0 = run to the cap)");
    };

    CLI::App* embed_cmd = app.add_subcommand("embed", "Embed a seeded watermark into a PGM image");
    embed_cmd->add_option("--input", input, "Source PGM")->required();
    embed_cmd->add_option("--output", output, "Watermarked PGM (key lands at <output>.key.json)")
        ->required();
    embed_cmd->add_option("--seed", seed, "Watermark seed");
    embed_cmd->add_option("--alpha", alpha, "Watermark strength");

    CLI::App* attack_cmd = app.add_subcommand(
        "attack", "Keep a subset of DCT coefficients and reconstruct by TV minimization");
    attack_cmd->add_option("--input", input, "Image to attack (PGM)")->required();
    attack_cmd->add_option("--output", output, "Reconstructed PGM (report lands at <output>.json)")
        ->required();
    attack_cmd->add_option("--v1", v1, "Zigzag low-frequency coefficients to keep")->required();
    attack_cmd->add_option("--v2", v2, "Further coefficients to keep")->required();
    attack_cmd->add_option("--selection-seed", selection_seed, "Seed for the scattered picks");
    add_solver_flags(attack_cmd);

    CLI::App* detect_cmd =
        app.add_subcommand("detect", "Report whether a keyed watermark is present");
    detect_cmd->add_option("--input", input, "Image to test (PGM)")->required();
    detect_cmd->add_option("--key", key_path, "Key JSON produced by embed")->required();
    detect_cmd->add_option("--output", output, "Also write the report JSON here");
    detect_cmd->add_option("--csv", csv_path, "Per-key response table (index,seed,response,is_right)");
    detect_cmd->add_option("--wrong-count", wrong_count, "Number of wrong keys to try");
    detect_cmd->add_option("--wrong-seed-base", wrong_seed_base,
                           "Wrong seeds count up from this value + 1");

    CLI::App* experiment_cmd = app.add_subcommand(
        "experiment",
        "Embed, then attack+reconstruct+detect over the built-in coefficient sweep");
    experiment_cmd->add_option("--input", input, "Source PGM")->required();
    experiment_cmd
        ->add_option("--output", output, "Result CSV (manifest lands at <output>.manifest.json)")
        ->required();
    experiment_cmd->add_option("--seed", seed, "Watermark seed");
    experiment_cmd->add_option("--alpha", alpha, "Watermark strength");
    experiment_cmd->add_option("--selection-seed", selection_seed, "Seed for the scattered picks");
    experiment_cmd->add_option("--wrong-count", wrong_count, "Number of wrong keys to try");
    experiment_cmd->add_option("--wrong-seed-base", wrong_seed_base,
                               "Wrong seeds count up from this value + 1");
    add_solver_flags(experiment_cmd);

    CLI::App* psnr_cmd = app.add_subcommand("psnr", "Print the PSNR between two PGM images");
    psnr_cmd->add_option("reference", psnr_a, "Reference image")->required();
    psnr_cmd->add_option("test", psnr_b, "Image to compare")->required();

    int rc = 0;
    embed_cmd->callback([&] { rc = run_embed(input, output, seed, alpha); });
    attack_cmd->callback([&] { rc = run_attack(input, output, v1, v2, selection_seed, solver); });
    detect_cmd->callback(
        [&] { rc = run_detect(input, key_path, wrong_count, wrong_seed_base, output, csv_path); });
    experiment_cmd->callback([&] {
        rc = run_experiment(input, output, seed, alpha, selection_seed, wrong_count,
                            wrong_seed_base, solver);
    });
    psnr_cmd->callback([&] { rc = run_psnr(psnr_a, psnr_b); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const cswm::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cswm::SolverError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const cswm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
