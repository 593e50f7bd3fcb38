// Exercises the installed `cswm` binary end to end: real process launches,
// real files, asserted exit codes.  Invoke as
//   cli_tests [doctest options] -- <cswm binary> <sample pgm>
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cswm/image.hpp"
#include "cswm/watermark.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cswm;
std::string g_sample;
fs::path g_dir;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    static int counter = 0;
    const fs::path out_file = g_dir / ("stdout." + std::to_string(counter++));
    const std::string cmd =
        g_cswm + " " + args + " > " + out_file.string() + " 2> " + out_file.string() + ".err";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    return r;
}

// first "key=value" line payload in the captured stdout
std::string stdout_value(const std::string& out, const std::string& key) {
    std::istringstream in(out);
    std::string line;
    const std::string prefix = key + "=";
    while (std::getline(in, line)) {
        const auto pos = line.find(prefix);
        if (pos != std::string::npos) return line.substr(pos + prefix.size());
    }
    return {};
}

cswm::Image smooth_scene(int n) {
    cswm::Image img(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) img.at(i, j) = 40.0 + 1.5 * i + 0.75 * j;
    return img;
}

fs::path write_scene(const std::string& name, const cswm::Image& img) {
    const fs::path p = g_dir / name;
    cswm::save_pgm(img, p.string());
    return p;
}

int count_lines(const std::string& text) {
    int n = 0;
    for (const char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("embed writes a marked image and its key") {
    const fs::path src = write_scene("embed_src.pgm", smooth_scene(32));
    const fs::path dst = g_dir / "embed_out.pgm";

    const RunResult r = run("embed --input " + src.string() + " --output " + dst.string() +
                            " --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dst));
    CHECK(fs::exists(dst.string() + ".key.json"));

    const double quality = std::stod(stdout_value(r.out, "psnr_db"));
    CHECK(quality > 35.0);
    CHECK(quality < 55.0);

    const nlohmann::json key = nlohmann::json::parse(slurp(dst.string() + ".key.json"));
    CHECK(key.at("seed").get<std::uint64_t>() == 5);
    CHECK(key.at("length").get<std::size_t>() == 64);
    CHECK(key.at("distribution").get<std::string>() == "normal");
}

TEST_CASE("embed reports i/o failures and bad images distinctly") {
    CHECK(run("embed --input " + (g_dir / "no_such.pgm").string() + " --output " +
              (g_dir / "x.pgm").string())
              .exit_code == 2);

    // width not divisible by 4
    const fs::path odd = g_dir / "odd.pgm";
    {
        std::ofstream out(odd, std::ios::binary);
        out << "P5\n5 4\n255\n";
        out.write("aaaaaaaaaaaaaaaaaaaa", 20);
    }
    CHECK(run("embed --input " + odd.string() + " --output " + (g_dir / "y.pgm").string())
              .exit_code == 1);
}

TEST_CASE("attack reconstructs and reports the kept fraction") {
    const fs::path src = write_scene("attack_src.pgm", smooth_scene(16));
    const fs::path dst = g_dir / "attack_out.pgm";

    const RunResult r = run("attack --input " + src.string() + " --output " + dst.string() +
                            " --v1 200 --v2 20 --selection-seed 9");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dst));
    CHECK(stdout_value(r.out, "fraction_percent") == "85.94");
    CHECK(stdout_value(r.out, "converged") == "true");

    const nlohmann::json report = nlohmann::json::parse(slurp(dst.string() + ".json"));
    CHECK(report.at("grid_side").get<int>() == 16);
    CHECK(report.at("v1_count").get<int>() == 200);
    CHECK(report.at("v2_count").get<int>() == 20);
    CHECK(report.at("converged").get<bool>());
    CHECK(report.at("data_residual").get<double>() <= 1e-9);
}

TEST_CASE("attack rejects over-budget coefficient counts") {
    const fs::path src = write_scene("attack_src2.pgm", smooth_scene(16));
    const RunResult r = run("attack --input " + src.string() + " --output " +
                            (g_dir / "z.pgm").string() + " --v1 300 --v2 0");
    CHECK(r.exit_code == 1);
}

TEST_CASE("attack signals non-convergence through the exit code") {
    const fs::path src = write_scene("attack_src3.pgm", smooth_scene(32));
    const RunResult r = run("attack --input " + src.string() + " --output " +
                            (g_dir / "nc.pgm").string() +
                            " --v1 40 --v2 0 --max-iters 1 --tolerance 1e-9");
    CHECK(r.exit_code == 4);
    CHECK(stdout_value(r.out, "converged") == "false");
}

TEST_CASE("detect finds the embedded key and tabulates responses") {
    const fs::path src = write_scene("detect_src.pgm", smooth_scene(64));
    const fs::path marked = g_dir / "detect_marked.pgm";
    REQUIRE(run("embed --input " + src.string() + " --output " + marked.string() + " --seed 5")
                .exit_code == 0);

    const fs::path csv = g_dir / "responses.csv";
    const RunResult r = run("detect --input " + marked.string() + " --key " + marked.string() +
                            ".key.json --wrong-count 20 --csv " + csv.string());
    CHECK(r.exit_code == 0);

    const nlohmann::json report = nlohmann::json::parse(r.out);
    CHECK(report.at("decision").get<bool>());
    CHECK(report.at("wrong_key_count").get<std::size_t>() == 20);
    CHECK(report.at("right_response").get<double>() >
          report.at("max_wrong_response").get<double>());

    const std::string table = slurp(csv);
    CHECK(count_lines(table) == 21 + 1);
    CHECK(table.rfind("index,seed,response,is_right\n", 0) == 0);
    CHECK(table.find("0,5,") != std::string::npos);
    CHECK(table.find(",true\n") != std::string::npos);
    CHECK(table.find(",false\n") != std::string::npos);
}

TEST_CASE("detect on an unmarked flat image exits 3") {
    const fs::path flat = write_scene("flat.pgm", cswm::Image(32, 32, 128.0));
    const fs::path key = g_dir / "flat_key.json";
    cswm::save_key(key.string(), cswm::WatermarkKey{5, 64});

    const RunResult r = run("detect --input " + flat.string() + " --key " + key.string() +
                            " --wrong-count 10");
    CHECK(r.exit_code == 3);
    const nlohmann::json report = nlohmann::json::parse(r.out);
    CHECK_FALSE(report.at("decision").get<bool>());
}

TEST_CASE("detect rejects a key sized for a different image") {
    const fs::path big = write_scene("big.pgm", smooth_scene(64));
    const fs::path key = g_dir / "small_key.json";
    cswm::save_key(key.string(), cswm::WatermarkKey{5, 64});  // 32x32-sized mark
    CHECK(run("detect --input " + big.string() + " --key " + key.string()).exit_code == 1);
}

TEST_CASE("experiment refuses coefficient budgets beyond the grid") {
    const fs::path small = write_scene("exp_small.pgm", smooth_scene(32));
    const RunResult r = run("experiment --input " + small.string() + " --output " +
                            (g_dir / "exp.csv").string());
    CHECK(r.exit_code == 1);
}

TEST_CASE("psnr subcommand") {
    cswm::Image base = smooth_scene(16);
    const fs::path a = write_scene("psnr_a.pgm", base);
    for (double& p : base.pixels) p += 1.0;
    const fs::path b = write_scene("psnr_b.pgm", base);
    const fs::path c = write_scene("psnr_c.pgm", smooth_scene(32));

    RunResult r = run("psnr " + a.string() + " " + a.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "inf\n");

    r = run("psnr " + a.string() + " " + b.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out == "48.130804\n");

    CHECK(run("psnr " + a.string() + " " + c.string()).exit_code == 1);
}

TEST_CASE("argument errors surface as exit code 1") {
    CHECK(run("").exit_code == 1);                  // missing subcommand
    CHECK(run("embed --garbage").exit_code == 1);   // unknown flag
    CHECK(run("warp").exit_code == 1);              // unknown subcommand
    CHECK(run("--help").exit_code == 0);
}

int main(int argc, char** argv) {
    int own_argc = argc;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--") {
            own_argc = i;
            if (i + 1 < argc) g_cswm = argv[i + 1];
            if (i + 2 < argc) g_sample = argv[i + 2];
            break;
        }
    }
    if (g_cswm.empty()) {
        std::fprintf(stderr, "usage: cli_tests [doctest options] -- <cswm binary> <sample pgm>\n");
        return 1;
    }
    g_dir = fs::temp_directory_path() / "cswm_cli_tests";
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    doctest::Context ctx;
    ctx.applyCommandLine(own_argc, argv);
    return ctx.run();
}
