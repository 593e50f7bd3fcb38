#include "cswm/image.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>

#include "cswm/kernels.hpp"

namespace cswm {

Image::Image(int w, int h, double fill) : width(w), height(h) {
    if (w <= 0 || h <= 0) {
        throw DimensionError("image dimensions must be positive");
    }
    pixels.assign(static_cast<std::size_t>(w) * h, fill);
}

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            break;
        }
        ch = in.get();
    }
    while (ch != EOF && !std::isspace(ch)) {
        tok.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    return tok;
}

int parse_header_int(std::istream& in, const char* what) {
    const std::string tok = next_token(in);
    if (tok.empty()) throw IoError(std::string("truncated PGM header: missing ") + what);
    for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw IoError(std::string("malformed PGM header: bad ") + what + " '" + tok + "'");
        }
    }
    return std::stoi(tok);
}

}  // namespace

Image load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') {
        throw IoError("'" + path + "' is not a binary PGM (P5) file");
    }

    const int width = parse_header_int(in, "width");
    const int height = parse_header_int(in, "height");
    const int maxval = parse_header_int(in, "max value");
    if (width <= 0 || height <= 0) throw IoError("PGM with non-positive dimensions");
    if (maxval <= 0 || maxval > 255) {
        throw IoError("unsupported PGM max value " + std::to_string(maxval) + " (need 8-bit)");
    }
    if (width % 4 != 0 || height % 4 != 0) {
        throw DimensionError("image dimensions " + std::to_string(width) + "x" +
                             std::to_string(height) + " are not divisible by 4");
    }

    Image img(width, height);
    std::vector<std::uint8_t> raw(img.pixel_count());
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
        throw IoError("'" + path + "' is truncated");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) img.pixels[i] = raw[i];
    return img;
}

Image quantize(const Image& image) {
    Image out = image;
    for (double& v : out.pixels) {
        double q = std::round(v);  // rounds half away from zero
        if (q < 0.0) q = 0.0;
        if (q > 255.0) q = 255.0;
        v = q;
    }
    return out;
}

void save_pgm(const Image& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    std::vector<std::uint8_t> raw(image.pixel_count());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        double q = std::round(image.pixels[i]);
        if (q < 0.0) q = 0.0;
        if (q > 255.0) q = 255.0;
        raw[i] = static_cast<std::uint8_t>(q);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("write to '" + path + "' failed");
}

QualityReport psnr(const Image& reference, const Image& test) {
    if (!reference.same_size(test)) {
        throw DimensionError("psnr requires equal image dimensions");
    }
    const double sq = kernels::sum_sq_diff(reference.pixels.data(), test.pixels.data(),
                                           reference.pixel_count());
    QualityReport report;
    report.mse = sq / static_cast<double>(reference.pixel_count());
    report.psnr_db = report.mse > 0.0
                         ? 10.0 * std::log10(255.0 * 255.0 / report.mse)
                         : std::numeric_limits<double>::infinity();
    return report;
}

}  // namespace cswm
