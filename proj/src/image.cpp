#include "ballbot/image.hpp"

#include <cctype>
#include <fstream>

namespace ballbot {

int Mask::count() const {
    int n = 0;
    for (std::uint8_t v : grid_.data()) n += v != 0;
    return n;
}

namespace {

// One header token: digits separated by whitespace. No comment syntax;
// the interchange format is exactly "P6 <w> <h> <maxval>" + raster.
long parse_header_int(const std::vector<std::uint8_t>& bytes, std::size_t& pos,
                      const char* what) {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
        throw PpmError(std::string("ppm: expected ") + what);
    }
    long value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1000000000L) throw PpmError(std::string("ppm: ") + what + " out of range");
        ++pos;
    }
    return value;
}

}  // namespace

RgbImage load_ppm(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
        throw PpmError("ppm: missing P6 magic");
    }
    std::size_t pos = 2;
    const long width = parse_header_int(bytes, pos, "width");
    const long height = parse_header_int(bytes, pos, "height");
    const long maxval = parse_header_int(bytes, pos, "maxval");
    if (width < 1 || height < 1) throw PpmError("ppm: dimensions must be >= 1");
    if (width > 100000 || height > 100000) throw PpmError("ppm: dimensions out of range");
    if (maxval != 255) throw PpmError("ppm: maxval must be 255");
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
        throw PpmError("ppm: expected single whitespace before raster");
    }
    ++pos;

    const std::size_t expected = static_cast<std::size_t>(width) * height * 3;
    if (bytes.size() - pos < expected) throw PpmError("ppm: truncated raster");
    if (bytes.size() - pos > expected) throw PpmError("ppm: trailing bytes after raster");

    RgbImage img(static_cast<int>(width), static_cast<int>(height), Pixel{});
    Pixel* out = img.data().data();
    for (std::size_t i = 0; i < static_cast<std::size_t>(width) * height; ++i) {
        out[i] = Pixel{bytes[pos], bytes[pos + 1], bytes[pos + 2]};
        pos += 3;
    }
    return img;
}

std::vector<std::uint8_t> save_ppm(const RgbImage& img) {
    const std::string header = "P6\n" + std::to_string(img.width()) + " " +
                               std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.reserve(bytes.size() + static_cast<std::size_t>(img.width()) * img.height() * 3);
    for (const Pixel& p : img.data()) {
        bytes.push_back(p.r);
        bytes.push_back(p.g);
        bytes.push_back(p.b);
    }
    return bytes;
}

RgbImage load_ppm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PpmError("ppm: cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_ppm(bytes);
}

void save_ppm_file(const std::string& path, const RgbImage& img) {
    const std::vector<std::uint8_t> bytes = save_ppm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw PpmError("ppm: cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw PpmError("ppm: short write to " + path);
}

RgbImage gray_to_rgb(const GrayImage& g) {
    RgbImage out(g.width(), g.height(), Pixel{});
    for (std::size_t i = 0; i < g.data().size(); ++i) {
        const std::uint8_t v = g.data()[i];
        out.data()[i] = Pixel{v, v, v};
    }
    return out;
}

RgbImage mask_to_rgb(const Mask& m) {
    RgbImage out(m.width(), m.height(), Pixel{});
    for (std::size_t i = 0; i < m.data().size(); ++i) {
        const std::uint8_t v = m.data()[i] ? 255 : 0;
        out.data()[i] = Pixel{v, v, v};
    }
    return out;
}

}  // namespace ballbot
