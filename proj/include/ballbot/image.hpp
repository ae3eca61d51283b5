#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballbot {

struct Pixel {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Pixel&) const = default;
};

struct PointPx {
    int x = 0;
    int y = 0;

    bool operator==(const PointPx&) const = default;
    auto operator<=>(const PointPx&) const = default;
};

/// Row-major raster buffer, top-left origin, x rightward, y downward.
/// Out-of-bounds access through at() throws; it never wraps.
template <typename T>
class Raster {
public:
    Raster() = default;

    Raster(int width, int height, T fill = T{})
        : width_(width), height_(height) {
        if (width < 1 || height < 1) {
            throw std::invalid_argument("Raster: dimensions must be >= 1, got " +
                                        std::to_string(width) + "x" + std::to_string(height));
        }
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const { return width_; }
    int height() const { return height_; }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    T& at(int x, int y) {
        check(x, y);
        return data_[index(x, y)];
    }

    const T& at(int x, int y) const {
        check(x, y);
        return data_[index(x, y)];
    }

    // Unchecked row access for inner loops that stay in bounds by construction.
    T* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_; }
    const T* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_; }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool operator==(const Raster&) const = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + static_cast<std::size_t>(x);
    }

    void check(int x, int y) const {
        if (!in_bounds(x, y)) {
            throw std::out_of_range("Raster: (" + std::to_string(x) + ", " + std::to_string(y) +
                                    ") outside " + std::to_string(width_) + "x" +
                                    std::to_string(height_));
        }
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using RgbImage = Raster<Pixel>;
using GrayImage = Raster<std::uint8_t>;

/// Binary segmentation mask. Stored as one byte per pixel, 0 or 1.
class Mask {
public:
    Mask() = default;

    Mask(int width, int height, bool fill = false)
        : grid_(width, height, fill ? std::uint8_t{1} : std::uint8_t{0}) {}

    int width() const { return grid_.width(); }
    int height() const { return grid_.height(); }
    bool in_bounds(int x, int y) const { return grid_.in_bounds(x, y); }

    bool get(int x, int y) const { return grid_.at(x, y) != 0; }
    void set(int x, int y, bool v) { grid_.at(x, y) = v ? 1 : 0; }

    const std::uint8_t* row(int y) const { return grid_.row(y); }
    std::uint8_t* row(int y) { return grid_.row(y); }
    const std::vector<std::uint8_t>& data() const { return grid_.data(); }

    int count() const;

    bool operator==(const Mask&) const = default;

private:
    Raster<std::uint8_t> grid_;
};

inline RgbImage new_image(int width, int height, Pixel fill) {
    return RgbImage(width, height, fill);
}

struct PpmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Binary PPM (P6, maxval 255) codec. save_ppm(load_ppm(x)) == x for
/// canonical P6 bytes; load_ppm(save_ppm(img)) == img for all images.
RgbImage load_ppm(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> save_ppm(const RgbImage& img);

RgbImage load_ppm_file(const std::string& path);
void save_ppm_file(const std::string& path, const RgbImage& img);

// Viewable stage dumps: gray replicated to RGB, mask as 0/255.
RgbImage gray_to_rgb(const GrayImage& g);
RgbImage mask_to_rgb(const Mask& m);

}  // namespace ballbot
