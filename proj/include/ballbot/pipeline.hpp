#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ballbot/image.hpp"

namespace ballbot {

struct PipelineConfig {
    int hyst_low = 60;
    int hyst_high = 120;
    int mean_kernel = 3;
    int link_radius = 1;
    int min_cluster = 50;
    double r_min = 10.0;
    double r_max = 210.0;
    double circ_thresh = 0.8;

    void validate() const;
};

/// Connected group of set mask pixels. Points are distinct and kept
/// sorted by (y, x) so a cluster has one canonical representation.
struct Cluster {
    std::vector<PointPx> points;

    int size() const { return static_cast<int>(points.size()); }
};

struct BBox {
    int min_x = 0;
    int max_x = 0;
    int min_y = 0;
    int max_y = 0;

    int width() const { return max_x - min_x + 1; }
    int height() const { return max_y - min_y + 1; }
    bool operator==(const BBox&) const = default;
};

struct Circle {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;
    double circularity = 0.0;  // clamped to [0, 1]
};

struct Detection {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;
    int box_size = 0;
    BBox bbox;
};

/// G = (G-R) + (G-B), clamped to [0, 255]. Achromatic input maps to 0.
GrayImage green_channel_extract(const RgbImage& img);

/// Keeps pixels >= low that are 8-connected (through pixels >= low) to
/// some pixel >= high.
Mask threshold_hysteresis(const GrayImage& g, int low, int high);

/// k x k box average, floor division, borders replicated. k odd, k >= 1.
GrayImage mean_filter(const GrayImage& g, int kernel);

/// mask(x, y) = lo <= g(x, y) <= hi.
Mask segment_intensity(const GrayImage& g, int lo, int hi);

/// Connected components linking set pixels within Chebyshev distance
/// link_radius (1 = 8-connectivity). Components smaller than min_cluster
/// are dropped. Sorted by size descending; equal sizes by bounding-box
/// (min_y, min_x). Scan-order independent.
std::vector<Cluster> cluster_points(const Mask& m, int link_radius, int min_cluster);

/// Mean pixel coordinate (X, Y) = (sum x / n, sum y / n), exact integer
/// sums divided once.
std::pair<double, double> center_of_gravity(const Cluster& c);

BBox bounding_box(const Cluster& c);
int box_size(const BBox& b);

/// n / (pi * d_max^2) with d_max = max distance from any pixel center to
/// the centroid, floored at 0.5. Unclamped; tiny clusters can exceed 1.
double circularity(const Cluster& c);

/// Accepts the cluster as a ball candidate iff the estimated radius
/// sqrt(n/pi) lies in [r_min, r_max] and circularity >= circ_thresh.
std::optional<Circle> detect_circle(const Cluster& c, const PipelineConfig& cfg);

/// Full detector: green extraction, mean smoothing, hysteresis threshold,
/// clustering, then the circle test on clusters from largest down.
std::optional<Detection> detect_ball(const RgbImage& frame, const PipelineConfig& cfg);

/// detect_ball with every intermediate product kept, for stage dumps.
struct PipelineStages {
    GrayImage green;
    GrayImage smoothed;
    Mask seeds;  // pixels >= hyst_high
    Mask mask;
    std::vector<Cluster> clusters;
    std::optional<Circle> circle;  // shape test result backing the detection
    std::optional<Detection> detection;
};

PipelineStages run_pipeline(const RgbImage& frame, const PipelineConfig& cfg);

}  // namespace ballbot
