#include "ballbot/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace ballbot {

void PipelineConfig::validate() const {
    if (hyst_low < 0 || hyst_high > 255 || hyst_low > hyst_high) {
        throw std::invalid_argument("pipeline: need 0 <= hyst_low <= hyst_high <= 255");
    }
    if (mean_kernel < 1 || mean_kernel % 2 == 0) {
        throw std::invalid_argument("pipeline: mean_kernel must be odd and >= 1");
    }
    if (link_radius < 1) throw std::invalid_argument("pipeline: link_radius must be >= 1");
    if (min_cluster < 1) throw std::invalid_argument("pipeline: min_cluster must be >= 1");
    if (!(r_min < r_max)) throw std::invalid_argument("pipeline: need r_min < r_max");
    if (!(circ_thresh > 0.0 && circ_thresh <= 1.0)) {
        throw std::invalid_argument("pipeline: need 0 < circ_thresh <= 1");
    }
}

GrayImage green_channel_extract(const RgbImage& img) {
    GrayImage out(img.width(), img.height(), 0);
    const Pixel* in = img.data().data();
    std::uint8_t* dst = out.data().data();
    const std::size_t n = img.data().size();
    for (std::size_t i = 0; i < n; ++i) {
        const int v = (int(in[i].g) - int(in[i].r)) + (int(in[i].g) - int(in[i].b));
        dst[i] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
    return out;
}

Mask threshold_hysteresis(const GrayImage& g, int low, int high) {
    if (low > high) throw std::invalid_argument("hysteresis: low must be <= high");
    const int w = g.width();
    const int h = g.height();
    Mask out(w, h, false);

    // Flood from strong seeds (>= high) through weak pixels (>= low).
    std::vector<int> stack;
    const std::uint8_t* in = g.data().data();
    for (int i = 0; i < w * h; ++i) {
        if (in[i] >= high && !out.data()[i]) {
            out.row(0)[i] = 1;
            stack.push_back(i);
            while (!stack.empty()) {
                const int idx = stack.back();
                stack.pop_back();
                const int x = idx % w;
                const int y = idx / w;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                        const int ni = ny * w + nx;
                        if (!out.row(0)[ni] && in[ni] >= low) {
                            out.row(0)[ni] = 1;
                            stack.push_back(ni);
                        }
                    }
                }
            }
        }
    }
    return out;
}

GrayImage mean_filter(const GrayImage& g, int kernel) {
    if (kernel < 1 || kernel % 2 == 0) {
        throw std::invalid_argument("mean_filter: kernel must be odd and >= 1");
    }
    if (kernel == 1) return g;

    const int w = g.width();
    const int h = g.height();
    const int half = kernel / 2;

    // Separable sum with clamped (replicated) borders; one floor division
    // by k*k at the end keeps the exact k x k neighborhood sum semantics.
    std::vector<std::int32_t> rowsum(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        const std::uint8_t* src = g.row(y);
        std::int32_t* dst = rowsum.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            std::int32_t s = 0;
            for (int dx = -half; dx <= half; ++dx) {
                s += src[std::clamp(x + dx, 0, w - 1)];
            }
            dst[x] = s;
        }
    }

    GrayImage out(w, h, 0);
    const std::int32_t denom = kernel * kernel;
    for (int y = 0; y < h; ++y) {
        std::uint8_t* dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            std::int32_t s = 0;
            for (int dy = -half; dy <= half; ++dy) {
                const int yy = std::clamp(y + dy, 0, h - 1);
                s += rowsum[static_cast<std::size_t>(yy) * w + x];
            }
            dst[x] = static_cast<std::uint8_t>(s / denom);
        }
    }
    return out;
}

Mask segment_intensity(const GrayImage& g, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("segment_intensity: lo must be <= hi");
    Mask out(g.width(), g.height(), false);
    const std::uint8_t* in = g.data().data();
    std::uint8_t* dst = out.row(0);
    for (std::size_t i = 0; i < g.data().size(); ++i) {
        dst[i] = (in[i] >= lo && in[i] <= hi) ? 1 : 0;
    }
    return out;
}

std::vector<Cluster> cluster_points(const Mask& m, int link_radius, int min_cluster) {
    if (link_radius < 1) throw std::invalid_argument("cluster_points: link_radius must be >= 1");
    const int w = m.width();
    const int h = m.height();
    const std::uint8_t* in = m.data().data();

    std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
    std::vector<Cluster> clusters;
    std::vector<int> stack;

    for (int start = 0; start < w * h; ++start) {
        if (!in[start] || visited[start]) continue;
        Cluster c;
        visited[start] = 1;
        stack.push_back(start);
        while (!stack.empty()) {
            const int idx = stack.back();
            stack.pop_back();
            const int x = idx % w;
            const int y = idx / w;
            c.points.push_back({x, y});
            for (int dy = -link_radius; dy <= link_radius; ++dy) {
                const int ny = y + dy;
                if (ny < 0 || ny >= h) continue;
                for (int dx = -link_radius; dx <= link_radius; ++dx) {
                    const int nx = x + dx;
                    if (nx < 0 || nx >= w) continue;
                    const int ni = ny * w + nx;
                    if (in[ni] && !visited[ni]) {
                        visited[ni] = 1;
                        stack.push_back(ni);
                    }
                }
            }
        }
        if (c.size() >= min_cluster) {
            std::sort(c.points.begin(), c.points.end(),
                      [](const PointPx& a, const PointPx& b) {
                          return a.y != b.y ? a.y < b.y : a.x < b.x;
                      });
            clusters.push_back(std::move(c));
        }
    }

    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        const BBox ba = bounding_box(a);
        const BBox bb = bounding_box(b);
        if (ba.min_y != bb.min_y) return ba.min_y < bb.min_y;
        return ba.min_x < bb.min_x;
    });
    return clusters;
}

std::pair<double, double> center_of_gravity(const Cluster& c) {
    if (c.points.empty()) throw std::invalid_argument("center_of_gravity: empty cluster");
    std::int64_t sx = 0;
    std::int64_t sy = 0;
    for (const PointPx& p : c.points) {
        sx += p.x;
        sy += p.y;
    }
    const double n = static_cast<double>(c.points.size());
    return {static_cast<double>(sx) / n, static_cast<double>(sy) / n};
}

BBox bounding_box(const Cluster& c) {
    if (c.points.empty()) throw std::invalid_argument("bounding_box: empty cluster");
    BBox b{c.points[0].x, c.points[0].x, c.points[0].y, c.points[0].y};
    for (const PointPx& p : c.points) {
        b.min_x = std::min(b.min_x, p.x);
        b.max_x = std::max(b.max_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

int box_size(const BBox& b) {
    return std::max(b.width(), b.height());
}

double circularity(const Cluster& c) {
    if (c.points.empty()) throw std::invalid_argument("circularity: empty cluster");
    const auto [cx, cy] = center_of_gravity(c);
    double d2_max = 0.0;
    for (const PointPx& p : c.points) {
        const double dx = p.x - cx;
        const double dy = p.y - cy;
        d2_max = std::max(d2_max, dx * dx + dy * dy);
    }
    const double d_max = std::max(std::sqrt(d2_max), 0.5);
    return static_cast<double>(c.points.size()) / (std::numbers::pi * d_max * d_max);
}

std::optional<Circle> detect_circle(const Cluster& c, const PipelineConfig& cfg) {
    if (c.points.empty()) throw std::invalid_argument("detect_circle: empty cluster");
    const auto [cx, cy] = center_of_gravity(c);
    const double r_est = std::sqrt(static_cast<double>(c.points.size()) / std::numbers::pi);
    const double circ = circularity(c);
    if (r_est < cfg.r_min || r_est > cfg.r_max || circ < cfg.circ_thresh) {
        return std::nullopt;
    }
    return Circle{cx, cy, r_est, std::min(circ, 1.0)};
}

PipelineStages run_pipeline(const RgbImage& frame, const PipelineConfig& cfg) {
    cfg.validate();
    PipelineStages st;
    st.green = green_channel_extract(frame);
    st.smoothed = mean_filter(st.green, cfg.mean_kernel);
    st.seeds = segment_intensity(st.smoothed, cfg.hyst_high, 255);
    st.mask = threshold_hysteresis(st.smoothed, cfg.hyst_low, cfg.hyst_high);
    st.clusters = cluster_points(st.mask, cfg.link_radius, cfg.min_cluster);
    for (const Cluster& c : st.clusters) {
        if (const auto circle = detect_circle(c, cfg)) {
            const BBox bb = bounding_box(c);
            st.circle = circle;
            st.detection = Detection{circle->cx, circle->cy, circle->radius, box_size(bb), bb};
            break;
        }
    }
    return st;
}

std::optional<Detection> detect_ball(const RgbImage& frame, const PipelineConfig& cfg) {
    return run_pipeline(frame, cfg).detection;
}

}  // namespace ballbot
