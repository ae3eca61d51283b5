#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace oracle {

using namespace ballbot;

namespace {

int find_root(std::vector<int>& parent, int i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

void unite(std::vector<int>& parent, int a, int b) {
    parent[find_root(parent, a)] = find_root(parent, b);
}

}  // namespace

std::vector<std::vector<PointPx>> components(const Mask& m, int link_radius) {
    const int w = m.width();
    const int h = m.height();
    std::vector<int> parent(static_cast<std::size_t>(w) * h);
    std::iota(parent.begin(), parent.end(), 0);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!m.get(x, y)) continue;
            for (int dy = 0; dy <= link_radius; ++dy) {
                for (int dx = -link_radius; dx <= link_radius; ++dx) {
                    if (dy == 0 && dx <= 0) continue;  // undirected, later half only
                    const int nx = x + dx;
                    const int ny = y + dy;
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    if (m.get(nx, ny)) unite(parent, y * w + x, ny * w + nx);
                }
            }
        }
    }

    std::vector<std::vector<PointPx>> grouped(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (m.get(x, y)) grouped[find_root(parent, y * w + x)].push_back({x, y});
        }
    }
    std::vector<std::vector<PointPx>> out;
    for (auto& g : grouped) {
        if (g.empty()) continue;
        std::sort(g.begin(), g.end(), [](const PointPx& a, const PointPx& b) {
            return a.y != b.y ? a.y < b.y : a.x < b.x;
        });
        out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end(),
              [](const std::vector<PointPx>& a, const std::vector<PointPx>& b) {
                  return a[0].y != b[0].y ? a[0].y < b[0].y : a[0].x < b[0].x;
              });
    return out;
}

Mask hysteresis(const GrayImage& g, int low, int high) {
    const int w = g.width();
    const int h = g.height();
    Mask out(w, h, false);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (g.at(x, y) >= high) out.set(x, y, true);
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (out.get(x, y) || g.at(x, y) < low) continue;
                for (int dy = -1; dy <= 1 && !out.get(x, y); ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                        if (out.get(nx, ny)) {
                            out.set(x, y, true);
                            changed = true;
                            break;
                        }
                    }
                }
            }
        }
    }
    return out;
}

GrayImage mean_filter(const GrayImage& g, int kernel) {
    const int w = g.width();
    const int h = g.height();
    const int half = kernel / 2;
    GrayImage out(w, h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            long long sum = 0;
            for (int dy = -half; dy <= half; ++dy) {
                for (int dx = -half; dx <= half; ++dx) {
                    const int sx = std::clamp(x + dx, 0, w - 1);
                    const int sy = std::clamp(y + dy, 0, h - 1);
                    sum += g.at(sx, sy);
                }
            }
            out.at(x, y) = static_cast<std::uint8_t>(sum / (kernel * kernel));
        }
    }
    return out;
}

CentroidSums centroid_sums(const std::vector<PointPx>& pts) {
    CentroidSums s;
    for (const PointPx& p : pts) {
        s.sx += p.x;
        s.sy += p.y;
        ++s.n;
    }
    return s;
}

RobotPose euler_pose(const RobotPose& start, long long left_steps, long long right_steps,
                     const DriveParams& p, int substeps) {
    const double circ = 2.0 * 3.14159265358979323846 * p.wheel_radius;
    const double s_left = circ * static_cast<double>(left_steps) / p.steps_per_rev;
    const double s_right = circ * static_cast<double>(right_steps) / p.steps_per_rev;
    double x = start.x;
    double y = start.y;
    double theta = start.theta;
    for (int i = 0; i < substeps; ++i) {
        const double dv = (s_left + s_right) / 2.0 / substeps;
        const double dw = (s_right - s_left) / p.wheel_base / substeps;
        x += dv * std::cos(theta);
        y += dv * std::sin(theta);
        theta += dw;
    }
    return {x, y, normalize_angle(theta)};
}

Mask disk_mask(int w, int h, double cx, double cy, double r) {
    Mask m(w, h, false);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double dx = x - cx;
            const double dy = y - cy;
            if (dx * dx + dy * dy <= r * r) m.set(x, y, true);
        }
    }
    return m;
}

RgbImage disk_frame(int w, int h, Pixel bg, Pixel color, double cx, double cy, double r) {
    RgbImage img = new_image(w, h, bg);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double dx = x - cx;
            const double dy = y - cy;
            if (dx * dx + dy * dy <= r * r) img.at(x, y) = color;
        }
    }
    return img;
}

RgbImage square_frame(int w, int h, Pixel bg, Pixel color, int x0, int y0, int side) {
    RgbImage img = new_image(w, h, bg);
    for (int y = y0; y < y0 + side; ++y) {
        for (int x = x0; x < x0 + side; ++x) {
            img.at(x, y) = color;
        }
    }
    return img;
}

}  // namespace oracle
