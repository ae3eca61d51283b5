#include <charconv>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ballbot/controller.hpp"
#include "ballbot/image.hpp"
#include "ballbot/pipeline.hpp"
#include "ballbot/rng.hpp"
#include "ballbot/scenario.hpp"
#include "ballbot/sim.hpp"

namespace fs = std::filesystem;
using namespace ballbot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoDetection = 3;
constexpr int kExitNoConvergence = 4;

// Registers --key flags and replays the ones the user actually passed on
// top of a scenario, so flags beat the file and the file beats defaults.
class FlagSet {
public:
    void add_int(CLI::App* cmd, const std::string& key, const std::string& help,
                 std::function<void(Scenario&, long long)> set) {
        ints_.push_back(0);
        long long* slot = &ints_.back();
        CLI::Option* opt = cmd->add_option("--" + key, *slot, help);
        apply_.emplace_back(opt, [slot, set = std::move(set)](Scenario& sc) { set(sc, *slot); });
    }

    void add_double(CLI::App* cmd, const std::string& key, const std::string& help,
                    std::function<void(Scenario&, double)> set) {
        doubles_.push_back(0.0);
        double* slot = &doubles_.back();
        CLI::Option* opt = cmd->add_option("--" + key, *slot, help);
        apply_.emplace_back(opt, [slot, set = std::move(set)](Scenario& sc) { set(sc, *slot); });
    }

    void apply(Scenario& sc) const {
        for (const auto& [opt, fn] : apply_) {
            if (opt->count() > 0) fn(sc);
        }
    }

private:
    std::deque<long long> ints_;
    std::deque<double> doubles_;
    std::vector<std::pair<CLI::Option*, std::function<void(Scenario&)>>> apply_;
};

void add_pipeline_flags(CLI::App* cmd, FlagSet& fs) {
    fs.add_int(cmd, "hyst_low", "weak threshold", [](Scenario& s, long long v) {
        s.pipeline.hyst_low = static_cast<int>(v);
    });
    fs.add_int(cmd, "hyst_high", "strong (seed) threshold", [](Scenario& s, long long v) {
        s.pipeline.hyst_high = static_cast<int>(v);
    });
    fs.add_int(cmd, "mean_kernel", "mean filter size, odd", [](Scenario& s, long long v) {
        s.pipeline.mean_kernel = static_cast<int>(v);
    });
    fs.add_int(cmd, "link_radius", "cluster link distance", [](Scenario& s, long long v) {
        s.pipeline.link_radius = static_cast<int>(v);
    });
    fs.add_int(cmd, "min_cluster", "minimum cluster pixel count", [](Scenario& s, long long v) {
        s.pipeline.min_cluster = static_cast<int>(v);
    });
    fs.add_double(cmd, "r_min", "minimum accepted radius",
                  [](Scenario& s, double v) { s.pipeline.r_min = v; });
    fs.add_double(cmd, "r_max", "maximum accepted radius",
                  [](Scenario& s, double v) { s.pipeline.r_max = v; });
    fs.add_double(cmd, "circ_thresh", "circularity acceptance threshold",
                  [](Scenario& s, double v) { s.pipeline.circ_thresh = v; });
}

void add_controller_flags(CLI::App* cmd, FlagSet& fs) {
    fs.add_int(cmd, "frame_center_x", "image center x", [](Scenario& s, long long v) {
        s.controller.frame_center_x = static_cast<int>(v);
    });
    fs.add_int(cmd, "dead_zone", "straight-ahead band, px", [](Scenario& s, long long v) {
        s.controller.dead_zone = static_cast<int>(v);
    });
    fs.add_int(cmd, "fwd_min", "minimum box size to track", [](Scenario& s, long long v) {
        s.controller.fwd_min = static_cast<int>(v);
    });
    fs.add_int(cmd, "stop_lo", "stop band lower edge", [](Scenario& s, long long v) {
        s.controller.stop_lo = static_cast<int>(v);
    });
    fs.add_int(cmd, "stop_hi", "stop band upper edge", [](Scenario& s, long long v) {
        s.controller.stop_hi = static_cast<int>(v);
    });
}

void add_drive_flags(CLI::App* cmd, FlagSet& fs) {
    fs.add_double(cmd, "step_rate", "full-speed step rate, steps/s",
                  [](Scenario& s, double v) { s.drive.step_rate = v; });
    fs.add_int(cmd, "steps_per_rev", "steps per wheel revolution", [](Scenario& s, long long v) {
        s.drive.steps_per_rev = static_cast<int>(v);
    });
    fs.add_double(cmd, "wheel_radius", "wheel radius, m",
                  [](Scenario& s, double v) { s.drive.wheel_radius = v; });
    fs.add_double(cmd, "wheel_base", "wheel separation, m",
                  [](Scenario& s, double v) { s.drive.wheel_base = v; });
    fs.add_double(cmd, "tick", "control loop period, s",
                  [](Scenario& s, double v) { s.drive.tick = v; });
}

void add_camera_flags(CLI::App* cmd, FlagSet& fs) {
    fs.add_double(cmd, "focal_px", "focal length, px",
                  [](Scenario& s, double v) { s.camera.focal_px = v; });
    fs.add_double(cmd, "cam_height", "camera height, m",
                  [](Scenario& s, double v) { s.camera.cam_height = v; });
    fs.add_double(cmd, "ball_radius_m", "physical ball radius, m",
                  [](Scenario& s, double v) { s.camera.ball_radius_m = v; });
}

void print_defaults(std::ostream& out) {
    const PipelineConfig p;
    const ControllerParams c;
    const DriveParams d;
    const CameraModel cam;
    const Scenario sc;
    out << "# defaults; override via scenario file keys or --<key> flags\n";
    out << "[pipeline]\n";
    out << "hyst_low = " << p.hyst_low << "\n";
    out << "hyst_high = " << p.hyst_high << "\n";
    out << "mean_kernel = " << p.mean_kernel << "\n";
    out << "link_radius = " << p.link_radius << "\n";
    out << "min_cluster = " << p.min_cluster << "\n";
    out << "r_min = " << p.r_min << "\n";
    out << "r_max = " << p.r_max << "\n";
    out << "circ_thresh = " << p.circ_thresh << "\n";
    out << "[controller]\n";
    out << "frame_center_x = " << c.frame_center_x << "\n";
    out << "dead_zone = " << c.dead_zone << "\n";
    out << "fwd_min = " << c.fwd_min << "\n";
    out << "stop_lo = " << c.stop_lo << "\n";
    out << "stop_hi = " << c.stop_hi << "\n";
    out << "[drive]\n";
    out << "step_rate = " << d.step_rate << "\n";
    out << "steps_per_rev = " << d.steps_per_rev << "\n";
    out << "wheel_radius = " << d.wheel_radius << "\n";
    out << "wheel_base = " << d.wheel_base << "\n";
    out << "tick = " << d.tick << "\n";
    out << "[camera]\n";
    out << "focal_px = " << cam.focal_px << "\n";
    out << "cam_height = " << cam.cam_height << "\n";
    out << "ball_radius_m = " << cam.ball_radius_m << "\n";
    out << "[world]\n";
    out << "background = " << sc.background << "\n";
    out << "ball_color = " << int(sc.ball_color.r) << "," << int(sc.ball_color.g) << ","
        << int(sc.ball_color.b) << "\n";
    out << "noise_density = " << sc.noise_density << "\n";
    out << "lighting_scale = " << sc.lighting_scale << "\n";
    out << "seed = " << sc.seed << "\n";
    out << "max_ticks = " << sc.max_ticks << "\n";
}

// Kept clusters as a grayscale ranking: brightest is the largest cluster.
RgbImage clusters_image(const std::vector<Cluster>& clusters, int w, int h) {
    GrayImage g(w, h, 0);
    int level = 255;
    for (const Cluster& c : clusters) {
        for (const PointPx& p : c.points) {
            g.row(p.y)[p.x] = static_cast<std::uint8_t>(level);
        }
        level = std::max(level - 40, 40);
    }
    return gray_to_rgb(g);
}

void write_detection_txt(const fs::path& path, const PipelineStages& st) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    char buf[256];
    if (st.detection) {
        std::snprintf(buf, sizeof(buf),
                      "detected=true\ncx=%.6f\ncy=%.6f\nradius=%.6f\nbox=%d\ncircularity=%.6f\n",
                      st.detection->cx, st.detection->cy, st.detection->radius,
                      st.detection->box_size, st.circle ? st.circle->circularity : 0.0);
    } else {
        std::snprintf(buf, sizeof(buf),
                      "detected=false\ncx=0\ncy=0\nradius=0\nbox=0\ncircularity=0\n");
    }
    out << buf;
}

int cmd_pipeline(const std::string& input, const std::string& outdir, const Scenario& cfg) {
    const RgbImage img = load_ppm_file(input);
    const PipelineStages st = run_pipeline(img, cfg.pipeline);

    fs::create_directories(outdir);
    const fs::path dir(outdir);
    save_ppm_file((dir / "01_green.ppm").string(), gray_to_rgb(st.green));
    save_ppm_file((dir / "02_mean.ppm").string(), gray_to_rgb(st.smoothed));
    save_ppm_file((dir / "03_seeds.ppm").string(), mask_to_rgb(st.seeds));
    save_ppm_file((dir / "04_mask.ppm").string(), mask_to_rgb(st.mask));
    save_ppm_file((dir / "05_clusters.ppm").string(),
                  clusters_image(st.clusters, img.width(), img.height()));
    write_detection_txt(dir / "detection.txt", st);

    if (st.detection) {
        std::printf("detected cx=%.2f cy=%.2f radius=%.2f box=%d\n", st.detection->cx,
                    st.detection->cy, st.detection->radius, st.detection->box_size);
        return kExitOk;
    }
    std::printf("no detection\n");
    return kExitNoDetection;
}

int cmd_decide(const std::string& cx_arg, const std::string& box_arg,
               const ControllerParams& params) {
    long long box = 0;
    {
        const auto [ptr, ec] = std::from_chars(box_arg.data(), box_arg.data() + box_arg.size(), box);
        if (ec != std::errc{} || ptr != box_arg.data() + box_arg.size()) {
            std::cerr << "decide: box must be an integer, got '" << box_arg << "'\n";
            return kExitInput;
        }
    }
    Command cmd;
    if (cx_arg == "none") {
        params.validate();
        cmd = Command::Search;
    } else {
        double cx = 0.0;
        try {
            std::size_t used = 0;
            cx = std::stod(cx_arg, &used);
            if (used != cx_arg.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            std::cerr << "decide: cx must be a number or 'none', got '" << cx_arg << "'\n";
            return kExitInput;
        }
        cmd = decide(cx, static_cast<int>(box), params);
    }
    std::printf("%c\n", command_letter(cmd));
    return kExitOk;
}

class FrameDumper : public FrameSink {
public:
    explicit FrameDumper(fs::path dir) : dir_(std::move(dir)) {}

    void on_frame(int tick, const RgbImage& frame) override {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%06d.ppm", tick);
        save_ppm_file((dir_ / name).string(), frame);
    }

private:
    fs::path dir_;
};

int cmd_simulate(const Scenario& sc, const std::string& outdir, bool dump_frames) {
    fs::create_directories(outdir);
    const fs::path dir(outdir);

    FrameDumper dumper(dir);
    const SimResult res = run_closed_loop(sc, dump_frames ? &dumper : nullptr);

    std::ofstream trace(dir / "trace.csv");
    if (!trace) throw std::runtime_error("cannot write " + (dir / "trace.csv").string());
    write_trace(trace, res, sc);

    const Command last = res.trace.empty() ? Command::Search : res.trace.back().command;
    std::printf("final pose: x=%.6f y=%.6f theta=%.6f\n", res.final_pose.x, res.final_pose.y,
                res.final_pose.theta);
    std::printf("final command: %c\n", command_letter(last));

    if (sc.expect_converge && !res.issued_stop) return kExitNoConvergence;
    return kExitOk;
}

int cmd_render(const Scenario& sc, const std::string& out_path) {
    XorShift64Star rng(sc.seed);
    const RgbImage frame = render_frame(sc, sc.ball_position(0.0), sc.robot_start, rng);
    save_ppm_file(out_path, frame);
    std::printf("wrote %s\n", out_path.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ball-following robot: detector, controller, and closed-loop simulator"};
    app.require_subcommand(0, 1);

    bool show_config = false;
    app.add_flag("--show-config", show_config, "print the defaults table and exit");

    auto* pipe_cmd =
        app.add_subcommand("pipeline", "run the detector stage by stage on one PPM image");
    std::string pipe_input;
    pipe_cmd->add_option("input", pipe_input, "input image, binary PPM (P6)")->required();
    std::string pipe_out = ".";
    pipe_cmd->add_option("-o,--out", pipe_out, "output directory for stage dumps");
    std::string pipe_config;
    pipe_cmd->add_option("--config", pipe_config, "key = value config file");
    FlagSet pipe_flags;
    add_pipeline_flags(pipe_cmd, pipe_flags);

    auto* decide_cmd = app.add_subcommand("decide", "map one detection to a command letter");
    std::string cx_arg;
    decide_cmd->add_option("cx", cx_arg, "centroid x in pixels, or 'none'")->required();
    std::string box_arg;
    decide_cmd->add_option("box", box_arg, "bounding box size in pixels")->required();
    FlagSet decide_flags;
    add_controller_flags(decide_cmd, decide_flags);

    auto* sim_cmd = app.add_subcommand("simulate", "run the closed loop on a scenario file");
    std::string sim_scn;
    sim_cmd->add_option("scenario", sim_scn, "scenario file")->required();
    std::string sim_out = ".";
    sim_cmd->add_option("-o,--out", sim_out, "output directory for trace.csv");
    bool sim_dump = false;
    sim_cmd->add_flag("--dump-frames", sim_dump, "write every frame as frame_NNNNNN.ppm");
    FlagSet sim_flags;
    add_pipeline_flags(sim_cmd, sim_flags);
    add_controller_flags(sim_cmd, sim_flags);
    add_drive_flags(sim_cmd, sim_flags);
    add_camera_flags(sim_cmd, sim_flags);

    auto* render_cmd =
        app.add_subcommand("render", "render a scenario's first frame (t=0) to a PPM");
    std::string render_scn;
    render_cmd->add_option("scenario", render_scn, "scenario file")->required();
    std::string render_out = "frame.ppm";
    render_cmd->add_option("-o,--out", render_out, "output PPM path");
    FlagSet render_flags;
    add_pipeline_flags(render_cmd, render_flags);
    add_controller_flags(render_cmd, render_flags);
    add_drive_flags(render_cmd, render_flags);
    add_camera_flags(render_cmd, render_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (show_config) {
        print_defaults(std::cout);
        return kExitOk;
    }

    try {
        if (pipe_cmd->parsed()) {
            Scenario cfg;
            if (!pipe_config.empty()) cfg = load_scenario(pipe_config);
            pipe_flags.apply(cfg);
            cfg.pipeline.validate();
            return cmd_pipeline(pipe_input, pipe_out, cfg);
        }
        if (decide_cmd->parsed()) {
            Scenario cfg;
            decide_flags.apply(cfg);
            cfg.controller.validate();
            return cmd_decide(cx_arg, box_arg, cfg.controller);
        }
        if (sim_cmd->parsed()) {
            Scenario sc = load_scenario(sim_scn);
            sim_flags.apply(sc);
            sc.validate();
            return cmd_simulate(sc, sim_out, sim_dump);
        }
        if (render_cmd->parsed()) {
            Scenario sc = load_scenario(render_scn);
            render_flags.apply(sc);
            sc.validate();
            return cmd_render(sc, render_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    std::cerr << app.help();
    return kExitInput;
}
