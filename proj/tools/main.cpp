#include <CLI11.hpp>

#include <atomic>
#include <charconv>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "mwto/mwto.h"
#include "png_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;

struct ImageDeleter {
    void operator()(mwto_image* p) const { mwto_image_free(p); }
};
struct MapDeleter {
    void operator()(mwto_map* p) const { mwto_map_free(p); }
};
struct ResultDeleter {
    void operator()(mwto_result* p) const { mwto_result_free(p); }
};
using ImagePtr = std::unique_ptr<mwto_image, ImageDeleter>;
using MapPtr = std::unique_ptr<mwto_map, MapDeleter>;
using ResultPtr = std::unique_ptr<mwto_result, ResultDeleter>;

[[noreturn]] void die(const std::string& message) {
    throw std::runtime_error(message);
}

void check(mwto_status status, const char* what) {
    if (status != MWTO_OK)
        die(std::string(what) + ": " + mwto_last_error());
}

ImagePtr load_image(const std::string& path) {
    const pngio::Rgb8 png = pngio::read_rgb8(path);
    mwto_image* img = nullptr;
    check(mwto_image_from_bytes(png.data.data(), png.rows, png.cols, &img), path.c_str());
    return ImagePtr(img);
}

void save_image(const std::string& path, const mwto_image* img) {
    const int rows = mwto_image_rows(img);
    const int cols = mwto_image_cols(img);
    std::vector<uint8_t> bytes(static_cast<size_t>(rows) * cols * 3);
    check(mwto_image_to_bytes(img, bytes.data()), path.c_str());
    pngio::write_rgb8(path, rows, cols, bytes.data());
}

void save_map(const std::string& path, const mwto_map* map) {
    const int rows = mwto_map_rows(map);
    const int cols = mwto_map_cols(map);
    std::vector<uint8_t> bytes(static_cast<size_t>(rows) * cols);
    check(mwto_map_to_bytes(map, bytes.data()), path.c_str());
    pngio::write_gray8(path, rows, cols, bytes.data());
}

// Locale-independent formatting; CSV output must use dot decimals.
std::string fmt_double(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const int n = std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf, static_cast<size_t>(n));
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// ---- dehaze -------------------------------------------------------------

struct DehazeArgs {
    std::vector<std::string> inputs;
    std::string output;
    mwto_dehaze_options options{};
    bool emit_transmission = false;
    int jobs = 1;
};

std::string transmission_path(const fs::path& image_path) {
    fs::path p = image_path;
    p.replace_filename(p.stem().string() + "_t.png");
    return p.string();
}

int run_dehaze(const DehazeArgs& args) {
    const bool dir_mode = args.inputs.size() > 1;
    if (dir_mode) {
        fs::create_directories(args.output);
    }

    std::mutex io_mutex;
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= args.inputs.size() || failed.load())
                return;
            const std::string& input = args.inputs[i];
            try {
                const auto start = std::chrono::steady_clock::now();
                ImagePtr img = load_image(input);
                mwto_result* raw = nullptr;
                check(mwto_dehaze(img.get(), &args.options, &raw), input.c_str());
                ResultPtr result(raw);
                const auto stop = std::chrono::steady_clock::now();
                const double ms =
                    std::chrono::duration<double, std::milli>(stop - start).count();

                fs::path out_path = dir_mode
                    ? fs::path(args.output) / (fs::path(input).stem().string() + "_dehazed.png")
                    : fs::path(args.output);
                save_image(out_path.string(), mwto_result_image(result.get()));
                if (args.emit_transmission)
                    save_map(transmission_path(out_path), mwto_result_transmission(result.get()));

                double a[3];
                mwto_result_airlight(result.get(), a);
                std::lock_guard<std::mutex> lock(io_mutex);
                std::cout << input << " -> " << out_path.string()
                          << "  airlight=(" << fmt_double(a[0]) << "," << fmt_double(a[1])
                          << "," << fmt_double(a[2]) << ")"
                          << " iterations=" << mwto_result_iterations(result.get())
                          << " time=" << fmt_double(ms) << "ms\n";
                if (!mwto_result_converged(result.get()))
                    std::cout << "warning: solver did not converge within the iteration cap for "
                              << input << "\n";
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(io_mutex);
                std::cerr << "error: " << e.what() << "\n";
                failed.store(true);
                return;
            }
        }
    };

    const int jobs = std::max(1, args.jobs);
    if (jobs == 1 || args.inputs.size() == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    return failed.load() ? kExitUsage : 0;
}

// ---- simulate -----------------------------------------------------------

struct SimulateArgs {
    std::string clear_path;
    std::string output;
    std::string depth_path;
    std::string emit_t_path;
    double t_constant = -1.0;
    double beta = 1.0;
    double dmin = 0.0;
    double dmax = 1.0;
    std::vector<double> airlight{1.0, 1.0, 1.0};
};

int run_simulate(const SimulateArgs& args) {
    if (!args.depth_path.empty() && args.t_constant >= 0.0)
        die("simulate: provide either --depth or --t, not both");
    if (args.depth_path.empty() && args.t_constant < 0.0)
        die("simulate: one of --depth or --t is required");

    ImagePtr clear = load_image(args.clear_path);
    const int rows = mwto_image_rows(clear.get());
    const int cols = mwto_image_cols(clear.get());

    MapPtr t;
    if (!args.depth_path.empty()) {
        const pngio::Gray16 depth_png = pngio::read_gray16(args.depth_path);
        if (depth_png.rows != rows || depth_png.cols != cols)
            die("simulate: depth dimensions differ from the clear image");
        std::vector<double> depth(depth_png.data.size());
        for (size_t i = 0; i < depth.size(); ++i)
            depth[i] = args.dmin + (args.dmax - args.dmin) * (depth_png.data[i] / 65535.0);
        mwto_map* depth_map = nullptr;
        check(mwto_map_create(depth.data(), rows, cols, &depth_map), "simulate");
        MapPtr depth_holder(depth_map);
        mwto_map* raw = nullptr;
        check(mwto_transmission_from_depth(depth_map, args.beta, &raw), "simulate");
        t.reset(raw);
    } else {
        if (args.t_constant <= 0.0 || args.t_constant > 1.0)
            die("simulate: --t must lie in (0,1]");
        mwto_map* raw = nullptr;
        check(mwto_map_constant(args.t_constant, rows, cols, &raw), "simulate");
        t.reset(raw);
    }

    if (args.airlight.size() != 3)
        die("simulate: --airlight needs three comma-separated values");
    const double a[3] = {args.airlight[0], args.airlight[1], args.airlight[2]};
    mwto_image* raw_hazy = nullptr;
    check(mwto_apply_haze(clear.get(), t.get(), a, &raw_hazy), "simulate");
    ImagePtr hazy(raw_hazy);

    save_image(args.output, hazy.get());
    if (!args.emit_t_path.empty())
        save_map(args.emit_t_path, t.get());
    return 0;
}

// ---- metrics ------------------------------------------------------------

struct MetricsArgs {
    std::string ref_path;
    std::string test_path;
    std::string hazy_path;
    std::string csv_path;
    double tau = 0.0; // <=0 selects the library default
};

int run_metrics(const MetricsArgs& args) {
    ImagePtr ref = load_image(args.ref_path);
    ImagePtr test = load_image(args.test_path);

    mwto_reference_report rep{};
    check(mwto_compare(ref.get(), test.get(), &rep), "metrics");

    std::string header = "path,mse,psnr,ssim";
    std::string row = args.test_path + "," + fmt_double(rep.mse) + "," + fmt_double(rep.psnr) +
                      "," + fmt_double(rep.ssim);
    if (!args.hazy_path.empty()) {
        ImagePtr hazy = load_image(args.hazy_path);
        mwto_visibility_report vis{};
        check(mwto_visibility(hazy.get(), test.get(), args.tau, &vis), "metrics");
        header += ",e,sigma,rbar";
        row += "," + fmt_double(vis.e) + "," + fmt_double(vis.sigma) + "," +
               fmt_double(vis.rbar);
    }

    if (args.csv_path.empty()) {
        std::cout << header << "\n" << row << "\n";
    } else {
        std::ofstream out(args.csv_path);
        if (!out)
            die("metrics: cannot write " + args.csv_path);
        out << header << "\n" << row << "\n";
    }
    return 0;
}

// ---- bench --------------------------------------------------------------

struct BenchArgs {
    std::vector<int> sizes{256, 512, 1024};
    int reps = 3;
    uint64_t seed = 1;
    int levels = 2;
    int max_iters = 100;
    std::string csv_path;
};

// Block-piecewise-constant scene with a dark channel per block, hazed with
// a seeded block-constant transmission; content only needs to be realistic
// enough that the solver does representative work.
ImagePtr make_bench_fixture(int size, int block, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<uint8_t> rgb(static_cast<size_t>(size) * size * 3);
    for (int br = 0; br < size / block; ++br) {
        for (int bc = 0; bc < size / block; ++bc) {
            double color[3] = {uniform01(rng), uniform01(rng), uniform01(rng)};
            color[rng() % 3] = 0.02 * uniform01(rng);
            for (int r = br * block; r < (br + 1) * block; ++r) {
                for (int c = bc * block; c < (bc + 1) * block; ++c) {
                    const size_t off = (static_cast<size_t>(r) * size + c) * 3;
                    for (int ch = 0; ch < 3; ++ch)
                        rgb[off + ch] = static_cast<uint8_t>(std::lround(255.0 * color[ch]));
                }
            }
        }
    }
    mwto_image* clear = nullptr;
    check(mwto_image_from_bytes(rgb.data(), size, size, &clear), "bench");
    ImagePtr clear_holder(clear);

    mwto_map* t = nullptr;
    check(mwto_block_constant_map(size, size, block, seed ^ 0x9e3779b97f4a7c15ull, 0.4, 0.9, &t),
          "bench");
    MapPtr t_holder(t);

    const double a[3] = {1.0, 1.0, 1.0};
    mwto_image* hazy = nullptr;
    check(mwto_apply_haze(clear, t, a, &hazy), "bench");
    return ImagePtr(hazy);
}

int run_bench(const BenchArgs& args) {
    if (args.sizes.empty())
        die("bench: size list is empty");
    if (args.reps < 1)
        die("bench: repetitions must be positive");

    mwto_dehaze_options options;
    mwto_dehaze_options_init(&options);
    options.levels = args.levels;
    options.max_iters = args.max_iters;
    options.tol = 1e-300; // never triggers: every run does exactly max_iters iterations

    const int block = 1 << args.levels;
    std::string csv = "size,reps,mean_s,min_s\n";
    std::vector<double> log_size, log_time;

    for (int size : args.sizes) {
        if (size < block || size % block != 0)
            die("bench: size " + std::to_string(size) + " is not divisible by 2^levels");
        ImagePtr hazy = make_bench_fixture(size, block, args.seed);

        double total = 0.0;
        double best = 0.0;
        for (int rep = 0; rep < args.reps; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            mwto_result* raw = nullptr;
            check(mwto_dehaze(hazy.get(), &options, &raw), "bench");
            const auto stop = std::chrono::steady_clock::now();
            mwto_result_free(raw);
            const double secs = std::chrono::duration<double>(stop - start).count();
            total += secs;
            best = rep == 0 ? secs : std::min(best, secs);
        }
        const double mean = total / args.reps;
        std::cout << "size " << size << ": mean " << fmt_double(mean) << " s, min "
                  << fmt_double(best) << " s\n";
        csv += std::to_string(size) + "," + std::to_string(args.reps) + "," + fmt_double(mean) +
               "," + fmt_double(best) + "\n";
        log_size.push_back(std::log(static_cast<double>(size)));
        log_time.push_back(std::log(best));
    }

    // Least-squares slope of log(min time) against log(side length).
    double slope = 0.0;
    if (log_size.size() >= 2) {
        const size_t n = log_size.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < n; ++i) {
            sx += log_size[i];
            sy += log_time[i];
            sxx += log_size[i] * log_size[i];
            sxy += log_size[i] * log_time[i];
        }
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    std::cout << "log-log slope (time vs side length): " << fmt_double(slope) << "\n";

    if (!args.csv_path.empty()) {
        std::ofstream out(args.csv_path);
        if (!out)
            die("bench: cannot write " + args.csv_path);
        out << csv;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mwto - single-image dehazing via multilevel wavelet optimization"};
    app.require_subcommand(1);

    DehazeArgs dehaze_args;
    mwto_dehaze_options_init(&dehaze_args.options);
    auto* dehaze_cmd = app.add_subcommand("dehaze", "Remove haze from PNG images");
    dehaze_cmd->add_option("inputs", dehaze_args.inputs, "Input PNG files")
        ->required()
        ->check(CLI::ExistingFile);
    dehaze_cmd->add_option("-o,--output", dehaze_args.output,
                           "Output file (single input) or directory (multiple inputs)")
        ->required();
    dehaze_cmd->add_option("--levels", dehaze_args.options.levels,
                           "Wavelet decomposition depth (0-4)");
    dehaze_cmd->add_option("--lambda0", dehaze_args.options.lambda0, "Base TV weight");
    dehaze_cmd->add_option("--epsilon", dehaze_args.options.epsilon, "Transmission floor");
    dehaze_cmd->add_option("--tol", dehaze_args.options.tol, "Solver stopping threshold");
    dehaze_cmd->add_option("--max-iters", dehaze_args.options.max_iters,
                           "Solver iteration cap");
    dehaze_cmd->add_option("--mu", dehaze_args.options.mu,
                           "Bregman penalty (<=0 selects 2*lambda+0.1)");
    dehaze_cmd->add_flag("--emit-transmission", dehaze_args.emit_transmission,
                         "Also write the transmission map as 8-bit grayscale");
    dehaze_cmd->add_option("--jobs", dehaze_args.jobs, "Process input files in parallel");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Synthesize haze over a clear PNG");
    sim_cmd->add_option("clear", sim_args.clear_path, "Clear input PNG")
        ->required()
        ->check(CLI::ExistingFile);
    sim_cmd->add_option("-o,--output", sim_args.output, "Hazy output PNG")->required();
    sim_cmd->add_option("--depth", sim_args.depth_path,
                        "Grayscale depth PNG (8 or 16 bit)");
    sim_cmd->add_option("--t", sim_args.t_constant, "Constant transmission in (0,1]");
    sim_cmd->add_option("--beta", sim_args.beta, "Scattering coefficient");
    sim_cmd->add_option("--dmin", sim_args.dmin, "Distance mapped to gray level 0");
    sim_cmd->add_option("--dmax", sim_args.dmax, "Distance mapped to gray level 65535");
    sim_cmd->add_option("--airlight", sim_args.airlight, "Airlight as r,g,b")
        ->delimiter(',')
        ->expected(3);
    sim_cmd->add_option("--emit-t", sim_args.emit_t_path,
                        "Also write the ground-truth transmission map");

    MetricsArgs metrics_args;
    auto* metrics_cmd = app.add_subcommand("metrics", "Score a restored image");
    metrics_cmd->add_option("reference", metrics_args.ref_path, "Reference PNG")
        ->required()
        ->check(CLI::ExistingFile);
    metrics_cmd->add_option("test", metrics_args.test_path, "Image to score")
        ->required()
        ->check(CLI::ExistingFile);
    metrics_cmd->add_option("hazy", metrics_args.hazy_path,
                            "Hazy original; adds the visibility descriptors")
        ->check(CLI::ExistingFile);
    metrics_cmd->add_option("--csv", metrics_args.csv_path, "Write the CSV here instead of stdout");
    metrics_cmd->add_option("--tau", metrics_args.tau, "Visible-edge threshold");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Runtime scaling benchmark");
    bench_cmd->add_option("--sizes", bench_args.sizes, "Square image sizes")->delimiter(',');
    bench_cmd->add_option("--reps", bench_args.reps, "Repetitions per size");
    bench_cmd->add_option("--seed", bench_args.seed, "Fixture seed");
    bench_cmd->add_option("--levels", bench_args.levels, "Wavelet decomposition depth");
    bench_cmd->add_option("--max-iters", bench_args.max_iters, "Fixed solver iteration cap");
    bench_cmd->add_option("--csv", bench_args.csv_path, "Write per-size results here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (dehaze_cmd->parsed())
            return run_dehaze(dehaze_args);
        if (sim_cmd->parsed())
            return run_simulate(sim_args);
        if (metrics_cmd->parsed())
            return run_metrics(metrics_args);
        if (bench_cmd->parsed())
            return run_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
