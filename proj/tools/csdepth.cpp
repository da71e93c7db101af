// Command-line front end: depth and median queries, configuration
// generation, oracle verification, benchmarking, and SVG plotting.
//
// Exit codes: 0 success, 1 usage or syntax error, 2 degenerate input,
// 3 verification mismatch.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <csdepth/csdepth.hpp>

namespace {

using namespace csdepth;
using Clock = std::chrono::steady_clock;

constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitMismatch = 3;

io::ParsedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open '" + path + "'");
    return io::parse_config(in);
}

Rat parse_scalar_or_throw(const std::string& text, const std::string& what) {
    const auto v = parse_rat(text);
    if (!v) throw CLI::ValidationError("bad " + what + " '" + text + "'");
    return *v;
}

std::string describe_offenders(const io::ParsedConfig& parsed, const degenerate_input& e) {
    std::string out = e.what();
    std::string lines;
    for (const PointRef& r : e.offenders) {
        const int line = parsed.line_of(r);
        if (line > 0) lines += (lines.empty() ? "" : ", ") + std::string("line ") + std::to_string(line);
    }
    if (!lines.empty()) out += " (" + lines + ")";
    return out;
}

int worker_count(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("CSDEPTH_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

struct GenCliSpec {
    std::vector<std::size_t> sizes;
    std::string dist = "uniform";
    std::uint64_t seed = 1;
    std::string safety = "full";
    std::int64_t radius_scale = 8;

    gen::GenSpec to_spec() const {
        gen::GenSpec spec;
        spec.sizes = sizes;
        spec.distribution =
            dist == "clustered" ? gen::Distribution::clustered : gen::Distribution::uniform_disc;
        spec.seed = seed;
        spec.safety = safety == "origin" ? gen::Safety::origin : gen::Safety::full;
        spec.radius_scale = radius_scale;
        return spec;
    }
};

void add_gen_options(CLI::App* cmd, GenCliSpec& spec) {
    cmd->add_option("--sizes", spec.sizes, "class sizes, e.g. --sizes 3 3 2")
        ->required()
        ->expected(-3)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--dist", spec.dist, "uniform or clustered")
        ->check(CLI::IsMember({"uniform", "clustered"}));
    cmd->add_option("--seed", spec.seed, "generator seed");
    cmd->add_option("--safety", spec.safety, "origin or full general-position guarantee")
        ->check(CLI::IsMember({"origin", "full"}));
    cmd->add_option("--radius-scale", spec.radius_scale, "lattice radius per point")->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------- depth ---

int cmd_depth(const std::string& path, const std::string& x_text, const std::string& y_text,
              bool breakdown, bool sorted_input) {
    std::optional<io::ParsedConfig> parsed;
    try {
        parsed = load_config(path);
    } catch (const io::parse_error& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const degenerate_input& e) {
        std::cerr << "error: degenerate configuration: " << e.what() << "\n";
        return kExitDegenerate;
    }
    const Point query{parse_scalar_or_throw(x_text, "x coordinate"),
                      parse_scalar_or_throw(y_text, "y coordinate")};

    try {
        DepthBreakdown result;
        if (sorted_input) {
            const AngularOrder order;
            std::vector<std::vector<AngularKey>> theta(parsed->config.k());
            for (std::size_t c = 0; c < parsed->config.k(); ++c) {
                const auto& cls = parsed->config.colour_class(c);
                for (std::size_t j = 0; j < cls.size(); ++j)
                    theta[c].push_back(order.key(query, cls[j], 0,
                                                 {static_cast<std::int32_t>(c), static_cast<std::int32_t>(j)}));
                for (std::size_t j = 1; j < theta[c].size(); ++j)
                    if (order.compare(theta[c][j - 1], theta[c][j]) >= 0)
                        throw degenerate_input("--sorted given but colour " + std::to_string(c + 1) +
                                               " is not sorted around the query point");
            }
            result = csd_from_sorted_keys(order, theta);
        } else {
            result = csd(query, parsed->config);
        }
        if (breakdown) {
            std::cout << "all-triangle depth: " << result.total_mono << "\n";
            std::cout << "star sum: " << result.star_sum << "\n";
            std::cout << "same-colour sum: " << result.same_colour_sum << "\n";
            std::cout << "colourful depth: " << result.colourful << "\n";
        } else {
            std::cout << result.colourful << "\n";
        }
        return 0;
    } catch (const degenerate_input& e) {
        std::cerr << "error: degenerate input: " << describe_offenders(*parsed, e) << "\n";
        return kExitDegenerate;
    }
}

// --------------------------------------------------------------- median ---

int cmd_median(const std::string& path, bool all, const std::string& engine,
               std::optional<std::uint64_t> perturb_seed) {
    std::optional<io::ParsedConfig> parsed;
    try {
        parsed = load_config(path);
    } catch (const io::parse_error& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const degenerate_input& e) {
        std::cerr << "error: degenerate configuration: " << e.what() << "\n";
        return kExitDegenerate;
    }

    SweepOptions opts;
    opts.engine = engine == "topsweep" ? SweepEngine::topological : SweepEngine::x_order;
    opts.collect_all = all;

    try {
        std::optional<perturb::Shear> shear;
        ColourConfiguration cfg = parsed->config;
        if (perturb_seed && perturb::has_vertical_colourful_pair(cfg)) {
            shear = perturb::choose_shear(cfg, *perturb_seed);
            cfg = shear->apply(cfg);
            std::cout << "# shear applied: x' = x + (" << format_rat(shear->eps) << ")*y\n";
        }

        SweepResult result;
        try {
            result = sweep_median(cfg, opts);
        } catch (const degenerate_input&) {
            if (!perturb_seed) throw;
            // concurrent crossings or leftover degeneracy: jitter changes
            // the instance, so say so
            const ColourConfiguration jittered = perturb::jitter(cfg, *perturb_seed, 1000003);
            std::cout << "# jitter applied (seed " << *perturb_seed
                      << "): results refer to the jittered configuration\n";
            result = sweep_median(jittered, opts);
            shear.reset();
        }

        auto report_point = [&](const Point& p) {
            const Point q = shear ? shear->unapply(p) : p;
            return format_rat(q.x) + " " + format_rat(q.y);
        };
        std::cout << "depth: " << result.depth << "\n";
        std::cout << "at: " << report_point(result.witness) << "\n";
        if (all)
            for (const Point& p : result.maximizers) std::cout << "max: " << report_point(p) << "\n";
        return 0;
    } catch (const degenerate_input& e) {
        std::cerr << "error: degenerate input: " << describe_offenders(*parsed, e) << "\n";
        return kExitDegenerate;
    }
}

// ------------------------------------------------------------------ gen ---

int cmd_gen(const GenCliSpec& spec) {
    try {
        const ColourConfiguration cfg = gen::generate(spec.to_spec());
        std::cout << "# csdepth points v1\n";
        std::cout << io::write_config(cfg);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

// --------------------------------------------------------------- verify ---

struct VerifyOutcome {
    bool ran_median = false;
    bool ok = true;
    std::string detail;
};

VerifyOutcome verify_one(const ColourConfiguration& cfg, std::size_t median_cap) {
    VerifyOutcome out;

    // depth check at a deterministic non-degenerate query point
    static const std::vector<Point> candidates = {
        Point{Rat(0), Rat(0)},        Point{Rat(1, 7), Rat(2, 9)},   Point{Rat(-3, 11), Rat(5, 13)},
        Point{Rat(17, 5), Rat(-9, 8)}, Point{Rat(-23, 7), Rat(-31, 9)}};
    bool depth_checked = false;
    for (const Point& q : candidates) {
        try {
            const auto fast = csd(q, cfg);
            const auto slow = oracle::csd_bruteforce(q, cfg);
            depth_checked = true;
            if (fast.colourful != slow) {
                out.ok = false;
                out.detail = "depth mismatch at query (" + format_rat(q.x) + ", " + format_rat(q.y) +
                             "): fast " + std::to_string(fast.colourful) + ", brute " + std::to_string(slow);
                return out;
            }
            break;
        } catch (const degenerate_input&) {
            continue;
        }
    }
    if (!depth_checked) {
        out.ok = false;
        out.detail = "no usable query point (configuration degenerate around all probes)";
        return out;
    }

    if (cfg.n() <= median_cap && cfg.nonempty_classes() >= 3) {
        try {
            const auto brute = oracle::median_bruteforce(cfg);
            const auto swept = sweep_median(cfg);
            out.ran_median = true;
            if (swept.depth != brute.depth) {
                out.ok = false;
                out.detail = "median depth mismatch: sweep " + std::to_string(swept.depth) + ", brute " +
                             std::to_string(brute.depth);
                return out;
            }
            if (oracle::csd_bruteforce(swept.witness, cfg) != swept.depth) {
                out.ok = false;
                out.detail = "median witness does not attain the reported depth";
                return out;
            }
        } catch (const degenerate_input&) {
            // arrangement degeneracy (vertical or concurrent lines): skip
        }
    }
    return out;
}

// Greedy point removal keeping the failure alive, for a small reproducer.
ColourConfiguration minimize_failure(ColourConfiguration cfg, std::size_t median_cap) {
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (std::size_t c = 0; c < cfg.k() && !shrunk; ++c) {
            for (std::size_t j = 0; j < cfg.class_size(c) && !shrunk; ++j) {
                auto classes = cfg.classes();
                classes[c].erase(classes[c].begin() + static_cast<std::ptrdiff_t>(j));
                std::size_t remaining = 0;
                for (const auto& cls : classes) remaining += cls.size();
                if (remaining < 3) continue;
                try {
                    ColourConfiguration candidate(classes);
                    if (!verify_one(candidate, median_cap).ok) {
                        cfg = std::move(candidate);
                        shrunk = true;
                    }
                } catch (const std::exception&) {
                }
            }
        }
    }
    return cfg;
}

int cmd_verify(const std::string& path, int random_count, std::size_t kmin, std::size_t kmax,
               std::size_t nmax, std::uint64_t seed, std::size_t median_cap, int workers_flag) {
    std::vector<ColourConfiguration> instances;
    if (!path.empty()) {
        try {
            instances.push_back(load_config(path).config);
        } catch (const io::parse_error& e) {
            std::cerr << "error: " << path << ": " << e.what() << "\n";
            return kExitUsage;
        } catch (const degenerate_input& e) {
            std::cerr << "error: degenerate configuration: " << e.what() << "\n";
            return kExitDegenerate;
        }
    } else {
        if (kmin < 3 || kmax < kmin || nmax < 3) {
            std::cerr << "error: need 3 <= kmin <= kmax and nmax >= 3\n";
            return kExitUsage;
        }
        gen::Rng rng(seed);
        while (instances.size() < static_cast<std::size_t>(random_count)) {
            const std::size_t k = kmin + rng.below(kmax - kmin + 1);
            std::vector<std::size_t> sizes(k);
            std::size_t n = 0;
            for (auto& s : sizes) {
                s = rng.below(std::max<std::uint64_t>(2, nmax / k + 1));
                n += s;
            }
            if (n < 3 || n > nmax) continue;
            gen::GenSpec spec{sizes, gen::Distribution::uniform_disc, rng.next(), gen::Safety::full};
            instances.push_back(gen::generate(spec));
        }
    }

    const int workers = worker_count(workers_flag);
    std::vector<VerifyOutcome> outcomes(instances.size());
    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= instances.size()) return;
            outcomes[i] = verify_one(instances[i], median_cap);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::size_t medians = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (outcomes[i].ran_median) ++medians;
        if (!outcomes[i].ok) {
            const ColourConfiguration reproducer = minimize_failure(instances[i], median_cap);
            std::cout << "FAIL instance " << i << ": " << outcomes[i].detail << "\n";
            std::cout << "minimized reproducer:\n" << io::write_config(reproducer);
            return kExitMismatch;
        }
    }
    std::cout << "verified " << instances.size() << " instance(s), " << medians
              << " with median cross-check: all consistent\n";
    return 0;
}

// ---------------------------------------------------------------- bench ---

int cmd_bench(const std::string& op, const std::vector<std::size_t>& ns, std::size_t k,
              std::uint64_t seed, const std::vector<std::string>& engines, std::int64_t radius_scale) {
    std::cout << "# csdepth-bench v1\n";
    std::cout << "n,k,op,engine,wall_ms,primitive_ops,peak_bytes\n";
    struct Row {
        std::size_t n;
        std::string engine;
        double ms;
        std::uint64_t ops;
    };
    std::vector<Row> rows;
    for (std::size_t n : ns) {
        std::vector<std::size_t> sizes(k, n / k);
        for (std::size_t i = 0; i < n % k; ++i) ++sizes[i];
        if (op == "depth") {
            gen::GenSpec spec{sizes, gen::Distribution::uniform_disc, seed, gen::Safety::origin,
                              radius_scale};
            const ColourConfiguration cfg = gen::generate(spec);
            const Point origin{Rat(0), Rat(0)};
            const ColourAngles angles = build_sorted_colour_angles(origin, cfg);
            metrics::reset();
            const auto t0 = Clock::now();
            const auto result = csd_from_sorted_keys(AngularOrder{}, angles.theta, &angles.antipodes);
            const auto t1 = Clock::now();
            const auto m = metrics::snapshot();
            const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            (void)result;
            std::cout << n << ',' << k << ",depth,sorted," << ms << ',' << m.ops << ',' << m.bytes_peak
                      << "\n";
            rows.push_back({n, "sorted", ms, m.ops});
        } else {
            gen::GenSpec spec{sizes, gen::Distribution::uniform_disc, seed, gen::Safety::full,
                              radius_scale};
            const ColourConfiguration cfg = gen::generate(spec);
            for (const std::string& engine : engines) {
                SweepOptions opts;
                opts.engine = engine == "topsweep" ? SweepEngine::topological : SweepEngine::x_order;
                metrics::reset();
                const auto t0 = Clock::now();
                const auto result = sweep_median(cfg, opts);
                const auto t1 = Clock::now();
                const auto m = metrics::snapshot();
                const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                (void)result;
                std::cout << n << ',' << k << ",median," << engine << ',' << ms << ',' << m.ops << ','
                          << m.bytes_peak << "\n";
                rows.push_back({n, engine, ms, m.ops});
            }
        }
    }
    // least-squares slope of log(ops) against log(n), one line per engine
    for (const std::string& engine : (op == "depth" ? std::vector<std::string>{"sorted"} : engines)) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (const Row& r : rows) {
            if (r.engine != engine || r.ops == 0) continue;
            const double x = std::log(static_cast<double>(r.n));
            const double y = std::log(static_cast<double>(r.ops));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++m;
        }
        if (m >= 2) {
            const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            std::cout << "# loglog-slope " << op << ' ' << engine << ' ' << slope << "\n";
        }
    }
    return 0;
}

// ----------------------------------------------------------------- plot ---

int cmd_plot(const std::string& path, bool segments, bool median_overlay, const std::string& out_path) {
    std::optional<io::ParsedConfig> parsed;
    try {
        parsed = load_config(path);
    } catch (const io::parse_error& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const degenerate_input& e) {
        std::cerr << "error: degenerate configuration: " << e.what() << "\n";
        return kExitDegenerate;
    }
    svg::PlotOptions opts;
    opts.draw_segments = segments;
    if (median_overlay) {
        try {
            SweepOptions sweep;
            sweep.collect_all = true;
            opts.marks = sweep_median(parsed->config, sweep).maximizers;
        } catch (const degenerate_input& e) {
            std::cerr << "error: degenerate input: " << describe_offenders(*parsed, e) << "\n";
            return kExitDegenerate;
        }
    }
    const std::string drawing = svg::render(parsed->config, opts);
    if (out_path.empty()) {
        std::cout << drawing;
    } else {
        std::ofstream out(out_path);
        out << drawing;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"colourful simplicial depth and medians in the plane"};
    app.require_subcommand(1);

    // depth
    std::string depth_file, depth_x, depth_y;
    bool depth_breakdown = false, depth_sorted = false;
    auto* depth_cmd = app.add_subcommand("depth", "colourful simplicial depth of a query point");
    depth_cmd->add_option("file", depth_file, "point file")->required();
    depth_cmd->add_option("x", depth_x, "query x (exact)")->required();
    depth_cmd->add_option("y", depth_y, "query y (exact)")->required();
    depth_cmd->add_flag("--breakdown", depth_breakdown, "print the depth decomposition");
    depth_cmd->add_flag("--sorted", depth_sorted, "input is pre-sorted around the query per colour");

    // median
    std::string median_file, median_engine = "xsweep";
    bool median_all = false;
    std::uint64_t median_perturb = 0;
    bool median_perturb_set = false;
    auto* median_cmd = app.add_subcommand("median", "point of maximum colourful depth");
    median_cmd->add_option("file", median_file, "point file")->required();
    median_cmd->add_flag("--all", median_all, "print every maximizer found");
    median_cmd->add_option("--engine", median_engine, "xsweep or topsweep")
        ->check(CLI::IsMember({"xsweep", "topsweep"}));
    median_cmd->add_option("--perturb", median_perturb, "seed for shear/jitter fallback")
        ->trigger_on_parse()
        ->each([&](const std::string&) { median_perturb_set = true; });

    // gen
    GenCliSpec gen_spec;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random configuration");
    add_gen_options(gen_cmd, gen_spec);

    // verify
    std::string verify_file;
    int verify_random = 50;
    std::size_t verify_kmin = 3, verify_kmax = 6, verify_nmax = 20, verify_median_cap = 12;
    std::uint64_t verify_seed = 1;
    int verify_workers = 0;
    auto* verify_cmd = app.add_subcommand("verify", "cross-check fast paths against brute force");
    verify_cmd->add_option("file", verify_file, "point file (omit to fuzz random instances)");
    verify_cmd->add_option("--random", verify_random, "number of random instances");
    verify_cmd->add_option("--kmin", verify_kmin, "minimum colour count");
    verify_cmd->add_option("--kmax", verify_kmax, "maximum colour count");
    verify_cmd->add_option("--nmax", verify_nmax, "maximum point count");
    verify_cmd->add_option("--seed", verify_seed, "fuzz seed");
    verify_cmd->add_option("--median-nmax", verify_median_cap, "median cross-check size cap");
    verify_cmd->add_option("--workers", verify_workers, "parallel workers (default CSDEPTH_WORKERS or 1)");

    // bench
    std::string bench_op = "depth";
    std::vector<std::size_t> bench_ns;
    std::size_t bench_k = 5;
    std::uint64_t bench_seed = 1;
    std::vector<std::string> bench_engines = {"xsweep"};
    std::int64_t bench_radius = 0;
    auto* bench_cmd = app.add_subcommand("bench", "operation-count scaling table (CSV)");
    bench_cmd->add_option("--op", bench_op, "depth or median")->check(CLI::IsMember({"depth", "median"}));
    bench_cmd->add_option("--n", bench_ns, "point counts")->required()->expected(-1);
    bench_cmd->add_option("--k", bench_k, "colour count");
    bench_cmd->add_option("--seed", bench_seed, "generator seed");
    bench_cmd->add_option("--engine", bench_engines, "xsweep and/or topsweep")->expected(-1);
    bench_cmd->add_option("--radius-scale", bench_radius, "lattice radius per point (0 = default)");

    // plot
    std::string plot_file, plot_out;
    bool plot_segments = false, plot_median = false;
    auto* plot_cmd = app.add_subcommand("plot", "SVG drawing of a configuration");
    plot_cmd->add_option("file", plot_file, "point file")->required();
    plot_cmd->add_flag("--segments", plot_segments, "draw the colourful segments");
    plot_cmd->add_flag("--median", plot_median, "mark every median maximizer");
    plot_cmd->add_option("-o,--out", plot_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (depth_cmd->parsed())
            return cmd_depth(depth_file, depth_x, depth_y, depth_breakdown, depth_sorted);
        if (median_cmd->parsed())
            return cmd_median(median_file, median_all, median_engine,
                              median_perturb_set ? std::optional<std::uint64_t>(median_perturb)
                                                 : std::nullopt);
        if (gen_cmd->parsed()) return cmd_gen(gen_spec);
        if (verify_cmd->parsed())
            return cmd_verify(verify_file, verify_random, verify_kmin, verify_kmax, verify_nmax,
                              verify_seed, verify_median_cap, verify_workers);
        if (bench_cmd->parsed()) {
            const std::int64_t radius =
                bench_radius > 0 ? bench_radius : (bench_op == "median" ? 50000 : 8);
            return cmd_bench(bench_op, bench_ns, bench_k, bench_seed, bench_engines, radius);
        }
        if (plot_cmd->parsed()) return cmd_plot(plot_file, plot_segments, plot_median, plot_out);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const degenerate_input& e) {
        std::cerr << "error: degenerate input: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
