// Command-line front end: sample stable integrals on a lattice, sample
// moving-average paths, evaluate fractional operators on a grid, and run
// the validation suites. Every output file starts with a one-line JSON
// manifest echoing the resolved configuration, and is byte-identical for a
// fixed (configuration, seed) pair regardless of STABLELAT_THREADS.
//
// Exit codes: 0 success, 1 validation checks failed, 2 bad configuration,
// 3 numerical failure.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stablelat/errors.hpp"
#include "stablelat/frac_calc.hpp"
#include "stablelat/function_spec.hpp"
#include "stablelat/io.hpp"
#include "stablelat/lattice.hpp"
#include "stablelat/lfsm.hpp"
#include "stablelat/measure_sim.hpp"
#include "stablelat/stable.hpp"
#include "stablelat/suites.hpp"

namespace sl = stablelat;

namespace {

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        double v = 0.0;
        const char* first = text.data() + start;
        const char* last = text.data() + end;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last)
            throw sl::config_error(std::string("malformed number in --") + what + ": '" +
                                   text.substr(start, end - start) + "'");
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

std::optional<sl::Box> parse_window(const std::string& text, int dim) {
    if (text.empty()) return std::nullopt;
    const auto v = parse_list(text, "window");
    if (dim == 1 && v.size() == 2) return sl::Box::interval(v[0], v[1]);
    if (dim == 2 && v.size() == 4) return sl::Box::rect(v[0], v[1], v[2], v[3]);
    throw sl::config_error("--window needs lo,hi (1-d) or lo0,hi0,lo1,hi1 (2-d)");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw sl::config_error("cannot open output file '" + path + "'");
    return os;
}

void finish_output(std::ofstream& os, const std::string& path) {
    os.flush();
    if (!os) throw sl::config_error("failed while writing '" + path + "'");
}

struct SampleArgs {
    double alpha = 0.0;
    std::string spec_arg;
    double h = 0.0;
    std::size_t n = 0;
    std::string noise = "pareto";
    std::string scheme = "cell-average";
    std::uint64_t seed = 20260501;
    std::uint64_t stream = 0;
    double trunc_tol = 1e-6;
    std::string window;
    std::string out;
};

void run_sample(const SampleArgs& args) {
    const sl::FunctionSpec spec = sl::io::parse_spec_argument(args.spec_arg);
    const std::optional<sl::Box> window = parse_window(args.window, spec.dim());
    const sl::CellCoefficients coeffs =
        args.scheme == "exact"
            ? sl::discretize_exact(spec, args.h, args.alpha, args.trunc_tol, window)
            : sl::discretize(spec, args.h, args.alpha, args.trunc_tol, window);
    const sl::NoiseModel noise = sl::suites::make_noise(args.noise, args.alpha);
    const sl::SampleBatch batch =
        sl::sample_integral(coeffs, noise, args.n, {args.seed, args.stream});

    sl::io::Manifest m;
    m["cmd"] = "sample";
    m["alpha"] = sl::io::format_double(args.alpha);
    m["h"] = sl::io::format_double(args.h);
    m["n"] = std::to_string(args.n);
    m["noise"] = args.noise;
    m["scheme"] = args.scheme;
    m["seed"] = std::to_string(args.seed);
    m["stream"] = std::to_string(args.stream);
    m["trunc_tol"] = sl::io::format_double(args.trunc_tol);
    m["spec"] = sl::io::spec_to_json(spec);
    const sl::Norms family_norms = sl::norms(coeffs);
    m["l_alpha"] = sl::io::format_double(family_norms.l_alpha);
    m["l_inf"] = sl::io::format_double(family_norms.l_inf);
    m["cells"] = std::to_string(coeffs.entries().size());
    m["tail_mass_bound"] = sl::io::format_double(coeffs.tail_mass_bound());

    std::ofstream os = open_output(args.out);
    sl::io::write_sample_batch(os, batch, m);
    finish_output(os, args.out);
}

struct PathArgs {
    double alpha = 0.0;
    double H = 0.0;
    double a = 1.0;
    double b = 0.0;
    double h = 0.0;
    std::string times;
    std::size_t n = 0;
    std::string noise = "exact";
    std::uint64_t seed = 20260501;
    std::uint64_t stream = 0;
    double trunc_tol = 1e-3;
    std::size_t max_cells = std::size_t{1} << 20;
    std::string out;
};

void run_path(const PathArgs& args) {
    const sl::LfsmParams params(args.alpha, args.H, args.a, args.b);
    const std::vector<double> times = parse_list(args.times, "times");
    const sl::NoiseModel noise = sl::suites::make_noise(args.noise, args.alpha);
    sl::PathOptions popt;
    popt.trunc_tol = args.trunc_tol;
    popt.max_cells_per_time = args.max_cells;
    const sl::SampleBatch batch =
        sl::sample_lfsm_path(params, times, args.h, noise, args.n, {args.seed, args.stream},
                             popt);

    sl::io::Manifest m;
    m["cmd"] = "path";
    m["alpha"] = sl::io::format_double(args.alpha);
    m["H"] = sl::io::format_double(args.H);
    m["a"] = sl::io::format_double(args.a);
    m["b"] = sl::io::format_double(args.b);
    m["h"] = sl::io::format_double(args.h);
    m["n"] = std::to_string(args.n);
    m["noise"] = args.noise;
    m["seed"] = std::to_string(args.seed);
    m["stream"] = std::to_string(args.stream);
    m["trunc_tol"] = sl::io::format_double(args.trunc_tol);
    m["max_cells_per_time"] = std::to_string(args.max_cells);
    m["times"] = args.times;
    if (args.alpha == 2.0 && batch.rows > 1) {
        // Gaussian edge of the family: record per-column sample variance so
        // downstream users can see the variance-2*sigma^2 convention at work.
        for (std::size_t c = 0; c < batch.cols; ++c) {
            double mean = 0.0;
            for (std::size_t r = 0; r < batch.rows; ++r) mean += batch.at(r, c);
            mean /= static_cast<double>(batch.rows);
            double ss = 0.0;
            for (std::size_t r = 0; r < batch.rows; ++r) {
                const double d = batch.at(r, c) - mean;
                ss += d * d;
            }
            m["variance." + batch.labels[c]] =
                sl::io::format_double(ss / static_cast<double>(batch.rows - 1));
        }
    }

    std::ofstream os = open_output(args.out);
    sl::io::write_sample_batch(os, batch, m);
    finish_output(os, args.out);
}

struct FracArgs {
    std::string op;
    std::string spec_arg;
    std::optional<double> delta;
    std::optional<double> beta;
    std::string side = "plus";
    double kernel_a = 1.0;
    double kernel_b = 0.0;
    std::string grid;
    double tol = 0.0;  // 0 = per-op default
    std::string out;
};

void run_frac(const FracArgs& args) {
    const sl::FunctionSpec spec = sl::io::parse_spec_argument(args.spec_arg);
    const auto g = parse_list(args.grid, "grid");
    if (g.size() != 3 || g[2] < 1.0 || g[2] != static_cast<double>(static_cast<std::size_t>(g[2])))
        throw sl::config_error("--grid needs origin,spacing,count with integer count >= 1");
    const sl::GridSpec grid(g[0], g[1], static_cast<std::size_t>(g[2]));
    const sl::Side side = args.side == "minus" ? sl::Side::Minus : sl::Side::Plus;

    sl::io::Manifest m;
    m["cmd"] = "frac";
    m["op"] = args.op;
    m["spec"] = sl::io::spec_to_json(spec);

    sl::GridFunction result{grid, {}};
    result.values.reserve(grid.count);
    if (args.op == "convolve") {
        if (!args.beta) throw sl::config_error("convolve needs --beta");
        const double tol = args.tol > 0.0 ? args.tol : 1e-8;
        result = sl::convolve_kernel(spec, sl::FracKernel(*args.beta, args.kernel_a,
                                                          args.kernel_b),
                                     grid, tol);
        m["beta"] = sl::io::format_double(*args.beta);
        m["kernel_a"] = sl::io::format_double(args.kernel_a);
        m["kernel_b"] = sl::io::format_double(args.kernel_b);
        m["tol"] = sl::io::format_double(tol);
    } else {
        const double tol = args.tol > 0.0 ? args.tol : 1e-9;
        const sl::CallableFn fn = sl::make_callable(spec);
        if (args.op == "integral") {
            if (!args.delta) throw sl::config_error("integral needs --delta");
            for (std::size_t i = 0; i < grid.count; ++i)
                result.values.push_back(
                    sl::rl_integral(fn, *args.delta, side, grid.point(i), tol));
            m["delta"] = sl::io::format_double(*args.delta);
            m["side"] = args.side;
        } else if (args.op == "derivative") {
            if (!args.beta) throw sl::config_error("derivative needs --beta");
            for (std::size_t i = 0; i < grid.count; ++i)
                result.values.push_back(
                    sl::rl_derivative(fn, *args.beta, side, grid.point(i), tol));
            m["beta"] = sl::io::format_double(*args.beta);
            m["side"] = args.side;
        } else if (args.op == "marchaud") {
            if (!args.beta) throw sl::config_error("marchaud needs --beta");
            if (args.side == "minus")
                throw sl::config_error("the difference form is implemented on the plus side");
            for (std::size_t i = 0; i < grid.count; ++i)
                result.values.push_back(
                    sl::marchaud_derivative(fn, *args.beta, grid.point(i), tol));
            m["beta"] = sl::io::format_double(*args.beta);
        } else {
            throw sl::config_error("unknown --op '" + args.op + "'");
        }
        m["tol"] = sl::io::format_double(tol);
    }

    std::ofstream os = open_output(args.out);
    sl::io::write_grid_function(os, result, m);
    finish_output(os, args.out);
}

struct ValidateArgs {
    std::string suite;
    sl::suites::SuiteOptions options;
    std::string out;
};

int run_validate(const ValidateArgs& args) {
    const sl::suites::SuiteReport report = sl::suites::run_suite(args.suite, args.options);
    const std::string text = sl::suites::to_json(report) + "\n";
    if (args.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream os = open_output(args.out);
        os << text;
        finish_output(os, args.out);
    }
    return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice simulation of symmetric stable integrals and related operators"};
    // --h is the lattice-spacing option, so help must not claim the -h short
    // form; keep help reachable as --help everywhere, uniformly.
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", "stablelat 0.1.0");
    app.require_subcommand(1);
    app.footer("Exit codes: 0 ok, 1 validation checks failed, 2 bad configuration, 3 numerical "
               "failure.\nFunction specs are JSON (see README), inline or @path.");

    SampleArgs sample;
    CLI::App* s = app.add_subcommand("sample", "Sample a stable integral on a lattice");
    s->set_help_flag("--help", "Print this help message and exit");
    s->add_option("--alpha", sample.alpha, "Stability index in (0, 2]")->required();
    s->add_option("--f", sample.spec_arg, "Integrand spec, JSON or @file")->required();
    s->add_option("--h", sample.h, "Lattice spacing")->required();
    s->add_option("--n", sample.n, "Number of replicates")->required();
    s->add_option("--noise", sample.noise, "Noise model")
        ->check(CLI::IsMember({"exact", "pareto"}))
        ->capture_default_str();
    s->add_option("--scheme", sample.scheme, "Coefficient scheme")
        ->check(CLI::IsMember({"cell-average", "exact"}))
        ->capture_default_str();
    s->add_option("--seed", sample.seed, "Master seed")->capture_default_str();
    s->add_option("--stream", sample.stream, "Stream id under the master seed")
        ->capture_default_str();
    s->add_option("--trunc-tol", sample.trunc_tol, "Relative L^alpha tail mass kept outside")
        ->capture_default_str();
    s->add_option("--window", sample.window, "Explicit window lo,hi (or lo0,hi0,lo1,hi1)");
    s->add_option("--out", sample.out, "Output CSV path")->required();

    PathArgs path;
    CLI::App* p = app.add_subcommand("path", "Sample a moving-average path at fixed times");
    p->set_help_flag("--help", "Print this help message and exit");
    p->add_option("--alpha", path.alpha, "Stability index in (1, 2]")->required();
    p->add_option("--H", path.H, "Self-similarity index in (0, 1), H != 1/alpha")->required();
    p->add_option("--a", path.a, "Left kernel weight")->capture_default_str();
    p->add_option("--b", path.b, "Right kernel weight")->capture_default_str();
    p->add_option("--h", path.h, "Lattice spacing")->required();
    p->add_option("--times", path.times, "Comma-separated increasing times, t >= 0")->required();
    p->add_option("--n", path.n, "Number of replicates")->required();
    p->add_option("--noise", path.noise, "Noise model")
        ->check(CLI::IsMember({"exact", "pareto"}))
        ->capture_default_str();
    p->add_option("--seed", path.seed, "Master seed")->capture_default_str();
    p->add_option("--stream", path.stream, "Stream id under the master seed")
        ->capture_default_str();
    p->add_option("--trunc-tol", path.trunc_tol, "Per-time relative tail mass target")
        ->capture_default_str();
    p->add_option("--max-cells", path.max_cells, "Cell budget per time point")
        ->capture_default_str();
    p->add_option("--out", path.out, "Output CSV path")->required();

    FracArgs frac;
    CLI::App* q = app.add_subcommand("frac", "Evaluate a fractional operator on a grid");
    q->set_help_flag("--help", "Print this help message and exit");
    q->add_option("--op", frac.op, "Operator")
        ->check(CLI::IsMember({"integral", "derivative", "marchaud", "convolve"}))
        ->required();
    q->add_option("--f", frac.spec_arg, "Function spec, JSON or @file")->required();
    q->add_option("--delta", frac.delta, "Integral order in (0, 1]");
    q->add_option("--beta", frac.beta, "Derivative/kernel order in (0, 1)");
    q->add_option("--side", frac.side, "Operator side")
        ->check(CLI::IsMember({"plus", "minus"}))
        ->capture_default_str();
    q->add_option("--kernel-a", frac.kernel_a, "Convolution kernel left weight")
        ->capture_default_str();
    q->add_option("--kernel-b", frac.kernel_b, "Convolution kernel right weight")
        ->capture_default_str();
    q->add_option("--grid", frac.grid, "Evaluation grid origin,spacing,count")->required();
    q->add_option("--tol", frac.tol, "Absolute tolerance (0 = operator default)")
        ->capture_default_str();
    q->add_option("--out", frac.out, "Output CSV path")->required();

    ValidateArgs validate;
    CLI::App* v = app.add_subcommand("validate", "Run a validation suite, report JSON");
    v->set_help_flag("--help", "Print this help message and exit");
    v->add_option("--suite", validate.suite, "Suite name")
        ->check(CLI::IsMember(sl::suites::suite_names()))
        ->required();
    v->add_option("--n", validate.options.n, "Override sample count");
    v->add_option("--seed", validate.options.seed, "Override master seed");
    v->add_option("--alpha", validate.options.alpha, "Override stability index");
    v->add_option("--H", validate.options.H, "Override self-similarity index");
    v->add_option("--noise", validate.options.noise, "Override noise model")
        ->check(CLI::IsMember({"exact", "pareto"}));
    v->add_option("--out", validate.out, "Report path (default: stdout)");

    int exit_code = 0;
    s->callback([&] { run_sample(sample); });
    p->callback([&] { run_path(path); });
    q->callback([&] { run_frac(frac); });
    v->callback([&] { exit_code = run_validate(validate); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const sl::config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const sl::numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 3;
    }
    return exit_code;
}
