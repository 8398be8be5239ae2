// parampstat command-line front end.
//
// --config FILE goes before the subcommand. The file holds key = value pairs
// named like the long flags, under a [subcommand] section. Flags given on the
// command line win over values from the file.

#include "parampstat/error.hpp"
#include "parampstat/filter.hpp"
#include "parampstat/mode_generator.hpp"
#include "parampstat/multimode.hpp"
#include "parampstat/oracle.hpp"
#include "parampstat/paramp.hpp"
#include "parampstat/single_mode.hpp"
#include "parampstat/sweep.hpp"
#include "parampstat/table_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace parampstat;

namespace
{

enum ExitCode
{
    kOk = 0,
    kConfigError = 1,
    kNumericalFailure = 2,
    kIoError = 3,
};

struct ParamOptions
{
    ParampParams p;
};

struct QuadOptions
{
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
    std::string mapping = "rational";
    double nu_max = 0.0;

    quad::QuadratureSpec spec() const
    {
        quad::QuadratureSpec s;
        s.rel_tol = rel_tol;
        s.abs_tol = abs_tol;
        s.max_subdivisions = max_subdivisions;
        if (mapping == "tangent")
        {
            s.mapping = quad::TangentMap{};
        }
        else if (mapping == "window")
        {
            s.mapping = quad::TruncatedWindow{nu_max};
        }
        s.validate();
        return s;
    }
};

struct SchemeOptions
{
    std::string scheme = "single";
    std::string filter = "rect";
    double width = 1.0;
    double center = 0.0;
    double tau = 1.0;
    std::string generator = "window";
    double mode_width = 0.01;
    long mode_cutoff = -1; // < 0: adaptive
    double tail_threshold = 1e-12;

    Scheme build() const
    {
        if (scheme == "single")
        {
            return SingleModeScheme{make_filter(filter, width, center)};
        }
        if (scheme == "limit")
        {
            return MultimodeLimitScheme{tau};
        }
        if (scheme == "finite")
        {
            MultimodeFiniteScheme s;
            s.generator = {parse_generator_kind(generator), mode_width};
            s.tau = tau;
            if (mode_cutoff >= 0)
            {
                s.cutoff = FixedCutoff{mode_cutoff};
            }
            else
            {
                AdaptiveTail a;
                a.threshold = tail_threshold;
                s.cutoff = a;
            }
            return s;
        }
        throw Error(ErrorCode::ConfigParse, "unknown scheme '" + scheme + "'");
    }
};

void add_param_options(CLI::App &app, ParamOptions &o)
{
    app.add_option("--gamma", o.p.gamma, "coupling rate Gamma")->capture_default_str();
    app.add_option("--xi", o.p.xi_mag, "|xi|, two-photon coupling magnitude")->capture_default_str();
    app.add_option("--xi-arg", o.p.xi_arg, "arg(xi) in radians")->capture_default_str();
    app.add_option("--delta", o.p.delta, "effective detuning")->capture_default_str();
    app.add_option("--nu0", o.p.nu0, "carrier frequency (wideband detection)")->capture_default_str();
}

void add_quad_options(CLI::App &app, QuadOptions &o)
{
    app.add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance")->capture_default_str();
    app.add_option("--abs-tol", o.abs_tol, "quadrature absolute tolerance")->capture_default_str();
    app.add_option("--max-subdivisions", o.max_subdivisions, "quadrature bisection budget")->capture_default_str();
    app.add_option("--mapping", o.mapping, "infinite-range mapping")
        ->check(CLI::IsMember({"rational", "tangent", "window"}))
        ->capture_default_str();
    app.add_option("--nu-max", o.nu_max, "half width for --mapping window");
}

void add_scheme_options(CLI::App &app, SchemeOptions &o, bool allow_wideband)
{
    std::vector<std::string> schemes{"single", "limit", "finite"};
    if (allow_wideband)
    {
        schemes.push_back("wideband");
    }
    app.add_option("--scheme", o.scheme, "detection scheme")->check(CLI::IsMember(schemes))->capture_default_str();
    app.add_option("--filter", o.filter, "single-mode filter shape")
        ->check(CLI::IsMember({"rect", "rectangular", "lorentzian", "gaussian", "sinc"}))
        ->capture_default_str();
    app.add_option("--width", o.width, "filter width (B, halfwidth, sigma or w)")->capture_default_str();
    app.add_option("--center", o.center, "filter center offset")->capture_default_str();
    app.add_option("--tau", o.tau, "integration time for multimode schemes")->capture_default_str();
    app.add_option("--generator", o.generator, "mode generator")
        ->check(CLI::IsMember({"window", "sinc"}))
        ->capture_default_str();
    app.add_option("--mode-width", o.mode_width, "mode width Delta")->capture_default_str();
    app.add_option("--mode-cutoff", o.mode_cutoff, "max |n| (omit for the adaptive tail rule)");
    app.add_option("--tail-threshold", o.tail_threshold, "adaptive tail threshold")->capture_default_str();
}

std::vector<double> linear_grid(double lo, double hi, int steps)
{
    if (steps < 1)
    {
        throw Error(ErrorCode::ConfigParse, "grid needs at least one step");
    }
    std::vector<double> g;
    for (int i = 0; i < steps; ++i)
    {
        g.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    }
    return g;
}

// Runs body and turns library exceptions into exit codes.
int guarded(const std::function<void()> &body)
{
    try
    {
        body();
        return kOk;
    }
    catch (const Error &e)
    {
        std::cerr << "parampstat: " << e.what() << '\n';
        if (e.code() == ErrorCode::OutputIO)
        {
            return kIoError;
        }
        return is_numerical_failure(e.code()) ? kNumericalFailure : kConfigError;
    }
}

void print_csv_row(std::ostream &os, std::initializer_list<double> xs)
{
    bool first = true;
    for (double x : xs)
    {
        os << (first ? "" : ",") << format_number(x);
        first = false;
    }
    os << '\n';
}

// Sends text to stdout or to a file.
void emit(const std::string &path, const std::string &text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out)
    {
        throw Error(ErrorCode::OutputIO, "cannot write '" + path + "'");
    }
}

void run_coeffs(const ParamOptions &po, const std::vector<double> &nus)
{
    const ValidatedParams p = validate_params(po.p);
    std::ostringstream os;
    os << "nu,u_re,u_im,v_re,v_im,eta,n,phi_c,phi_s\n";
    for (double nu : nus)
    {
        const auto c = bogoliubov_coefficients(p, nu);
        const auto sp = spectral_point(p, nu);
        print_csv_row(os, {nu, c.u.real(), c.u.imag(), c.v.real(), c.v.imag(), sp.eta, sp.n, sp.phi_c, sp.phi_s});
    }
    std::cout << os.str();
}

void run_spectrum(const ParamOptions &po, double lo, double hi, int points, const std::string &output)
{
    const ValidatedParams p = validate_params(po.p);
    std::ostringstream os;
    os << "nu,eta,n,phi_c,phi_s\n";
    for (double nu : linear_grid(lo, hi, points))
    {
        const auto sp = spectral_point(p, nu);
        print_csv_row(os, {nu, sp.eta, sp.n, sp.phi_c, sp.phi_s});
    }
    emit(output, os.str());
}

void run_moments(const ParamOptions &po, const QuadOptions &qo, const SchemeOptions &so, const std::string &format)
{
    const ValidatedParams p = validate_params(po.p);
    const quad::QuadratureSpec spec = qo.spec();
    if (so.scheme == "wideband")
    {
        const auto g = wideband_effective_filter(make_filter(so.filter, so.width, so.center), po.p.nu0, spec);
        const WidebandMoments w = moments_wideband(p, g, spec);
        std::ostringstream os;
        os << "normalization,mean,variance,third,norm_sq,voltage_scale\n";
        for (const auto &[label, m] : {std::pair{"raw", &w.raw}, std::pair{"renormalized", &w.renormalized}})
        {
            os << label << ',' << format_number(m->mean) << ',' << format_number(m->variance) << ','
               << format_number(*m->third_central) << ',' << format_number(w.norm_sq) << ','
               << format_number(w.voltage_scale) << '\n';
        }
        std::cout << os.str();
        std::cerr << "note: wideband third moments reuse the normalized-filter formula (extrapolated)\n";
        return;
    }
    SweepConfig cfg;
    cfg.base = po.p;
    cfg.xi_grid = {po.p.xi_mag};
    cfg.delta_grid = {po.p.delta};
    cfg.scheme = so.build();
    cfg.quadrature = spec;
    cfg.threads = 1;
    const SweepResult r = run_sweep(cfg);
    std::ostringstream os;
    if (parse_output_format(format) == OutputFormat::Json)
    {
        write_sweep_json(os, cfg, r);
    }
    else
    {
        write_sweep_csv(os, r.records);
    }
    std::cout << os.str();
}

struct SweepOptions
{
    std::vector<double> xi_grid;
    std::vector<double> delta_grid;
    double xi_min = 0.0;
    double xi_max = 0.0;
    int xi_steps = 0;
    double delta_min = 0.0;
    double delta_max = 0.0;
    int delta_steps = 0;
    std::string output;
    std::string format;
    unsigned threads = 0;
};

void run_sweep_command(const ParamOptions &po, const QuadOptions &qo, const SchemeOptions &so,
                       const SweepOptions &sw)
{
    SweepConfig cfg;
    cfg.base = po.p;
    cfg.xi_grid = !sw.xi_grid.empty() ? sw.xi_grid
                  : sw.xi_steps > 0   ? linear_grid(sw.xi_min, sw.xi_max, sw.xi_steps)
                                      : std::vector<double>{po.p.xi_mag};
    cfg.delta_grid = !sw.delta_grid.empty() ? sw.delta_grid
                     : sw.delta_steps > 0   ? linear_grid(sw.delta_min, sw.delta_max, sw.delta_steps)
                                            : std::vector<double>{po.p.delta};
    if (so.scheme == "wideband")
    {
        throw Error(ErrorCode::ConfigParse, "wideband detection is not available in sweeps");
    }
    cfg.scheme = so.build();
    cfg.quadrature = qo.spec();
    cfg.threads = sw.threads;

    std::string format = sw.format;
    if (format.empty())
    {
        format = sw.output.size() > 5 && sw.output.ends_with(".json") ? "json" : "csv";
    }
    const OutputFormat fmt = parse_output_format(format);

    const SweepResult r = run_sweep(cfg);
    for (const SkippedPoint &s : r.skipped)
    {
        std::cerr << "skipped xi=" << format_number(s.xi) << " delta=" << format_number(s.delta) << ": " << s.reason
                  << '\n';
    }
    if (sw.output.empty() || sw.output == "-")
    {
        std::ostringstream os;
        if (fmt == OutputFormat::Json)
        {
            write_sweep_json(os, cfg, r);
        }
        else
        {
            write_sweep_csv(os, r.records);
        }
        std::cout << os.str();
    }
    else
    {
        write_sweep_file(sw.output, fmt, cfg, r);
    }
}

void run_figure(double gamma, const std::string &out_dir, int xi_steps, const QuadOptions &qo)
{
    FigureConfig cfg;
    cfg.gamma = gamma;
    cfg.out_dir = out_dir;
    cfg.quadrature = qo.spec();
    if (xi_steps > 0)
    {
        // Open interval (0, 1) so every point is below threshold.
        cfg.xi_over_gamma.clear();
        for (int k = 1; k <= xi_steps; ++k)
        {
            cfg.xi_over_gamma.push_back(static_cast<double>(k) / (xi_steps + 1));
        }
    }
    for (const auto &path : emit_figure_sv(cfg))
    {
        std::cout << path.string() << '\n';
    }
}

struct Check
{
    std::string name;
    double error;
    double tolerance;
};

// Oracle cross-checks; returns true when all pass.
bool run_verify(const QuadOptions &qo)
{
    const quad::QuadratureSpec spec = qo.spec();
    std::vector<Check> checks;
    const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };

    ParampParams raw;
    raw.gamma = 1.0;
    raw.xi_mag = 0.5;
    const ValidatedParams ridge = validate_params(raw);

    double worst = 0.0;
    for (double nu : {-7.0, -1.0, -0.2, 0.0, 0.3, 2.0, 50.0})
    {
        const auto c = bogoliubov_coefficients(ridge, nu);
        worst = std::max(worst, std::abs(std::norm(c.u) - std::norm(c.v) - 1.0));
    }
    checks.push_back({"bogoliubov_unitarity", worst, 1e-12});

    const FockMoments fock = fock_pair_moments({std::log(3.0), 80});
    checks.push_back({"fock_pair_mean", rel(fock.single_arm.mean, 16.0 / 9.0), 1e-10});
    const MomentSet sv = squeezed_vacuum_reference(std::sinh(1.0) * std::sinh(1.0));
    const SqueezedFockMoments sq = squeezed_fock_moments({1.0, 200});
    checks.push_back({"fock_squeezed_variance", rel(sq.moments.variance, sv.variance), 1e-10});
    checks.push_back({"fock_squeezed_third", rel(*sq.moments.third_central, *sv.third_central), 1e-10});

    const FilterSpec rect = make_filter("rect", 1.0);
    const MomentSet single = moments_single(ridge, rect, spec);
    const DiscretizedField field = discretize(ridge, rect, default_oracle_grid(ridge, rect));
    const auto raw_single = raw_moments(single);
    checks.push_back({"wick_k1_vs_single", rel(wick_moments(field, 1), raw_single[0]), 1e-4});
    checks.push_back({"wick_k2_vs_single", rel(wick_moments(field, 2), raw_single[1]), 1e-4});
    checks.push_back({"wick_k3_vs_single", rel(wick_moments(field, 3), raw_single[2]), 1e-4});

    const LimitRates rates = limit_rates(ridge, 1.0 / (4.0 * std::numbers::pi), spec);
    checks.push_back({"limit_mean_residue", rel(rates.mean, 1.0 / 6.0), 1e-8});
    checks.push_back({"limit_cubic_identity", rel(rates.variance, padurariu_reference(rates.mean)), 1e-8});

    bool ok = true;
    for (const Check &c : checks)
    {
        const bool pass = c.error <= c.tolerance;
        ok = ok && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << c.name << " error=" << format_number(c.error)
                  << " tol=" << format_number(c.tolerance) << '\n';
    }
    return ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Photocount statistics of a Josephson parametric amplifier"};
    app.set_config("--config", "", "key = value file; command-line flags take precedence");
    app.require_subcommand(1);

    ParamOptions po;
    QuadOptions qo;
    SchemeOptions so;
    int exit_code = kOk;

    auto *coeffs = app.add_subcommand("coeffs", "print u, v, eta, phi_c, phi_s at given frequencies");
    std::vector<double> nus{0.0};
    add_param_options(*coeffs, po);
    coeffs->add_option("--nu", nus, "offset frequencies")->delimiter(',');
    coeffs->callback([&] { exit_code = guarded([&] { run_coeffs(po, nus); }); });

    auto *spectrum = app.add_subcommand("spectrum", "tabulate n(nu) on a uniform grid");
    double nu_lo = -5.0;
    double nu_hi = 5.0;
    int points = 101;
    std::string spectrum_out;
    add_param_options(*spectrum, po);
    spectrum->add_option("--nu-from", nu_lo, "first frequency")->capture_default_str();
    spectrum->add_option("--nu-to", nu_hi, "last frequency")->capture_default_str();
    spectrum->add_option("--points", points, "number of grid points")->capture_default_str();
    spectrum->add_option("-o,--output", spectrum_out, "output file (default stdout)");
    spectrum->callback([&] { exit_code = guarded([&] { run_spectrum(po, nu_lo, nu_hi, points, spectrum_out); }); });

    auto *moments = app.add_subcommand("moments", "moments for one parameter point");
    std::string moments_format = "csv";
    add_param_options(*moments, po);
    add_quad_options(*moments, qo);
    add_scheme_options(*moments, so, true);
    moments->add_option("--format", moments_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    moments->callback([&] { exit_code = guarded([&] { run_moments(po, qo, so, moments_format); }); });

    auto *sweep = app.add_subcommand("sweep", "moments over a (|xi|, delta) grid");
    SweepOptions sw;
    add_param_options(*sweep, po);
    add_quad_options(*sweep, qo);
    add_scheme_options(*sweep, so, false);
    sweep->add_option("--xi-grid", sw.xi_grid, "explicit |xi| values")->delimiter(',');
    sweep->add_option("--delta-grid", sw.delta_grid, "explicit delta values")->delimiter(',');
    sweep->add_option("--xi-min", sw.xi_min, "uniform |xi| grid start");
    sweep->add_option("--xi-max", sw.xi_max, "uniform |xi| grid end");
    sweep->add_option("--xi-steps", sw.xi_steps, "uniform |xi| grid size");
    sweep->add_option("--delta-min", sw.delta_min, "uniform delta grid start");
    sweep->add_option("--delta-max", sw.delta_max, "uniform delta grid end");
    sweep->add_option("--delta-steps", sw.delta_steps, "uniform delta grid size");
    sweep->add_option("-o,--output", sw.output, "output file (default stdout)");
    sweep->add_option("--format", sw.format, "csv or json (default: from the file extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--threads", sw.threads, "worker threads (0: all cores)");
    sweep->callback([&] { exit_code = guarded([&] { run_sweep_command(po, qo, so, sw); }); });

    auto *figure = app.add_subcommand("figure-sv", "write the variance-versus-mean tables");
    std::string out_dir = ".";
    int xi_steps = 0;
    add_quad_options(*figure, qo);
    figure->add_option("--gamma", po.p.gamma, "coupling rate Gamma")->capture_default_str();
    figure->add_option("--out-dir", out_dir, "directory for the tables")->capture_default_str();
    figure->add_option("--xi-steps", xi_steps, "points in (0, 1) instead of 0.01..0.99");
    figure->callback([&] { exit_code = guarded([&] { run_figure(po.p.gamma, out_dir, xi_steps, qo); }); });

    auto *verify = app.add_subcommand("verify", "oracle cross-checks with a pass/fail report");
    add_quad_options(*verify, qo);
    verify->callback([&] {
        exit_code = guarded([&] {
            if (!run_verify(qo))
            {
                throw Error(ErrorCode::ToleranceNotMet, "verification failed");
            }
        });
    });

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kConfigError;
    }
    return exit_code;
}
