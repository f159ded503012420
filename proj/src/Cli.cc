//---------------------------------------------------------------------------//
//! \file Cli.cc
//---------------------------------------------------------------------------//
#include "halfbern/Cli.hh"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "halfbern/Annulus.hh"
#include "halfbern/Bounds.hh"
#include "halfbern/Io.hh"
#include "halfbern/Metrics.hh"

namespace halfbern
{
namespace
{
//! Usage or configuration problem: exit code 2
struct UsageError : Error
{
    using Error::Error;
};

std::uint64_t default_seed()
{
    if (char const* env = std::getenv("HALFBERN_SEED"))
    {
        char* end = nullptr;
        auto const v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw UsageError("HALFBERN_SEED must be an unsigned integer");
        return v;
    }
    return 42;
}

std::vector<double> parse_list(std::string const& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        char* end = nullptr;
        double const v = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0')
            throw UsageError("malformed number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError("empty list");
    return out;
}

std::vector<double> parse_grid(std::string const& s, bool linear)
{
    std::stringstream ss(s);
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n))
        throw UsageError("grid must look like a:b:n");
    double const lo = parse_list(a).at(0);
    double const hi = parse_list(b).at(0);
    double const count = parse_list(n).at(0);
    if (!(count >= 1) || count != std::floor(count))
        throw UsageError("grid count must be a positive integer");
    if (!(lo > 0 && hi >= lo))
        throw UsageError("grid needs 0 < a <= b");
    auto const m = static_cast<std::size_t>(count);
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i)
    {
        double const f = m == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(m - 1);
        out[i] = linear ? lo + f * (hi - lo) : lo * std::pow(hi / lo, f);
    }
    return out;
}

Vec parse_point(std::string const& s)
{
    auto const v = parse_list(s);
    if (v.size() > 3)
        throw UsageError("points have at most 3 coordinates");
    Vec p(static_cast<int>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k)
        p[static_cast<int>(k)] = v[k];
    return p;
}

void write_text(std::string const& path, std::string const& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw UsageError("cannot write '" + path + "'");
    f << text;
}

template<class F>
void guard_config(F&& f)
{
    try
    {
        f();
    }
    catch (UsageError const&)
    {
        throw;
    }
    catch (Error const& e)
    {
        throw UsageError(e.what());
    }
}

std::string csv_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

//---------------------------------------------------------------------------//
struct Common
{
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string config_path;
    std::size_t walks = 0;
    int max_iters = 0;

    SolverConfig solver_config() const
    {
        SolverConfig cfg;
        guard_config([&] {
            if (!config_path.empty())
                cfg = solver_config_from_json(read_json(config_path));
        });
        cfg.walk.base_seed = seed;
        cfg.walk.threads = threads;
        if (walks > 0)
            cfg.walk.n_walks = walks;
        if (max_iters > 0)
            cfg.max_outer_iters = max_iters;
        guard_config([&] { cfg.validate(); });
        return cfg;
    }
};

void add_common(CLI::App* app, Common& c, bool solver)
{
    app->add_option("--seed", c.seed, "Base seed (default 42 or $HALFBERN_SEED)");
    app->add_option("--threads", c.threads, "Worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber);
    if (solver)
    {
        app->add_option("--config", c.config_path, "Solver config JSON");
        app->add_option("--walks", c.walks, "Override walks per probe point");
        app->add_option("--max-iters", c.max_iters, "Override max outer iterations");
    }
}

RadialDomain load_core(std::string const& path, std::size_t directions)
{
    RadialDomain core;
    guard_config([&] {
        if (path.empty())
            core = RadialDomain::ball(Vec{0.0, 0.0}, 1.0, directions);
        else
            core = domain_from_spec(read_json(path));
    });
    return core;
}

//---------------------------------------------------------------------------//
int cmd_solve(Common const& c,
              std::string const& k_spec,
              double lambda,
              std::string const& out_path,
              std::string const& csv_path,
              std::ostream& out,
              std::ostream& err)
{
    if (!(lambda > 0) || !std::isfinite(lambda))
        throw UsageError("--lambda must be positive");
    auto const cfg = c.solver_config();
    auto const core = load_core(k_spec, 0);
    auto const sol = solve(core, lambda, cfg);

    Json j;
    j["provenance"] = provenance(c.seed, to_json(cfg));
    j["core"] = to_json(core);
    j["solution"] = to_json(sol);
    std::string const text = j.dump(2) + "\n";
    if (out_path.empty())
        out << text;
    else
        write_text(out_path, text);
    if (!csv_path.empty())
    {
        std::ostringstream ss;
        ss << provenance_comment(c.seed, to_json(cfg)) << '\n';
        write_boundary_csv(ss, sol.domain);
        write_text(csv_path, ss.str());
    }
    if (!sol.converged)
    {
        err << "solver did not converge: residual " << sol.residual << " after "
            << sol.iterations << " iterations\n";
        return 1;
    }
    return 0;
}

int cmd_annulus(Common const& c,
                int d,
                double r,
                double R,
                bool estimate,
                std::size_t walks,
                std::ostream& out)
{
    if (d < 1 || d > 3)
        throw UsageError("--d must be 1, 2 or 3");
    AnnulusSpec const spec{zeros(d), r, R};
    guard_config([&] { spec.validate(); });

    Json cfg = {{"d", d}, {"r", r}, {"R", R}, {"estimate", estimate}, {"walks", walks}};
    out << provenance_comment(c.seed, cfg) << '\n';
    out << "d,r,R,lower,quadrature,upper";
    if (estimate)
        out << ",estimate,std_error";
    out << '\n';
    double const quad = d <= 2 ? form1_quadrature(spec) : std::nan("");
    out << d << ',' << csv_number(r) << ',' << csv_number(R) << ','
        << csv_number(derivative_lower_bound(spec)) << ',' << csv_number(quad) << ','
        << csv_number(derivative_upper_bound(spec));
    if (estimate)
    {
        WalkConfig wc;
        wc.n_walks = walks;
        wc.base_seed = c.seed;
        wc.threads = c.threads;
        auto const omega = outer_ball(spec);
        auto const core = inner_ball(spec);
        auto const e = estimate_dhalf(
            spec.outer_point(), -unit_axis(d, 0), SolveRegion(omega, core), wc);
        out << ',' << csv_number(e.value) << ',' << csv_number(e.std_error);
    }
    out << '\n';
    return 0;
}

int cmd_bounds(Common const& c,
               int d,
               double rk,
               std::string const& grid,
               bool linear,
               std::ostream& out)
{
    if (d < 1 || d > 3)
        throw UsageError("--d must be 1, 2 or 3");
    if (!(rk > 0))
        throw UsageError("--rk must be positive");
    auto const lambdas = parse_grid(grid, linear);
    Json cfg = {{"d", d}, {"rk", rk}, {"lambda_grid", grid}, {"linear", linear}};
    out << provenance_comment(c.seed, cfg) << '\n';
    out << "lambda,g_estimate,g_exact,upper\n";
    for (double l : lambdas)
    {
        auto const b = bound_report(l, rk, d);
        if (!b.consistent)
            throw Error("internal error: lower bound exceeds upper bound");
        out << csv_number(l) << ',' << csv_number(b.g_estimate) << ','
            << csv_number(b.g_value) << ',' << csv_number(b.upper) << '\n';
    }
    return 0;
}

int cmd_metric(std::string const& a_path,
               std::string const& b_path,
               std::string const& x0_text,
               std::ostream& out)
{
    RadialDomain a, b;
    guard_config([&] {
        a = domain_from_spec(read_json(a_path));
        b = domain_from_spec(read_json(b_path));
    });
    Vec const x0 = x0_text.empty() ? a.center() : parse_point(x0_text);
    double value = 0;
    guard_config([&] { value = triangle_metric(a, b, x0); });
    out << csv_number(value) << '\n';
    return 0;
}

int cmd_verify(Common const& c,
               std::string const& suite,
               std::string const& k_spec,
               std::size_t directions,
               std::string const& lambdas_text,
               std::string const& out_path,
               std::string const& csv_path,
               std::string const& svg_path,
               std::ostream& out)
{
    auto const& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw UsageError("unknown suite '" + suite + "'");
    auto lambdas = parse_list(lambdas_text);
    for (double l : lambdas)
    {
        if (!(l > 0) || !std::isfinite(l))
            throw UsageError("lambdas must be positive");
    }
    std::sort(lambdas.begin(), lambdas.end());
    auto const cfg = c.solver_config();
    auto const core = load_core(k_spec, directions);

    std::vector<BernoulliSolution> sols;
    for (double l : lambdas)
        sols.push_back(solve(core, l, cfg));
    auto rep = run_suite(suite, core, sols, cfg);

    Json cfg_json = {{"suite", suite},
                     {"lambdas", lambdas},
                     {"core", to_json(core)},
                     {"solver", to_json(cfg)}};
    rep.version = HALFBERN_VERSION;
    rep.config_hash = fnv1a_hex(cfg_json.dump());
    Json j = to_json(rep);
    j["config"] = cfg_json;
    std::string const text = j.dump(2) + "\n";

    if (out_path.empty())
    {
        out << text;
    }
    else
    {
        write_text(out_path, text);
        for (auto const& chk : rep.checks)
        {
            out << to_string(chk.status) << ' ' << chk.name << " margin=" << chk.margin
                << " sigma=" << chk.sigma << '\n';
        }
        out << "overall " << to_string(rep.overall()) << '\n';
    }
    if (!csv_path.empty())
    {
        std::ostringstream ss;
        ss << provenance_comment(c.seed, cfg_json) << '\n';
        write_summary_csv(ss, rep);
        write_text(csv_path, ss.str());
    }
    if (!svg_path.empty())
    {
        std::ostringstream ss;
        ss << "<!-- " << provenance_comment(c.seed, cfg_json).substr(2) << " -->\n";
        write_svg(ss, core, sols, true);
        write_text(svg_path, ss.str());
    }
    return rep.overall() == Verdict::fail ? 1 : 0;
}

int cmd_plot(std::string const& k_spec,
             std::vector<std::string> const& solution_paths,
             bool rays,
             std::string const& out_path,
             std::ostream& out)
{
    auto const core = load_core(k_spec, 0);
    std::vector<BernoulliSolution> sols;
    guard_config([&] {
        for (auto const& p : solution_paths)
        {
            auto const j = read_json(p);
            sols.push_back(solution_from_json(j.contains("solution") ? j.at("solution") : j));
        }
    });
    std::ostringstream ss;
    write_svg(ss, core, sols, rays);
    if (out_path.empty())
        out << ss.str();
    else
        write_text(out_path, ss.str());
    return 0;
}
}  // namespace

//---------------------------------------------------------------------------//
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exterior Bernoulli problem for the half Laplacian", "halfbern"};
    app.require_subcommand(1);
    app.set_version_flag("--version", HALFBERN_VERSION);

    Common common;
    try
    {
        common.seed = default_seed();
    }
    catch (UsageError const& e)
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve for Omega_lambda");
    std::string k_spec, out_path, csv_path;
    double lambda = 0;
    solve_cmd->add_option("--k-spec", k_spec, "Core domain JSON")->required();
    solve_cmd->add_option("--lambda", lambda, "Target D^{1/2} value")->required();
    solve_cmd->add_option("--out", out_path, "Solution JSON (stdout if omitted)");
    solve_cmd->add_option("--boundary-csv", csv_path, "Boundary samples CSV");
    add_common(solve_cmd, common, true);

    // annulus-derivative
    auto* ann_cmd = app.add_subcommand("annulus-derivative", "Barrier derivative bracket");
    int ann_d = 1;
    double ann_r = 1, ann_R = 2;
    bool ann_estimate = false;
    std::size_t ann_walks = 100000;
    ann_cmd->add_option("--d", ann_d, "Dimension")->required();
    ann_cmd->add_option("--r", ann_r, "Inner radius")->required();
    ann_cmd->add_option("--R", ann_R, "Outer radius")->required();
    ann_cmd->add_flag("--estimate", ann_estimate, "Add a walk-on-spheres estimate");
    ann_cmd->add_option("--walks", ann_walks, "Walks per probe point for --estimate");
    add_common(ann_cmd, common, false);

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "Distance bounds on a lambda grid");
    int b_d = 2;
    double b_rk = 1;
    std::string b_grid;
    bool b_linear = false;
    bounds_cmd->add_option("--d", b_d, "Dimension")->required();
    bounds_cmd->add_option("--rk", b_rk, "Interior ball radius r_K")->required();
    bounds_cmd->add_option("--lambda-grid", b_grid, "a:b:n (geometric spacing)")->required();
    bounds_cmd->add_flag("--linear", b_linear, "Use linear spacing");
    add_common(bounds_cmd, common, false);

    // metric
    auto* metric_cmd = app.add_subcommand("metric", "Starshaped scaling metric");
    std::string m_a, m_b, m_x0;
    metric_cmd->add_option("--a", m_a, "First domain JSON")->required();
    metric_cmd->add_option("--b", m_b, "Second domain JSON")->required();
    metric_cmd->add_option("--x0", m_x0, "Anchor as x,y (default: center of a)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Property checks on families of solutions");
    std::string v_suite = "all", v_k, v_lambdas = "0.5,1,2", v_out, v_csv, v_svg;
    std::size_t v_dirs = 32;
    verify_cmd->add_option("--suite", v_suite, "monotonicity|triangle|distance|rays|"
                                               "moving-plane|hopf|all");
    verify_cmd->add_option("--k-spec", v_k, "Core domain JSON (default unit disk)");
    verify_cmd->add_option("--directions", v_dirs, "Grid size of the default core")
        ->check(CLI::Range(8, 4096));
    verify_cmd->add_option("--lambdas", v_lambdas, "Comma-separated lambda values");
    verify_cmd->add_option("--out", v_out, "Report JSON (stdout if omitted)");
    verify_cmd->add_option("--csv", v_csv, "Summary table CSV");
    verify_cmd->add_option("--svg", v_svg, "Plot of K, Omega_lambda and normal rays");
    add_common(verify_cmd, common, true);

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "SVG of K and solutions");
    std::string p_k, p_out;
    std::vector<std::string> p_solutions;
    bool p_rays = false;
    plot_cmd->add_option("--k-spec", p_k, "Core domain JSON")->required();
    plot_cmd->add_option("--solution", p_solutions, "Solution JSON (repeatable)");
    plot_cmd->add_flag("--rays", p_rays, "Draw inward normal rays");
    plot_cmd->add_option("--out", p_out, "SVG path (stdout if omitted)");

    std::vector<char const*> argv;
    for (auto const& a : args)
        argv.push_back(a.c_str());
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (CLI::ParseError const& e)
    {
        if (e.get_exit_code() == 0)
        {
            out << (dynamic_cast<CLI::CallForVersion const*>(&e) ? std::string(e.what())
                                                                  : app.help());
            out << '\n';
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try
    {
        if (*solve_cmd)
            return cmd_solve(common, k_spec, lambda, out_path, csv_path, out, err);
        if (*ann_cmd)
            return cmd_annulus(common, ann_d, ann_r, ann_R, ann_estimate, ann_walks, out);
        if (*bounds_cmd)
            return cmd_bounds(common, b_d, b_rk, b_grid, b_linear, out);
        if (*metric_cmd)
            return cmd_metric(m_a, m_b, m_x0, out);
        if (*verify_cmd)
            return cmd_verify(common, v_suite, v_k, v_dirs, v_lambdas, v_out, v_csv, v_svg, out);
        if (*plot_cmd)
            return cmd_plot(p_k, p_solutions, p_rays, p_out, out);
    }
    catch (UsageError const& e)
    {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

int run(int argc, char const* const* argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
