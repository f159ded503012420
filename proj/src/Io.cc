//---------------------------------------------------------------------------//
//! \file Io.cc
//---------------------------------------------------------------------------//
#include "halfbern/Io.hh"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace halfbern
{
namespace
{
// Non-finite doubles are stored as strings so that reports round-trip
Json num(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

double get_num(Json const& j)
{
    if (j.is_string())
    {
        auto const s = j.get<std::string>();
        if (s == "nan")
            return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        throw Error("expected a number, got '" + s + "'");
    }
    if (!j.is_number())
        throw Error("expected a number");
    return j.get<double>();
}

Json nums(std::vector<double> const& v)
{
    Json a = Json::array();
    for (double x : v)
        a.push_back(num(x));
    return a;
}

std::vector<double> get_nums(Json const& j)
{
    if (!j.is_array())
        throw Error("expected an array of numbers");
    std::vector<double> v;
    for (auto const& x : j)
        v.push_back(get_num(x));
    return v;
}

Json vec_json(Vec const& v)
{
    Json a = Json::array();
    for (int k = 0; k < v.dim(); ++k)
        a.push_back(v[k]);
    return a;
}

Vec get_vec(Json const& j)
{
    auto const v = get_nums(j);
    if (v.empty() || v.size() > 3)
        throw Error("point must have 1 to 3 coordinates");
    Vec out(static_cast<int>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k)
        out[static_cast<int>(k)] = v[k];
    return out;
}

Json const& field(Json const& j, char const* key)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(std::string("missing field '") + key + "'");
    return j.at(key);
}

template<class T>
T get_or(Json const& j, char const* key, T fallback)
{
    if (!j.contains(key))
        return fallback;
    if constexpr (std::is_same_v<T, double>)
        return get_num(j.at(key));
    else
        return j.at(key).get<T>();
}
}  // namespace

//---------------------------------------------------------------------------//
// DOMAINS
//---------------------------------------------------------------------------//
Json to_json(RadialDomain const& dom)
{
    Json j;
    j["dimension"] = dom.dim();
    j["center"] = vec_json(dom.center());
    Json dirs = Json::array();
    for (std::size_t i = 0; i < dom.size(); ++i)
    {
        if (dom.dim() == 2)
            dirs.push_back(dom.grid().angle(i));
        else
            dirs.push_back(vec_json(dom.grid().direction(i)));
    }
    j["angles_or_directions"] = dirs;
    j["radii"] = nums(dom.radii());
    return j;
}

RadialDomain radial_domain_from_json(Json const& j)
{
    int const d = field(j, "dimension").get<int>();
    Vec const center = get_vec(field(j, "center"));
    if (center.dim() != d)
        throw Error("center does not match the dimension");
    auto const& dirs = field(j, "angles_or_directions");
    if (!dirs.is_array())
        throw Error("angles_or_directions must be an array");
    DirectionGrid grid;
    if (d == 2)
    {
        grid = DirectionGrid::from_angles(get_nums(dirs));
    }
    else
    {
        std::vector<Vec> v;
        for (auto const& x : dirs)
            v.push_back(get_vec(x));
        grid = DirectionGrid::from_directions(d, std::move(v));
    }
    return RadialDomain(center, std::move(grid), get_nums(field(j, "radii")));
}

RadialDomain ellipse_domain(Vec const& center, double a, double b, std::size_t n)
{
    if (center.dim() != 2)
        throw Error("ellipse needs a planar center");
    if (!(a > 0 && b > 0))
        throw Error("ellipse semi-axes must be positive");
    return RadialDomain::from_function(center, DirectionGrid::uniform(2, n), [&](Vec const& u) {
        return 1 / std::sqrt(u[0] * u[0] / (a * a) + u[1] * u[1] / (b * b));
    });
}

RadialDomain domain_from_spec(Json const& j)
{
    if (!j.is_object())
        throw Error("domain spec must be a JSON object");
    if (!j.contains("type"))
        return radial_domain_from_json(j);
    auto const type = j.at("type").get<std::string>();
    auto const n = get_or<std::size_t>(j, "directions", 0);
    if (type == "ball")
        return RadialDomain::ball(get_vec(field(j, "center")), get_num(field(j, "radius")), n);
    if (type == "ellipse")
        return ellipse_domain(get_vec(field(j, "center")),
                              get_num(field(j, "a")),
                              get_num(field(j, "b")),
                              n);
    if (type == "radial")
        return radial_domain_from_json(j);
    throw Error("unknown domain type '" + type + "'");
}

void write_boundary_csv(std::ostream& os, RadialDomain const& dom)
{
    os << "theta_index";
    for (int k = 0; k < dom.dim(); ++k)
        os << ",x_" << (k + 1);
    os << '\n';
    char buf[32];
    for (std::size_t i = 0; i < dom.size(); ++i)
    {
        Vec const p = dom.boundary_point(i);
        os << i;
        for (int k = 0; k < dom.dim(); ++k)
        {
            std::snprintf(buf, sizeof(buf), "%.17g", p[k]);
            os << ',' << buf;
        }
        os << '\n';
    }
}

//---------------------------------------------------------------------------//
// CONFIG, SOLUTIONS, REPORTS
//---------------------------------------------------------------------------//
Json to_json(WalkConfig const& cfg)
{
    Json j;
    j["n_walks"] = cfg.n_walks;
    j["max_steps"] = cfg.max_steps;
    j["shrink_factor"] = cfg.shrink;
    j["base_seed"] = cfg.base_seed;
    j["parallel_chunk"] = cfg.parallel_chunk;
    return j;
}

Json to_json(SolverConfig const& cfg)
{
    Json j;
    j["tol_fb"] = cfg.tol_fb;
    j["max_outer_iters"] = cfg.max_outer_iters;
    j["damping"] = cfg.damping;
    j["smoothing_window"] = cfg.smoothing_window;
    j["offset_cap"] = cfg.offset_cap;
    j["offset_floor"] = cfg.offset_floor;
    j["t_grid"] = {{"fraction", cfg.t_grid.fraction},
                   {"ratio", cfg.t_grid.ratio},
                   {"points", cfg.t_grid.points}};
    j["walk"] = to_json(cfg.walk);
    return j;
}

WalkConfig walk_config_from_json(Json const& j, WalkConfig base)
{
    if (!j.is_object())
        throw Error("walk config must be a JSON object");
    static char const* const known[]
        = {"n_walks", "max_steps", "shrink_factor", "base_seed", "parallel_chunk", "threads"};
    for (auto const& [key, value] : j.items())
    {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw Error("unknown walk config field '" + key + "'");
    }
    base.n_walks = get_or(j, "n_walks", base.n_walks);
    base.max_steps = get_or(j, "max_steps", base.max_steps);
    base.shrink = get_or(j, "shrink_factor", base.shrink);
    base.base_seed = get_or(j, "base_seed", base.base_seed);
    base.parallel_chunk = get_or(j, "parallel_chunk", base.parallel_chunk);
    base.threads = get_or(j, "threads", base.threads);
    base.validate();
    return base;
}

SolverConfig solver_config_from_json(Json const& j, SolverConfig base)
{
    if (!j.is_object())
        throw Error("solver config must be a JSON object");
    static char const* const known[] = {"tol_fb",
                                        "max_outer_iters",
                                        "damping",
                                        "smoothing_window",
                                        "offset_cap",
                                        "offset_floor",
                                        "t_grid",
                                        "walk"};
    for (auto const& [key, value] : j.items())
    {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw Error("unknown solver config field '" + key + "'");
    }
    base.tol_fb = get_or(j, "tol_fb", base.tol_fb);
    base.max_outer_iters = get_or(j, "max_outer_iters", base.max_outer_iters);
    base.damping = get_or(j, "damping", base.damping);
    base.smoothing_window = get_or(j, "smoothing_window", base.smoothing_window);
    base.offset_cap = get_or(j, "offset_cap", base.offset_cap);
    base.offset_floor = get_or(j, "offset_floor", base.offset_floor);
    if (j.contains("t_grid"))
    {
        auto const& t = j.at("t_grid");
        base.t_grid.fraction = get_or(t, "fraction", base.t_grid.fraction);
        base.t_grid.ratio = get_or(t, "ratio", base.t_grid.ratio);
        base.t_grid.points = get_or(t, "points", base.t_grid.points);
    }
    if (j.contains("walk"))
        base.walk = walk_config_from_json(j.at("walk"), base.walk);
    base.validate();
    return base;
}

Json to_json(DerivativeEstimate const& d)
{
    Json j;
    j["value"] = num(d.value);
    j["std_error"] = num(d.std_error);
    j["slope"] = num(d.slope);
    j["slope_error"] = num(d.slope_error);
    j["constant_fit"] = d.constant_fit;
    j["t_grid"] = nums(d.t_grid);
    j["quotients"] = nums(d.quotients);
    j["quotient_errors"] = nums(d.quotient_errors);
    return j;
}

namespace
{
DerivativeEstimate derivative_from_json(Json const& j)
{
    DerivativeEstimate d;
    d.value = get_num(field(j, "value"));
    d.std_error = get_num(field(j, "std_error"));
    d.slope = get_num(field(j, "slope"));
    d.slope_error = get_num(field(j, "slope_error"));
    d.constant_fit = field(j, "constant_fit").get<bool>();
    d.t_grid = get_nums(field(j, "t_grid"));
    d.quotients = get_nums(field(j, "quotients"));
    d.quotient_errors = get_nums(field(j, "quotient_errors"));
    return d;
}
}  // namespace

Json to_json(BernoulliSolution const& s)
{
    Json j;
    j["lambda"] = num(s.lambda);
    j["converged"] = s.converged;
    j["iterations"] = s.iterations;
    j["residual"] = num(s.residual);
    j["raw_residual"] = num(s.raw_residual);
    j["domain"] = to_json(s.domain);
    j["radius_error"] = nums(s.radius_error);
    Json d = Json::array();
    for (auto const& e : s.derivative)
        d.push_back(to_json(e));
    j["derivative"] = d;
    Json h = Json::array();
    for (auto const& step : s.history)
        h.push_back({{"residual", num(step.residual)},
                     {"raw_residual", num(step.raw_residual)},
                     {"min_gap", num(step.min_gap)}});
    j["history"] = h;
    j["config"] = to_json(s.config);
    return j;
}

BernoulliSolution solution_from_json(Json const& j)
{
    BernoulliSolution s;
    s.lambda = get_num(field(j, "lambda"));
    s.converged = field(j, "converged").get<bool>();
    s.iterations = field(j, "iterations").get<int>();
    s.residual = get_num(field(j, "residual"));
    s.raw_residual = get_num(field(j, "raw_residual"));
    s.domain = radial_domain_from_json(field(j, "domain"));
    s.radius_error = get_nums(field(j, "radius_error"));
    for (auto const& e : field(j, "derivative"))
        s.derivative.push_back(derivative_from_json(e));
    for (auto const& h : field(j, "history"))
        s.history.push_back({get_num(field(h, "residual")),
                             get_num(field(h, "raw_residual")),
                             get_num(field(h, "min_gap"))});
    s.config = solver_config_from_json(field(j, "config"));
    if (s.radius_error.size() != s.domain.size())
        throw Error("solution radius_error does not match the domain");
    return s;
}

Json to_json(CheckResult const& c)
{
    Json j;
    j["name"] = c.name;
    j["status"] = to_string(c.status);
    j["margin"] = num(c.margin);
    j["sigma"] = num(c.sigma);
    j["tolerance"] = num(c.tolerance);
    j["note"] = c.note;
    return j;
}

CheckResult check_from_json(Json const& j)
{
    CheckResult c;
    c.name = field(j, "name").get<std::string>();
    c.status = verdict_from_string(field(j, "status").get<std::string>());
    c.margin = get_num(field(j, "margin"));
    c.sigma = get_num(field(j, "sigma"));
    c.tolerance = get_num(field(j, "tolerance"));
    c.note = field(j, "note").get<std::string>();
    return c;
}

Json to_json(SolutionSummary const& s)
{
    Json j;
    j["lambda"] = num(s.lambda);
    j["converged"] = s.converged;
    j["iterations"] = s.iterations;
    j["residual"] = num(s.residual);
    j["raw_residual"] = num(s.raw_residual);
    j["mean_radius"] = num(s.mean_radius);
    j["min_radius"] = num(s.min_radius);
    j["max_radius"] = num(s.max_radius);
    j["dist"] = num(s.dist);
    j["g_exact"] = num(s.g_exact);
    j["upper"] = num(s.upper);
    j["triangle"] = num(s.triangle);
    j["pooled_error"] = num(s.pooled_error);
    return j;
}

SolutionSummary summary_from_json(Json const& j)
{
    SolutionSummary s;
    s.lambda = get_num(field(j, "lambda"));
    s.converged = field(j, "converged").get<bool>();
    s.iterations = field(j, "iterations").get<int>();
    s.residual = get_num(field(j, "residual"));
    s.raw_residual = get_num(field(j, "raw_residual"));
    s.mean_radius = get_num(field(j, "mean_radius"));
    s.min_radius = get_num(field(j, "min_radius"));
    s.max_radius = get_num(field(j, "max_radius"));
    s.dist = get_num(field(j, "dist"));
    s.g_exact = get_num(field(j, "g_exact"));
    s.upper = get_num(field(j, "upper"));
    s.triangle = get_num(field(j, "triangle"));
    s.pooled_error = get_num(field(j, "pooled_error"));
    return s;
}

Json to_json(VerificationReport const& r)
{
    Json j;
    j["experiment"] = r.experiment;
    j["version"] = r.version;
    j["seed"] = r.seed;
    j["config_hash"] = r.config_hash;
    j["overall"] = to_string(r.overall());
    j["core"] = to_json(r.core);
    j["lambdas"] = nums(r.lambdas);
    Json s = Json::array();
    for (auto const& x : r.solutions)
        s.push_back(to_json(x));
    j["solutions"] = s;
    Json c = Json::array();
    for (auto const& x : r.checks)
        c.push_back(to_json(x));
    j["checks"] = c;
    return j;
}

VerificationReport report_from_json(Json const& j)
{
    VerificationReport r;
    r.experiment = field(j, "experiment").get<std::string>();
    r.version = field(j, "version").get<std::string>();
    r.seed = field(j, "seed").get<std::uint64_t>();
    r.config_hash = field(j, "config_hash").get<std::string>();
    r.core = radial_domain_from_json(field(j, "core"));
    r.lambdas = get_nums(field(j, "lambdas"));
    for (auto const& x : field(j, "solutions"))
        r.solutions.push_back(summary_from_json(x));
    for (auto const& x : field(j, "checks"))
        r.checks.push_back(check_from_json(x));
    return r;
}

Json to_json(BoundReport const& b)
{
    Json j;
    j["dimension"] = b.dim;
    j["lambda"] = num(b.lambda);
    j["r_K"] = num(b.r_k);
    j["C"] = num(b.constant);
    if (b.dim == 1)
        j["C_source"] = "d = 1 lower bound of the barrier, C = (2/pi)^2";
    j["A_theorem"] = num(b.a_theorem);
    j["A_proof"] = num(b.a_proof);
    j["t_root"] = num(b.t_root);
    j["g_exact"] = num(b.g_value);
    j["g_estimate"] = num(b.g_estimate);
    j["upper"] = num(b.upper);
    j["regime"] = b.regime;
    j["alpha"] = num(b.alpha);
    j["beta"] = num(b.beta);
    j["consistent"] = b.consistent;
    return j;
}

//---------------------------------------------------------------------------//
// PROVENANCE AND TABLES
//---------------------------------------------------------------------------//
std::string fnv1a_hex(std::string const& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json provenance(std::uint64_t seed, Json const& config)
{
    return {{"tool", "halfbern"},
            {"version", HALFBERN_VERSION},
            {"seed", seed},
            {"config_hash", fnv1a_hex(config.dump())}};
}

std::string provenance_comment(std::uint64_t seed, Json const& config)
{
    return std::string("# halfbern ") + HALFBERN_VERSION + " seed=" + std::to_string(seed)
           + " config=" + fnv1a_hex(config.dump());
}

void write_summary_csv(std::ostream& os, VerificationReport const& r)
{
    os << "lambda,dist,g_exact,upper,triangle,residual\n";
    char buf[256];
    for (std::size_t i = 0; i < r.solutions.size(); ++i)
    {
        auto const& s = r.solutions[i];
        bool const has_next = i + 1 < r.solutions.size();
        std::snprintf(buf,
                      sizeof(buf),
                      "%.10g,%.10g,%.10g,%.10g,%s,%.10g\n",
                      s.lambda,
                      s.dist,
                      s.g_exact,
                      s.upper,
                      has_next ? std::to_string(s.triangle).c_str() : "",
                      s.residual);
        os << buf;
    }
}

void write_svg(std::ostream& os,
               RadialDomain const& core,
               std::vector<BernoulliSolution> const& solutions,
               bool rays)
{
    if (core.dim() != 2)
        throw Error("SVG output needs planar domains");
    double extent = core.max_radius() + norm(core.center());
    for (auto const& s : solutions)
        extent = std::max(extent, s.domain.max_radius() + norm(s.domain.center()));
    extent *= 1.1;
    double const size = 600;
    double const scale = size / (2 * extent);
    auto sx = [&](Vec const& p) { return (p[0] + extent) * scale; };
    auto sy = [&](Vec const& p) { return (extent - p[1]) * scale; };
    auto px = [&](Vec const& p) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f", sx(p), sy(p));
        return std::string(buf);
    };
    auto outline = [&](RadialDomain const& d, char const* stroke, char const* fill) {
        os << "<polygon fill=\"" << fill << "\" stroke=\"" << stroke
           << "\" stroke-width=\"1.5\" points=\"";
        for (auto const& p : boundary_samples(d, 512))
            os << px(p) << ' ';
        os << "\"/>\n";
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\""
       << size << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    static char const* const palette[]
        = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
    for (std::size_t i = 0; i < solutions.size(); ++i)
    {
        auto const& s = solutions[i];
        char const* color = palette[i % std::size(palette)];
        outline(s.domain, color, "none");
        if (rays)
        {
            for (std::size_t k = 0; k < s.domain.size(); ++k)
            {
                Vec const x = s.domain.boundary_point(k);
                Vec const y = x + s.domain.max_radius() * s.domain.inward_normal(k);
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "<line stroke=\"%s\" stroke-opacity=\"0.4\" x1=\"%.2f\" "
                              "y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n",
                              color, sx(x), sy(x), sx(y), sy(y));
                os << buf;
            }
        }
        char label[64];
        std::snprintf(label, sizeof(label), "lambda = %g", s.lambda);
        os << "<text x=\"10\" y=\"" << 20 + 18 * i << "\" fill=\"" << color
           << "\" font-family=\"sans-serif\" font-size=\"14\">" << label << "</text>\n";
    }
    outline(core, "black", "#cccccc");
    os << "</svg>\n";
}

std::string read_file(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json(std::string const& path)
{
    try
    {
        return Json::parse(read_file(path));
    }
    catch (Json::parse_error const& e)
    {
        throw Error("malformed JSON in '" + path + "': " + e.what());
    }
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
