//---------------------------------------------------------------------------//
//! \file Verify.cc
//---------------------------------------------------------------------------//
#include "halfbern/Verify.hh"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "halfbern/Bounds.hh"
#include "halfbern/Metrics.hh"

namespace halfbern
{
namespace
{
constexpr double n_sigma = 3;
constexpr double inf = std::numeric_limits<double>::infinity();

std::string fmt(char const* f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, a);
    return buf;
}

std::string lam(double a)
{
    return fmt("%g", a);
}

std::string pair_name(char const* base, double a, double b)
{
    return std::string(base) + "[" + lam(a) + "," + lam(b) + "]";
}

void require_common_grid(BernoulliSolution const& a, BernoulliSolution const& b)
{
    if (!(a.domain.grid() == b.domain.grid()) || !(a.domain.center() == b.domain.center()))
        throw Error("solutions must share the direction grid and center");
}

std::vector<BernoulliSolution> sorted_by_lambda(std::vector<BernoulliSolution> s)
{
    std::stable_sort(s.begin(), s.end(), [](auto const& a, auto const& b) {
        return a.lambda < b.lambda;
    });
    return s;
}

// Direction index realizing the smallest radial gap to the core
std::size_t closest_direction(BernoulliSolution const& s, RadialDomain const& core)
{
    auto const rk = anchored_radii(core, s.domain.center(), s.domain.grid());
    std::size_t best = 0;
    for (std::size_t i = 1; i < rk.size(); ++i)
    {
        if (s.domain.radii()[i] - rk[i] < s.domain.radii()[best] - rk[best])
            best = i;
    }
    return best;
}

double measured_distance(BernoulliSolution const& s, RadialDomain const& core)
{
    return boundary_distance(s.domain, core);
}
}  // namespace

//---------------------------------------------------------------------------//
char const* to_string(Verdict v)
{
    switch (v)
    {
        case Verdict::pass:
            return "PASS";
        case Verdict::fail:
            return "FAIL";
        case Verdict::inconclusive:
            return "INCONCLUSIVE";
    }
    return "?";
}

Verdict verdict_from_string(std::string const& s)
{
    if (s == "PASS")
        return Verdict::pass;
    if (s == "FAIL")
        return Verdict::fail;
    if (s == "INCONCLUSIVE")
        return Verdict::inconclusive;
    throw Error("unknown verdict '" + s + "'");
}

Verdict VerificationReport::overall() const
{
    Verdict v = Verdict::pass;
    for (auto const& c : checks)
    {
        if (c.status == Verdict::fail)
            return Verdict::fail;
        if (c.status == Verdict::inconclusive)
            v = Verdict::inconclusive;
    }
    return v;
}

//---------------------------------------------------------------------------//
// SOLUTION CHECKS
//---------------------------------------------------------------------------//
CheckResult check_monotonicity(std::vector<BernoulliSolution> const& solutions)
{
    CheckResult out;
    out.name = "monotonicity";
    out.tolerance = n_sigma;

    std::vector<BernoulliSolution> used;
    int skipped = 0;
    for (auto const& s : solutions)
    {
        if (s.converged)
            used.push_back(s);
        else
            ++skipped;
    }
    used = sorted_by_lambda(std::move(used));
    if (skipped > 0)
        out.note = "excluded " + std::to_string(skipped) + " unconverged solution(s); ";
    if (used.size() < 2)
    {
        out.margin = inf;
        out.note += "vacuous (fewer than two solutions)";
        return out;
    }

    bool violated = false;
    bool overlap = false;
    out.margin = inf;
    for (std::size_t i = 0; i < used.size(); ++i)
    {
        for (std::size_t j = i + 1; j < used.size(); ++j)
        {
            auto const& big = used[i];
            auto const& small = used[j];
            require_common_grid(big, small);
            for (std::size_t k = 0; k < big.domain.size(); ++k)
            {
                double const m = big.domain.radii()[k] - small.domain.radii()[k];
                double const sig = std::hypot(big.radius_error[k], small.radius_error[k]);
                if (m < -n_sigma * sig)
                    violated = true;
                else if (m <= n_sigma * sig)
                    overlap = true;
                if (m - n_sigma * sig < out.margin)
                {
                    out.margin = m - n_sigma * sig;
                    out.sigma = sig;
                }
            }
        }
    }
    out.status = violated  ? Verdict::fail
                 : overlap ? Verdict::inconclusive
                           : Verdict::pass;
    out.note += "margin = min over pairs and directions of (rho_small_lambda - "
                "rho_large_lambda - 3 sigma)";
    return out;
}

CheckResult check_triangle_bound(BernoulliSolution const& s1,
                                 BernoulliSolution const& s2,
                                 Vec const& x0)
{
    require_common_grid(s1, s2);
    CheckResult out;
    out.name = pair_name("triangle", s1.lambda, s2.lambda);
    out.tolerance = n_sigma;

    auto const& ra = s1.domain.radii();
    auto const& rb = s2.domain.radii();
    double const metric = triangle_metric(s1.domain, s2.domain, x0);
    std::size_t at = 0;
    double worst = inf;
    for (std::size_t k = 0; k < ra.size(); ++k)
    {
        double const q = std::min(ra[k] / rb[k], rb[k] / ra[k]);
        if (q < worst)
        {
            worst = q;
            at = k;
        }
    }
    out.sigma = std::hypot(s1.radius_error[at] / ra[at], s2.radius_error[at] / rb[at]);
    double const bound = 2 * std::abs(std::log(s2.lambda) - std::log(s1.lambda));
    out.margin = bound + n_sigma * out.sigma - metric;
    out.status = out.margin >= 0 ? Verdict::pass : Verdict::fail;
    out.note = "metric " + fmt("%.6g", metric) + " vs bound " + fmt("%.6g", bound);
    return out;
}

CheckResult check_distance_bounds(BernoulliSolution const& s, RadialDomain const& core)
{
    CheckResult out;
    out.name = "distance[" + lam(s.lambda) + "]";
    out.tolerance = n_sigma;

    double const dist = measured_distance(s, core);
    double const rk = core_inner_radius(core);
    auto const [lower, upper] = distance_bracket(s.lambda, rk, s.domain.dim());
    out.sigma = s.radius_error[closest_direction(s, core)];
    double const slack = n_sigma * out.sigma;
    double const lo_margin = dist - (lower - slack);
    double const up_margin = upper + slack - dist;
    out.margin = std::min(lo_margin, up_margin);
    out.status = out.margin >= 0 && lower <= upper ? Verdict::pass : Verdict::fail;
    out.note = "dist " + fmt("%.6g", dist) + " in [" + fmt("%.6g", lower) + ", "
               + fmt("%.6g", upper) + "], r_K " + fmt("%.6g", rk);
    if (!s.converged)
        out.note += "; solution not converged";
    return out;
}

CheckResult check_distance_trend(std::vector<BernoulliSolution> const& solutions,
                                 RadialDomain const& core)
{
    CheckResult out;
    out.name = "distance-trend";
    out.tolerance = n_sigma;
    auto const sorted = sorted_by_lambda(solutions);
    out.margin = inf;
    if (sorted.size() < 2)
    {
        out.note = "vacuous (fewer than two solutions)";
        return out;
    }
    bool violated = false;
    bool overlap = false;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    {
        auto const& a = sorted[i];
        auto const& b = sorted[i + 1];
        double const diff = measured_distance(a, core) - measured_distance(b, core);
        double const sig = std::hypot(a.radius_error[closest_direction(a, core)],
                                      b.radius_error[closest_direction(b, core)]);
        violated = violated || diff < -n_sigma * sig;
        overlap = overlap || std::abs(diff) <= n_sigma * sig;
        if (diff - n_sigma * sig < out.margin)
        {
            out.margin = diff - n_sigma * sig;
            out.sigma = sig;
        }
    }
    out.status = violated  ? Verdict::fail
                 : overlap ? Verdict::inconclusive
                           : Verdict::pass;
    out.note = "dist must decrease as lambda increases";
    return out;
}

double starshaped_ball_radius(RadialDomain const& dom)
{
    if (dom.dim() != 2)
        throw Error("starshaped_ball_radius: d = 2 only");
    // Kernel of the polygon: intersection of the inner half-planes of its edges
    double rho = inf;
    std::size_t const n = dom.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        Vec const a = dom.boundary_point(i) - dom.center();
        Vec const e = dom.boundary_point((i + 1) % n) - dom.boundary_point(i);
        rho = std::min(rho, (e[1] * a[0] - e[0] * a[1]) / norm(e));
    }
    return rho;
}

CheckResult check_ball_starshaped(BernoulliSolution const& s, RadialDomain const& core)
{
    if (!(s.domain.center() == core.center()))
        throw Error("check_ball_starshaped: Omega and K must share the center");
    CheckResult out;
    out.name = "ball-starshaped[" + lam(s.lambda) + "]";
    out.tolerance = n_sigma;
    double const rho_k = starshaped_ball_radius(core);
    double const rho_o = starshaped_ball_radius(s.domain);
    out.sigma = *std::max_element(s.radius_error.begin(), s.radius_error.end());
    out.margin = rho_o - rho_k + n_sigma * out.sigma;
    out.status = rho_k <= 0           ? Verdict::inconclusive
                 : out.margin >= 0 ? Verdict::pass
                                   : Verdict::fail;
    out.note = "K about B_" + fmt("%.6g", rho_k) + ", Omega about B_" + fmt("%.6g", rho_o);
    if (rho_k <= 0)
        out.note += "; K is not starshaped about a ball at its center";
    return out;
}

double ray_hull_margin(std::vector<Vec> const& hull, Vec const& x, Vec const& dir)
{
    if (hull.empty())
        throw Error("ray_hull_margin: empty hull");
    if (convex_polygon_contains(hull, x))
        return std::numbers::pi;

    double lo = inf;
    double hi = -inf;
    for (auto const& v : hull)
    {
        Vec const w = v - x;
        double const a = std::atan2(dir[0] * w[1] - dir[1] * w[0], dot(dir, w));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    if (hi - lo < std::numbers::pi)
    {
        if (lo <= 0 && hi >= 0)
            return std::min(-lo, hi);
        return -std::min(std::abs(lo), std::abs(hi));
    }
    // The cone straddles the backward direction
    double blo = inf;
    double bhi = -inf;
    for (auto const& v : hull)
    {
        Vec const w = v - x;
        double a = std::atan2(dir[0] * w[1] - dir[1] * w[0], dot(dir, w));
        if (a < 0)
            a += 2 * std::numbers::pi;
        blo = std::min(blo, a);
        bhi = std::max(bhi, a);
    }
    return -std::min(blo, 2 * std::numbers::pi - bhi);
}

CheckResult check_normal_rays(BernoulliSolution const& s,
                              RadialDomain const& core,
                              bool use_tangents)
{
    if (s.domain.dim() != 2 || core.dim() != 2)
        throw Error("check_normal_rays: d = 2 only");
    CheckResult out;
    out.name = std::string(use_tangents ? "tangent-rays[" : "rays[") + lam(s.lambda) + "]";
    out.tolerance = 0;

    auto const samples = boundary_samples(core, std::max<std::size_t>(core.size(), 1024));
    auto const hull = convex_hull(samples);
    std::size_t hits = 0;
    out.margin = inf;
    for (std::size_t i = 0; i < s.domain.size(); ++i)
    {
        Vec const x = s.domain.boundary_point(i);
        Vec dir = s.domain.inward_normal(i);
        if (use_tangents)
            dir = Vec{-dir[1], dir[0]};
        double const m = ray_hull_margin(hull, x, dir);
        out.margin = std::min(out.margin, m);
        if (m > 0)
            ++hits;
    }
    out.status = hits == s.domain.size() ? Verdict::pass : Verdict::fail;
    out.note = std::to_string(hits) + "/" + std::to_string(s.domain.size())
               + " rays meet conv(K); margin in radians";
    return out;
}

CheckResult check_interior_positivity(BernoulliSolution const& s,
                                      RadialDomain const& core,
                                      WalkConfig const& cfg)
{
    CheckResult out;
    out.name = "hopf-interior[" + lam(s.lambda) + "]";
    out.tolerance = 0;
    SolveRegion const region(s.domain, core);
    auto const rk = anchored_radii(core, s.domain.center(), s.domain.grid());

    bool all_positive = true;
    out.margin = inf;
    for (std::size_t i = 0; i < s.domain.size(); ++i)
    {
        double const gap = s.domain.radii()[i] - rk[i];
        Vec const x = s.domain.boundary_point(i) + (0.02 * gap) * s.domain.inward_normal(i);
        WalkConfig c = cfg;
        c.base_seed = derive_seed(cfg.base_seed, {0x686f7066ULL, i});
        auto const e = harmonic_value(x, region, c);
        all_positive = all_positive && e.hits > 0;
        if (e.mean < out.margin)
        {
            out.margin = e.mean;
            out.sigma = e.std_error;
        }
    }
    out.status = all_positive ? Verdict::pass : Verdict::inconclusive;
    out.note = "u at 2% of the local gap inside each boundary node; margin = min u";
    return out;
}

//---------------------------------------------------------------------------//
// MOVING PLANES
//---------------------------------------------------------------------------//
namespace
{
constexpr std::size_t plane_samples = 2048;

// Largest relative excess |p' - c|/rho(p') - 1 over reflected cap samples
double cap_excess(RadialDomain const& dom,
                  std::vector<Vec> const& samples,
                  Halfspace const& h,
                  double min_height)
{
    double worst = -inf;
    for (auto const& p : samples)
    {
        if (dot(p, h.normal) - h.offset <= min_height)
            continue;
        Vec const q = reflect(p, h) - dom.center();
        double const r = norm(q);
        if (r == 0)
            continue;
        double const rho = dom.radius_at(q * (1 / r));
        worst = std::max(worst, r / rho - 1);
    }
    return worst;
}

bool cap_fits(RadialDomain const& dom, std::vector<Vec> const& samples, Halfspace const& h)
{
    return cap_excess(dom, samples, h, 0) <= 1e-9;
}

bool perpendicular_at(RadialDomain const& dom,
                      std::vector<Vec> const& samples,
                      Halfspace const& h,
                      double band)
{
    for (auto const& p : samples)
    {
        if (std::abs(dot(p, h.normal) - h.offset) > band)
            continue;
        Vec const d = p - dom.center();
        double const r = norm(d);
        if (r == 0)
            continue;
        if (std::abs(dot(dom.inward_normal(d * (1 / r)), h.normal)) < 1e-2)
            return true;
    }
    return false;
}
}  // namespace

MovingPlaneProfile moving_plane_profile(RadialDomain const& omega,
                                        RadialDomain const& core,
                                        Vec const& e)
{
    if (omega.dim() != 2 || core.dim() != 2 || e.dim() != 2)
        throw Error("moving_plane_profile: d = 2 only");
    if (std::abs(norm(e) - 1) > 1e-12)
        throw Error("moving_plane_profile: direction must be a unit vector");

    auto const so = boundary_samples(omega, plane_samples);
    auto const sk = boundary_samples(core, plane_samples);

    MovingPlaneProfile out;
    out.direction = e;
    double tmin = inf;
    out.t1 = -inf;
    for (auto const& p : so)
    {
        out.t1 = std::max(out.t1, dot(p, e));
        tmin = std::min(tmin, dot(p, e));
    }

    auto feasible = [&](double t) {
        Halfspace const h{e, t};
        return cap_fits(omega, so, h) && cap_fits(core, sk, h);
    };

    constexpr int scan = 400;
    double const step = (out.t1 - tmin) / scan;
    double ok = out.t1;
    double bad = -inf;
    for (int k = 1; k <= scan; ++k)
    {
        double const t = out.t1 - k * step;
        if (!feasible(t))
        {
            bad = t;
            break;
        }
        ok = t;
    }
    if (bad == -inf)
    {
        out.t0 = ok;
    }
    else
    {
        for (int k = 0; k < 100 && ok - bad > 1e-12 * (1 + std::abs(ok)); ++k)
        {
            double const mid = 0.5 * (ok + bad);
            (feasible(mid) ? ok : bad) = mid;
        }
        out.t0 = ok;
    }

    double const scale = out.t1 - tmin;
    Halfspace const h0{e, out.t0};
    double const away = 1e-3 * scale;
    out.omega_touch = cap_excess(omega, so, h0, away) > -1e-4;
    out.core_touch = cap_excess(core, sk, h0, away) > -1e-4;
    out.omega_perpendicular = perpendicular_at(omega, so, h0, 1e-2 * scale);
    out.core_perpendicular = perpendicular_at(core, sk, h0, 1e-2 * scale);
    return out;
}

CheckResult check_moving_plane(std::vector<MovingPlaneProfile> const& profiles)
{
    CheckResult out;
    out.name = "moving-plane";
    out.tolerance = 0;
    out.margin = inf;
    for (auto const& p : profiles)
        out.margin = std::min(out.margin, p.t1 - p.t0);
    out.status = out.margin > 0 ? Verdict::pass : Verdict::fail;
    out.note = "margin = min (t1 - t0) over " + std::to_string(profiles.size())
               + " directions";
    return out;
}

CheckResult check_reflection_positivity(RadialDomain const& omega,
                                        RadialDomain const& core,
                                        Halfspace const& h,
                                        WalkConfig const& cfg,
                                        std::size_t samples)
{
    h.validate();
    auto const prof = moving_plane_profile(omega, core, h.normal);
    double const tol = 1e-9 * (1 + std::abs(prof.t1));
    if (!(h.offset >= prof.t0 - tol && h.offset < prof.t1))
        throw Error("check_reflection_positivity: plane offset must lie in [t0, t1)");

    CheckResult out;
    out.name = "reflection-positivity[" + lam(h.offset) + "]";
    out.tolerance = n_sigma;

    SolveRegion const region(omega, core);
    StreamRng rng(derive_seed(cfg.base_seed, {0x6d6f7665ULL}), 0);
    Vec const c = omega.center();
    double const reach = omega.max_radius();
    double sum = 0;
    double var = 0;
    bool negative = false;
    double worst = inf;
    for (std::size_t j = 0; j < samples; ++j)
    {
        Vec x;
        for (int attempt = 0;; ++attempt)
        {
            if (attempt > 1000000)
                throw Error("check_reflection_positivity: cap region is empty");
            x = c + Vec{reach * (2 * rng.uniform() - 1), reach * (2 * rng.uniform() - 1)};
            if (omega.contains(x) && h.contains(x) && !core.contains_closed(reflect(x, h)))
                break;
        }
        WalkConfig wc = cfg;
        wc.base_seed = derive_seed(cfg.base_seed, {0x7265666cULL, j});
        auto const pe = paired_difference(reflect(x, h), x, region, wc);
        sum += pe.mean;
        var += pe.std_error * pe.std_error;
        negative = negative || pe.mean < -n_sigma * pe.std_error;
        worst = std::min(worst, pe.mean + n_sigma * pe.std_error);
    }
    double const n = static_cast<double>(samples);
    double const mean = sum / n;
    out.sigma = std::sqrt(var) / n;
    out.margin = mean - n_sigma * out.sigma;
    out.status = negative                ? Verdict::fail
                 : mean > n_sigma * out.sigma ? Verdict::pass
                                              : Verdict::inconclusive;
    out.note = "mean v_t " + fmt("%.6g", mean) + " over " + std::to_string(samples)
               + " points; min(v + 3 sigma) " + fmt("%.6g", worst) + "; t0 "
               + fmt("%.6g", prof.t0) + ", t1 " + fmt("%.6g", prof.t1);
    return out;
}

//---------------------------------------------------------------------------//
// SUITES
//---------------------------------------------------------------------------//
std::vector<std::string> const& suite_names()
{
    static std::vector<std::string> const names{
        "monotonicity", "triangle", "distance", "rays", "moving-plane", "hopf", "all"};
    return names;
}

SolutionSummary summarize(BernoulliSolution const& s, RadialDomain const& core)
{
    SolutionSummary out;
    out.lambda = s.lambda;
    out.converged = s.converged;
    out.iterations = s.iterations;
    out.residual = s.residual;
    out.raw_residual = s.raw_residual;
    auto const& r = s.domain.radii();
    out.min_radius = *std::min_element(r.begin(), r.end());
    out.max_radius = *std::max_element(r.begin(), r.end());
    double sum = 0;
    for (double v : r)
        sum += v;
    out.mean_radius = sum / static_cast<double>(r.size());
    out.dist = measured_distance(s, core);
    auto const [lo, up] = distance_bracket(s.lambda, core_inner_radius(core), core.dim());
    out.g_exact = lo;
    out.upper = up;
    out.pooled_error = s.pooled_relative_error();
    return out;
}

VerificationReport run_suite(std::string const& suite,
                             RadialDomain const& core,
                             std::vector<double> lambdas,
                             SolverConfig const& cfg)
{
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw Error("unknown suite '" + suite + "'");
    if (lambdas.empty())
        throw Error("verify needs at least one lambda");
    std::sort(lambdas.begin(), lambdas.end());
    std::vector<BernoulliSolution> sols;
    for (double l : lambdas)
        sols.push_back(solve(core, l, cfg));
    return run_suite(suite, core, sols, cfg);
}

VerificationReport run_suite(std::string const& suite,
                             RadialDomain const& core,
                             std::vector<BernoulliSolution> const& solutions,
                             SolverConfig const& cfg)
{
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw Error("unknown suite '" + suite + "'");
    auto const sols = sorted_by_lambda(solutions);
    bool const all = suite == "all";

    VerificationReport rep;
    rep.experiment = suite;
    rep.seed = cfg.walk.base_seed;
    rep.core = core;
    for (auto const& s : sols)
    {
        rep.lambdas.push_back(s.lambda);
        rep.solutions.push_back(summarize(s, core));
    }
    for (std::size_t i = 0; i + 1 < sols.size(); ++i)
        rep.solutions[i].triangle = triangle_metric(sols[i].domain, sols[i + 1].domain,
                                                    core.center());

    if (all || suite == "monotonicity")
        rep.checks.push_back(check_monotonicity(sols));
    if (all || suite == "triangle")
    {
        for (std::size_t i = 0; i + 1 < sols.size(); ++i)
            rep.checks.push_back(check_triangle_bound(sols[i], sols[i + 1], core.center()));
    }
    if (all || suite == "distance")
    {
        for (auto const& s : sols)
            rep.checks.push_back(check_distance_bounds(s, core));
        if (sols.size() > 1)
            rep.checks.push_back(check_distance_trend(sols, core));
    }
    bool const planar = core.dim() == 2;
    if ((all || suite == "rays") && planar)
    {
        for (auto const& s : sols)
        {
            rep.checks.push_back(check_normal_rays(s, core));
            rep.checks.push_back(check_ball_starshaped(s, core));
        }
    }
    if ((all || suite == "moving-plane") && planar)
    {
        for (auto const& s : sols)
        {
            std::vector<MovingPlaneProfile> profiles;
            for (int k = 0; k < 8; ++k)
                profiles.push_back(moving_plane_profile(
                    s.domain, core, polar(2 * std::numbers::pi * k / 8)));
            auto c = check_moving_plane(profiles);
            c.name += "[" + lam(s.lambda) + "]";
            rep.checks.push_back(c);
        }
    }
    if (all || suite == "hopf")
    {
        auto const& s = sols[sols.size() / 2];
        rep.checks.push_back(check_interior_positivity(s, core, cfg.walk));
        if (planar)
        {
            Vec const e{1.0, 0.0};
            auto const prof = moving_plane_profile(s.domain, core, e);
            Halfspace const h{e, prof.t0 + 0.5 * (prof.t1 - prof.t0)};
            rep.checks.push_back(check_reflection_positivity(s.domain, core, h, cfg.walk));
        }
    }
    return rep;
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
