//---------------------------------------------------------------------------//
//! \file StableKernel.cc
//---------------------------------------------------------------------------//
#include "halfbern/StableKernel.hh"

#include <cmath>
#include <numbers>
#include <ostream>

#include "halfbern/Parallel.hh"

namespace halfbern
{
//---------------------------------------------------------------------------//
void WalkConfig::validate() const
{
    if (n_walks < 1)
        throw Error("n_walks must be at least 1");
    if (max_steps < 1)
        throw Error("max_steps must be at least 1");
    if (!(shrink > 0 && shrink < 1))
        throw Error("shrink factor must lie in (0, 1)");
    if (parallel_chunk < 1)
        throw Error("parallel_chunk must be at least 1");
}

char const* to_string(WalkLabel label)
{
    switch (label)
    {
        case WalkLabel::in_core:
            return "IN_K";
        case WalkLabel::outside_omega:
            return "OUTSIDE_OMEGA";
        case WalkLabel::censored:
            return "CENSORED";
    }
    return "?";
}

//---------------------------------------------------------------------------//
// EXIT LAW
//---------------------------------------------------------------------------//
double poisson_constant(int dim)
{
    double const d = dim;
    return std::tgamma(d / 2) * std::pow(std::numbers::pi, -1 - d / 2);
}

double poisson_kernel(double rho, Vec const& y0, Vec const& x, Vec const& y)
{
    require_same_dim(x, y, "poisson_kernel");
    require_same_dim(x, y0, "poisson_kernel");
    if (!(rho > 0))
        throw Error("poisson_kernel: radius must be positive");
    double const rx2 = dot(x - y0, x - y0);
    double const ry2 = dot(y - y0, y - y0);
    double const rho2 = rho * rho;
    if (!(rx2 < rho2))
        throw Error("poisson_kernel: x must lie inside the ball");
    if (!(ry2 > rho2))
        throw Error("poisson_kernel: y must lie outside the closed ball");
    return poisson_constant(x.dim()) * std::sqrt((rho2 - rx2) / (ry2 - rho2))
           * std::pow(distance(x, y), -x.dim());
}

double exit_radius_cdf(double rho, double s)
{
    if (!(rho > 0))
        throw Error("exit_radius_cdf: radius must be positive");
    if (s <= rho)
        return 0;
    return 2 / std::numbers::pi * std::acos(rho / s);
}

double exit_radius_quantile(double rho, double u)
{
    if (!(rho > 0 && u >= 0 && u < 1))
        throw Error("exit_radius_quantile: need rho > 0 and 0 <= u < 1");
    return rho / std::cos(std::numbers::pi / 2 * u);
}

Vec sample_direction(int dim, StreamRng& rng)
{
    switch (dim)
    {
        case 1:
            return Vec{rng.uniform() < 0.5 ? -1.0 : 1.0};
        case 2: {
            double const phi = 2 * std::numbers::pi * rng.uniform();
            return Vec{std::cos(phi), std::sin(phi)};
        }
        case 3: {
            double const z = 2 * rng.uniform() - 1;
            double const phi = 2 * std::numbers::pi * rng.uniform();
            double const r = std::sqrt(std::max(0.0, 1 - z * z));
            return Vec{r * std::cos(phi), r * std::sin(phi), z};
        }
        default:
            throw Error("sample_direction: unsupported dimension");
    }
}

Vec sample_exit(double rho, Vec const& y0, StreamRng& rng)
{
    double const s = exit_radius_quantile(rho, rng.uniform());
    return y0 + s * sample_direction(y0.dim(), rng);
}

//---------------------------------------------------------------------------//
// WALKS
//---------------------------------------------------------------------------//
SolveRegion::SolveRegion(RadialDomain const& omega, RadialDomain const& core)
    : omega_(&omega), core_(&core)
{
    require_same_dim(omega.center(), core.center(), "SolveRegion");
}

namespace
{
template<class Visit>
WalkOutcome run_walk(Vec const& start,
                     SolveRegion const& region,
                     WalkConfig const& cfg,
                     std::uint64_t walk_index,
                     Visit&& visit)
{
    require_same_dim(region.omega().center(), start, "walk");
    if (!region.contains(start))
        throw Error("walk start must lie in Omega minus the closed core");

    StreamRng rng(cfg.base_seed, walk_index);
    WalkOutcome out;
    Vec x = start;
    for (std::size_t step = 1; step <= cfg.max_steps; ++step)
    {
        double const radius = cfg.shrink * region.gap(x);
        x = sample_exit(radius, x, rng);
        visit(x);
        if (region.core().contains_closed(x))
        {
            out.label = WalkLabel::in_core;
            out.steps = step;
            out.terminal = x;
            return out;
        }
        if (!region.omega().contains(x))
        {
            out.label = WalkLabel::outside_omega;
            out.steps = step;
            out.terminal = x;
            return out;
        }
    }
    out.label = WalkLabel::censored;
    out.steps = cfg.max_steps;
    out.terminal = x;
    return out;
}

struct Tally
{
    std::size_t hits = 0;
    std::size_t censored = 0;
};

template<class F>
std::vector<Tally> chunked(WalkConfig const& cfg, F&& per_walk)
{
    std::size_t const chunks = (cfg.n_walks + cfg.parallel_chunk - 1)
                               / cfg.parallel_chunk;
    std::vector<Tally> tallies(chunks);
    parallel_for(chunks, cfg.threads, [&](std::size_t c) {
        std::size_t const begin = c * cfg.parallel_chunk;
        std::size_t const end = std::min(cfg.n_walks, begin + cfg.parallel_chunk);
        Tally t;
        for (std::size_t i = begin; i < end; ++i)
            per_walk(i, t);
        tallies[c] = t;
    });
    return tallies;
}

Estimate make_estimate(std::size_t n, std::size_t hits, std::size_t censored)
{
    Estimate e;
    e.n = n;
    e.hits = hits;
    e.censored = censored;
    double const p = static_cast<double>(hits) / static_cast<double>(n);
    e.mean = p;
    e.std_error = n > 1 ? std::sqrt(p * (1 - p) / static_cast<double>(n - 1)) : 0.0;
    return e;
}

Estimate constant_estimate(double value, std::size_t n)
{
    Estimate e;
    e.mean = value;
    e.n = n;
    e.hits = value > 0 ? n : 0;
    return e;
}

}  // namespace

WalkOutcome walk(Vec const& start,
                 SolveRegion const& region,
                 WalkConfig const& cfg,
                 std::uint64_t walk_index)
{
    return run_walk(start, region, cfg, walk_index, [](Vec const&) {});
}

WalkOutcome walk(Vec const& start,
                 RadialDomain const& omega,
                 RadialDomain const& core,
                 WalkConfig const& cfg,
                 std::uint64_t walk_index)
{
    return walk(start, SolveRegion(omega, core), cfg, walk_index);
}

std::vector<Vec> walk_trace(Vec const& start,
                            SolveRegion const& region,
                            WalkConfig const& cfg,
                            std::uint64_t walk_index)
{
    std::vector<Vec> trace{start};
    run_walk(start, region, cfg, walk_index, [&](Vec const& x) { trace.push_back(x); });
    return trace;
}

void write_walk_traces(std::ostream& os,
                       Vec const& start,
                       SolveRegion const& region,
                       WalkConfig const& cfg,
                       std::size_t count)
{
    os << "walk_index,step";
    for (int k = 0; k < region.dim(); ++k)
        os << ",x_" << (k + 1);
    os << '\n';
    for (std::size_t w = 0; w < count; ++w)
    {
        auto const trace = walk_trace(start, region, cfg, w);
        for (std::size_t s = 0; s < trace.size(); ++s)
        {
            os << w << ',' << s;
            for (int k = 0; k < region.dim(); ++k)
                os << ',' << trace[s][k];
            os << '\n';
        }
    }
}

Estimate harmonic_value(Vec const& x, SolveRegion const& region, WalkConfig const& cfg)
{
    cfg.validate();
    require_same_dim(region.omega().center(), x, "harmonic_value");
    if (!region.contains(x))
        throw Error("harmonic_value: point must lie in Omega minus the closed core");

    auto const tallies = chunked(cfg, [&](std::size_t i, Tally& t) {
        auto const out = walk(x, region, cfg, i);
        if (out.label == WalkLabel::in_core)
            ++t.hits;
        else if (out.label == WalkLabel::censored)
            ++t.censored;
    });
    Tally total;
    for (auto const& t : tallies)
    {
        total.hits += t.hits;
        total.censored += t.censored;
    }
    return make_estimate(cfg.n_walks, total.hits, total.censored);
}

Estimate harmonic_value(Vec const& x,
                        RadialDomain const& omega,
                        RadialDomain const& core,
                        WalkConfig const& cfg)
{
    return harmonic_value(x, SolveRegion(omega, core), cfg);
}

Estimate potential_value(Vec const& x, SolveRegion const& region, WalkConfig const& cfg)
{
    if (region.core().contains_closed(x))
        return constant_estimate(1.0, cfg.n_walks);
    if (!region.omega().contains(x))
        return constant_estimate(0.0, cfg.n_walks);
    return harmonic_value(x, region, cfg);
}

PairedEstimate paired_difference(Vec const& a,
                                 Vec const& b,
                                 SolveRegion const& region,
                                 WalkConfig const& cfg)
{
    cfg.validate();
    // Boundary data for points outside U; otherwise one walk per index
    auto sample = [&](Vec const& x, std::size_t i, std::size_t& censored) -> int {
        if (region.core().contains_closed(x))
            return 1;
        if (!region.omega().contains(x))
            return 0;
        auto const out = walk(x, region, cfg, i);
        if (out.label == WalkLabel::censored)
            ++censored;
        return out.label == WalkLabel::in_core ? 1 : 0;
    };

    struct PairTally
    {
        std::size_t hits_a = 0, hits_b = 0, cens_a = 0, cens_b = 0;
        long long sum = 0;
        long long sum_sq = 0;
    };
    std::size_t const chunks = (cfg.n_walks + cfg.parallel_chunk - 1)
                               / cfg.parallel_chunk;
    std::vector<PairTally> tallies(chunks);
    parallel_for(chunks, cfg.threads, [&](std::size_t c) {
        std::size_t const begin = c * cfg.parallel_chunk;
        std::size_t const end = std::min(cfg.n_walks, begin + cfg.parallel_chunk);
        PairTally t;
        for (std::size_t i = begin; i < end; ++i)
        {
            int const ua = sample(a, i, t.cens_a);
            int const ub = sample(b, i, t.cens_b);
            t.hits_a += static_cast<std::size_t>(ua);
            t.hits_b += static_cast<std::size_t>(ub);
            t.sum += ua - ub;
            t.sum_sq += (ua - ub) * (ua - ub);
        }
        tallies[c] = t;
    });

    PairTally total;
    for (auto const& t : tallies)
    {
        total.hits_a += t.hits_a;
        total.hits_b += t.hits_b;
        total.cens_a += t.cens_a;
        total.cens_b += t.cens_b;
        total.sum += t.sum;
        total.sum_sq += t.sum_sq;
    }

    auto const n = static_cast<double>(cfg.n_walks);
    PairedEstimate pe;
    pe.first = make_estimate(cfg.n_walks, total.hits_a, total.cens_a);
    pe.second = make_estimate(cfg.n_walks, total.hits_b, total.cens_b);
    pe.mean = static_cast<double>(total.sum) / n;
    if (cfg.n_walks > 1)
    {
        double const var = (static_cast<double>(total.sum_sq) - n * pe.mean * pe.mean)
                           / (n - 1);
        pe.std_error = std::sqrt(std::max(0.0, var) / n);
    }
    return pe;
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
