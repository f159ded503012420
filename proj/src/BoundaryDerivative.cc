//---------------------------------------------------------------------------//
//! \file BoundaryDerivative.cc
//---------------------------------------------------------------------------//
#include "halfbern/BoundaryDerivative.hh"

#include <cmath>

namespace halfbern
{
//---------------------------------------------------------------------------//
void TGridRule::validate() const
{
    if (!(fraction > 0 && fraction < 1))
        throw Error("t-grid fraction must lie in (0, 1)");
    if (!(ratio > 0 && ratio < 1))
        throw Error("t-grid ratio must lie in (0, 1)");
    if (points < 2)
        throw Error("t-grid needs at least two points");
}

std::vector<double> TGridRule::make(double local_gap) const
{
    validate();
    if (!(local_gap > 0))
        throw Error("t-grid: local gap must be positive");
    std::vector<double> t(static_cast<std::size_t>(points));
    double v = fraction * local_gap;
    for (auto& tk : t)
    {
        tk = v;
        v *= ratio;
    }
    return t;
}

//---------------------------------------------------------------------------//
DerivativeEstimate fit_dhalf(std::vector<double> const& t_grid,
                             std::vector<Estimate> const& samples)
{
    std::size_t const m = t_grid.size();
    if (m < 2 || samples.size() != m)
        throw Error("fit_dhalf: need matching t grid and samples (>= 2)");
    for (std::size_t k = 0; k < m; ++k)
    {
        if (!(t_grid[k] > 0))
            throw Error("fit_dhalf: t values must be positive");
        if (k > 0 && !(t_grid[k] < t_grid[k - 1]))
            throw Error("fit_dhalf: t grid must be strictly decreasing");
    }

    DerivativeEstimate out;
    out.t_grid = t_grid;
    out.samples = samples;
    out.quotients.resize(m);
    out.quotient_errors.resize(m);

    bool any_positive = false;
    bool any_error = false;
    std::vector<double> w(m, 1.0);
    for (std::size_t k = 0; k < m; ++k)
    {
        double const st = std::sqrt(t_grid[k]);
        out.quotients[k] = samples[k].mean / st;
        out.quotient_errors[k] = samples[k].std_error / st;
        any_positive = any_positive || samples[k].mean > 0;
        any_error = any_error || samples[k].std_error > 0;
    }
    if (!any_positive)
        throw Error("fit_dhalf: all probe values are zero (degenerate geometry)");

    if (any_error)
    {
        // Binomial variance with a floor so that probes with zero or full
        // hit counts keep a finite weight
        for (std::size_t k = 0; k < m; ++k)
        {
            auto const& s = samples[k];
            double var = s.std_error * s.std_error;
            if (s.n > 0)
            {
                double const n = static_cast<double>(s.n);
                double const p = (static_cast<double>(s.hits) + 0.5) / (n + 1);
                var = std::max(var, p * (1 - p) / n);
            }
            w[k] = t_grid[k] / var;
        }
    }

    // Weighted least squares for q = a + b t
    double sw = 0, st = 0, sq = 0, stt = 0, stq = 0;
    for (std::size_t k = 0; k < m; ++k)
    {
        double const t = t_grid[k];
        double const q = out.quotients[k];
        sw += w[k];
        st += w[k] * t;
        sq += w[k] * q;
        stt += w[k] * t * t;
        stq += w[k] * t * q;
    }
    double const det = sw * stt - st * st;
    double a = (stt * sq - st * stq) / det;
    double b = (sw * stq - st * sq) / det;
    double var_a = stt / det;
    double var_b = sw / det;

    if (!(a > 0))
    {
        out.constant_fit = true;
        a = sq / sw;
        b = 0;
        var_a = 1 / sw;
        var_b = 0;
    }
    out.value = a;
    out.slope = b;
    out.std_error = any_error ? std::sqrt(var_a) : 0.0;
    out.slope_error = any_error ? std::sqrt(var_b) : 0.0;
    return out;
}

//---------------------------------------------------------------------------//
DerivativeEstimate estimate_dhalf(Vec const& x,
                                  Vec const& normal,
                                  std::vector<double> const& t_grid,
                                  ProbeFunction const& probe)
{
    require_same_dim(x, normal, "estimate_dhalf");
    std::vector<Estimate> samples;
    samples.reserve(t_grid.size());
    for (std::size_t k = 0; k < t_grid.size(); ++k)
        samples.push_back(probe(x + t_grid[k] * normal, k));
    return fit_dhalf(t_grid, samples);
}

DerivativeEstimate estimate_dhalf(Vec const& x,
                                  Vec const& normal,
                                  SolveRegion const& region,
                                  WalkConfig const& cfg,
                                  std::vector<double> const& t_grid)
{
    for (double t : t_grid)
    {
        if (!region.contains(x + t * normal))
            throw Error("estimate_dhalf: probe point outside the solve region");
    }
    return estimate_dhalf(x, normal, t_grid, [&](Vec const& y, std::size_t k) {
        WalkConfig c = cfg;
        c.base_seed = derive_seed(cfg.base_seed, {k});
        return harmonic_value(y, region, c);
    });
}

DerivativeEstimate estimate_dhalf(Vec const& x,
                                  Vec const& normal,
                                  SolveRegion const& region,
                                  WalkConfig const& cfg,
                                  TGridRule const& rule)
{
    double const gap = region.core().boundary_distance_bound(x);
    return estimate_dhalf(x, normal, region, cfg, rule.make(gap));
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
