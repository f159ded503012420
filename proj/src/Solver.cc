//---------------------------------------------------------------------------//
//! \file Solver.cc
//---------------------------------------------------------------------------//
#include "halfbern/Solver.hh"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace halfbern
{
//---------------------------------------------------------------------------//
namespace
{
//! Trigonometric interpolant of equally spaced planar radii
class TrigRadius
{
  public:
    TrigRadius(std::vector<double> const& radii, double phi0) : phi0_(phi0)
    {
        auto const n = radii.size();
        double const h = 2 * std::numbers::pi / static_cast<double>(n);
        for (std::size_t k = 0; 2 * k <= n; ++k)
        {
            double a = 0, b = 0;
            for (std::size_t j = 0; j < n; ++j)
            {
                double const arg = static_cast<double>(k * j) * h;
                a += radii[j] * std::cos(arg);
                b += radii[j] * std::sin(arg);
            }
            double const w = (k == 0 || 2 * k == n ? 1.0 : 2.0) / static_cast<double>(n);
            cos_.push_back(w * a);
            sin_.push_back(w * b);
        }
    }

    //! Value and angular derivative at phi
    std::pair<double, double> operator()(double phi) const
    {
        double v = 0, dv = 0;
        for (std::size_t k = 0; k < cos_.size(); ++k)
        {
            double const kk = static_cast<double>(k);
            double const c = std::cos(kk * (phi - phi0_));
            double const s = std::sin(kk * (phi - phi0_));
            v += cos_[k] * c + sin_[k] * s;
            dv += kk * (sin_[k] * c - cos_[k] * s);
        }
        return {v, dv};
    }

  private:
    double phi0_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

/*!
 * Interior ball radius of the smooth closed curve through the planar radii.
 *
 * The largest ball tangent at b with inward normal n that avoids a boundary
 * point p has radius |p - b|^2 / (2 (p - b) . n); r_K is the minimum over
 * sampled pairs.
 */
double smooth_inner_radius(RadialDomain const& core)
{
    constexpr std::size_t samples = 2048;
    TrigRadius const rho(core.radii(), core.grid().angle_offset());
    std::vector<Vec> pts(samples);
    std::vector<Vec> normals(samples);
    for (std::size_t i = 0; i < samples; ++i)
    {
        double const phi = 2 * std::numbers::pi * static_cast<double>(i) / samples;
        auto const [r, dr] = rho(phi);
        if (!(r > 0))
            throw Error("core radius interpolant is not positive");
        Vec const u = polar(phi);
        Vec const up{-u[1], u[0]};
        pts[i] = core.center() + r * u;
        Vec const tangent = dr * u + r * up;
        Vec const n{-tangent[1], tangent[0]};
        normals[i] = (1 / norm(n)) * n;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples; ++i)
    {
        for (std::size_t j = 0; j < samples; ++j)
        {
            Vec const d = pts[j] - pts[i];
            double const dn = dot(d, normals[i]);
            if (j != i && dn > 0)
                best = std::min(best, dot(d, d) / (2 * dn));
        }
    }
    return best;
}
/*!
 * Update field for a planar sweep.
 *
 * The moving average is applied twice so no angular mode has a negative
 * response. Mode k is then divided by 1 + k h / rho (mean gap h, mean radius
 * rho): a boundary wave of wavenumber k / rho changes D roughly k h / rho times
 * more than a dilation does.
 */
std::vector<double> planar_update(std::vector<double> const& logs,
                                  int window,
                                  double gap_over_radius)
{
    auto const f = circular_smooth(circular_smooth(logs, window), window);
    auto const n = f.size();
    double const h = 2 * std::numbers::pi / static_cast<double>(n);
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; 2 * k <= n; ++k)
    {
        double a = 0, b = 0;
        for (std::size_t j = 0; j < n; ++j)
        {
            double const arg = static_cast<double>(k * j) * h;
            a += f[j] * std::cos(arg);
            b += f[j] * std::sin(arg);
        }
        double const w = (k == 0 || 2 * k == n ? 1.0 : 2.0) / static_cast<double>(n)
                         / (1 + static_cast<double>(k) * gap_over_radius);
        for (std::size_t j = 0; j < n; ++j)
        {
            double const arg = static_cast<double>(k * j) * h;
            out[j] += w * (a * std::cos(arg) + b * std::sin(arg));
        }
    }
    return out;
}
}  // namespace

double core_inner_radius(RadialDomain const& core)
{
    if (core.is_ball())
        return core.max_radius();
    if (core.dim() == 1)
        return 0.5 * (core.radii()[0] + core.radii()[1]);
    if (core.dim() == 2)
        return smooth_inner_radius(core);
    return interior_ball_radius(core);
}

//---------------------------------------------------------------------------//
void SolverConfig::validate() const
{
    if (!(tol_fb > 0))
        throw Error("tol_fb must be positive");
    if (max_outer_iters < 1)
        throw Error("max_outer_iters must be at least 1");
    if (!(damping > 0 && damping <= 1))
        throw Error("damping must lie in (0, 1]");
    if (smoothing_window < 1 || smoothing_window % 2 == 0)
        throw Error("smoothing window must be a positive odd count");
    if (!(offset_cap > 0) || !(offset_floor > 0))
        throw Error("initial offset bounds must be positive");
    walk.validate();
    t_grid.validate();
}

double BernoulliSolution::pooled_relative_error() const
{
    if (derivative.empty())
        return 0;
    double s = 0;
    for (auto const& d : derivative)
        s += (d.std_error / d.value) * (d.std_error / d.value);
    return std::sqrt(s / static_cast<double>(derivative.size()));
}

//---------------------------------------------------------------------------//
double initial_offset(RadialDomain const& core, double lambda, SolverConfig const& cfg)
{
    if (!(lambda > 0))
        throw Error("lambda must be positive");
    double const upper = 1 / (lambda * lambda);
    double const cap = cfg.offset_cap * core_inner_radius(core);
    double const offset = std::min(upper, cap);
    // The cap wins over the floor when they conflict
    return std::min(std::max(offset, cfg.offset_floor * upper), cap);
}

RadialDomain initial_guess(RadialDomain const& core, double lambda, SolverConfig const& cfg)
{
    double const offset = initial_offset(core, lambda, cfg);
    auto radii = core.radii();
    for (auto& r : radii)
        r += offset;
    return core.with_radii(std::move(radii));
}

std::vector<double> circular_smooth(std::vector<double> const& values, int window)
{
    auto const n = static_cast<long>(values.size());
    long half = window / 2;
    if (2 * half + 1 > n)
        half = (n - 1) / 2;
    if (half <= 0)
        return values;
    std::vector<double> out(values.size());
    for (long i = 0; i < n; ++i)
    {
        double s = 0;
        for (long j = -half; j <= half; ++j)
            s += values[static_cast<std::size_t>(((i + j) % n + n) % n)];
        out[static_cast<std::size_t>(i)] = s / static_cast<double>(2 * half + 1);
    }
    return out;
}

//---------------------------------------------------------------------------//
/*!
 * Each sweep estimates D(theta_i) at every boundary node and moves the node
 * along its ray, keeping the core radius fixed:
 *
 *   rho_new - rho_K = (rho - rho_K) exp(2 omega f_i),  f = smooth(log(D/lambda))
 *
 * In the plane f is replaced by the filtered field of planar_update; the
 * residual always uses the single moving average.
 *
 * A dilation by s scales D by s^{-1/2}, so the local gap responds to
 * (D/lambda)^2. Probe k of direction i always uses seed (base, i, k), which
 * makes the sweep map deterministic and keeps noise correlated across
 * sweeps.
 */
BernoulliSolution solve(RadialDomain const& core, double lambda, SolverConfig const& cfg)
{
    if (!(lambda > 0) || !std::isfinite(lambda))
        throw Error("lambda must be positive and finite");
    cfg.validate();
    if (core.dim() != 1 && core.dim() != 2)
        throw Error("solve: only d = 1 and d = 2 are supported");

    BernoulliSolution sol;
    sol.lambda = lambda;
    sol.config = cfg;

    RadialDomain dom = initial_guess(core, lambda, cfg);
    std::size_t const n = dom.size();
    std::vector<double> const& rk = core.radii();

    for (int it = 1; it <= cfg.max_outer_iters; ++it)
    {
        SolveRegion region(dom, core);
        std::vector<DerivativeEstimate> est(n);
        std::vector<double> logs(n);
        double raw = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            WalkConfig wc = cfg.walk;
            wc.base_seed = derive_seed(cfg.walk.base_seed, {i});
            est[i] = estimate_dhalf(
                dom.boundary_point(i), dom.inward_normal(i), region, wc, cfg.t_grid);
            logs[i] = std::log(est[i].value / lambda);
            raw = std::max(raw, std::abs(est[i].value / lambda - 1));
        }
        auto const smooth = circular_smooth(logs, cfg.smoothing_window);
        double res = 0;
        double min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
        {
            res = std::max(res, std::abs(std::expm1(smooth[i])));
            min_gap = std::min(min_gap, dom.radii()[i] - rk[i]);
        }
        sol.history.push_back({res, raw, min_gap});
        sol.iterations = it;
        sol.derivative = std::move(est);
        sol.residual = res;
        sol.raw_residual = raw;
        sol.domain = dom;

        if (res < cfg.tol_fb)
        {
            sol.converged = true;
            break;
        }
        if (it == cfg.max_outer_iters)
            break;

        auto radii = dom.radii();
        auto step = smooth;
        if (dom.dim() == 2)
        {
            double gap = 0, rad = 0;
            for (std::size_t i = 0; i < n; ++i)
            {
                gap += radii[i] - rk[i];
                rad += radii[i];
            }
            step = planar_update(logs, cfg.smoothing_window, gap / rad);
        }
        for (std::size_t i = 0; i < n; ++i)
        {
            radii[i] = rk[i] + (radii[i] - rk[i]) * std::exp(2 * cfg.damping * step[i]);
            if (!(radii[i] - rk[i] > 1e-12 * radii[i]) || !std::isfinite(radii[i]))
                throw Error("solve: iteration drove the free boundary into the core");
        }
        dom = dom.with_radii(std::move(radii));
    }

    sol.radius_error.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        auto const& d = sol.derivative[i];
        sol.radius_error[i] = 2 * (sol.domain.radii()[i] - rk[i]) * d.std_error / d.value;
    }
    return sol;
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
