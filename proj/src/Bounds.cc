//---------------------------------------------------------------------------//
//! \file Bounds.cc
//---------------------------------------------------------------------------//
#include "halfbern/Bounds.hh"

#include <algorithm>
#include <cmath>
#include <limits>

#include "halfbern/Annulus.hh"

namespace halfbern
{
namespace
{
void check_inputs(double lambda, double r_k, int dim)
{
    if (!(lambda > 0) || !std::isfinite(lambda))
        throw Error("lambda must be positive and finite");
    if (!(r_k > 0) || !std::isfinite(r_k))
        throw Error("r_K must be positive and finite");
    if (dim < 1)
        throw Error("dimension must be positive");
}
}  // namespace

//---------------------------------------------------------------------------//
double eval_h(double t, double a, int dim)
{
    return std::pow(t, 2 * dim) + t - a;
}

double root_h(double a, int dim)
{
    if (!(a > 0) || !std::isfinite(a))
        throw Error("root_h: A must be positive and finite");
    if (dim < 1)
        throw Error("root_h: dimension must be positive");

    double const p = 2.0 * dim;
    double lo = 0;
    double hi = std::max(a, std::pow(a, 1 / p));
    for (int i = 0; i < 200 && hi - lo > 1e-3 * hi; ++i)
    {
        double const mid = 0.5 * (lo + hi);
        (eval_h(mid, a, dim) < 0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 50; ++i)
    {
        double const step = eval_h(t, a, dim) / (p * std::pow(t, p - 1) + 1);
        double const next = std::clamp(t - step, lo, hi);
        if (next == t)
            break;
        t = next;
        if (std::abs(step) <= 1e-17 * t)
            break;
    }
    return t;
}

double distance_constant(int dim)
{
    double const c = lemma_constant(dim);
    return c * c;
}

double a_proof(double lambda, double r_k, int dim)
{
    check_inputs(lambda, r_k, dim);
    return std::pow(distance_constant(dim) / (r_k * lambda * lambda),
                    1.0 / (2 * dim - 1));
}

double g_exact(double lambda, double r_k, int dim)
{
    double const t = root_h(a_proof(lambda, r_k, dim), dim);
    return r_k * std::pow(t, 2 * dim - 1);
}

double g_estimate(double lambda, double r_k, int dim)
{
    check_inputs(lambda, r_k, dim);
    if (dim < 2)
        throw Error("g_estimate is only defined for d >= 2");
    double const c = distance_constant(dim);
    double const a = c / (r_k * lambda * lambda);
    double const m = std::min(a, std::pow(a, 1.0 / (2 * dim)));
    return c / (lambda * lambda * std::pow(m + 1, 2 * dim - 1));
}

double g_closed_form_1d(double lambda, double r_k)
{
    check_inputs(lambda, r_k, 1);
    double const c = distance_constant(1);
    return std::sqrt(4 * c * r_k / (lambda * lambda) + r_k * r_k) - r_k;
}

std::pair<double, double> distance_bracket(double lambda, double r_k, int dim)
{
    return {g_exact(lambda, r_k, dim), 1 / (lambda * lambda)};
}

BoundReport bound_report(double lambda, double r_k, int dim)
{
    check_inputs(lambda, r_k, dim);
    BoundReport b;
    b.dim = dim;
    b.lambda = lambda;
    b.r_k = r_k;
    b.constant = distance_constant(dim);
    b.a_theorem = b.constant / (r_k * lambda * lambda);
    b.a_proof = a_proof(lambda, r_k, dim);
    b.t_root = root_h(b.a_proof, dim);
    b.g_value = r_k * std::pow(b.t_root, 2 * dim - 1);
    b.g_estimate = dim >= 2 ? g_estimate(lambda, r_k, dim)
                            : std::numeric_limits<double>::quiet_NaN();
    b.upper = 1 / (lambda * lambda);
    if (b.a_theorem < 1)
    {
        b.regime = "large-lambda";
        b.alpha = 1;
        b.beta = 0;
    }
    else
    {
        b.regime = "small-lambda";
        b.alpha = 1.0 / (2 * dim);
        b.beta = (2.0 * dim - 1) / (2 * dim);
    }
    b.consistent = b.g_value <= b.upper;
    return b;
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
