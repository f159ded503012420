//---------------------------------------------------------------------------//
//! \file halfbern/Bounds.hh
//! \brief Two-sided bounds on dist(dOmega_lambda, dK)
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <utility>

namespace halfbern
{
//---------------------------------------------------------------------------//
/*!
 * Everything the distance bracket depends on for one (lambda, r_K, d).
 *
 * Two normalizations of A coexist: the theorem's A = C/(r_K lambda^2)
 * with C the square of the annulus constant, and the proof's
 * A = (C_d^2/(r_K lambda^2))^{1/(2d-1)}; the first is the second raised to
 * 2d - 1. \c g_estimate is NaN for d = 1.
 */
struct BoundReport
{
    int dim = 2;
    double lambda = 0;
    double r_k = 0;
    double constant = 0;  //!< C = (annulus lower-bound constant)^2
    double a_theorem = 0;
    double a_proof = 0;
    double t_root = 0;
    double g_value = 0;
    double g_estimate = 0;
    double upper = 0;
    std::string regime;  //!< "large-lambda" (A_theorem < 1) or "small-lambda"
    double alpha = 0;
    double beta = 0;
    bool consistent = true;  //!< lower <= upper
};

// Unique positive root of t^{2d} + t - A
double root_h(double a, int dim);

// h(t) = t^{2d} + t - A
double eval_h(double t, double a, int dim);

// C entering the distance bounds: square of the annulus constant
double distance_constant(int dim);

// (C/(r_K lambda^2))^{1/(2d-1)}
double a_proof(double lambda, double r_k, int dim);

// r_K t(A)^{2d-1}
double g_exact(double lambda, double r_k, int dim);

// C/(lambda^2 (min{A, A^{1/2d}} + 1)^{2d-1}), d >= 2
double g_estimate(double lambda, double r_k, int dim);

// sqrt(4 C r_K/lambda^2 + r_K^2) - r_K as displayed for d = 1
double g_closed_form_1d(double lambda, double r_k);

// (g_exact, 1/lambda^2)
std::pair<double, double> distance_bracket(double lambda, double r_k, int dim);

BoundReport bound_report(double lambda, double r_k, int dim);

//---------------------------------------------------------------------------//
}  // namespace halfbern
