#ifndef CONEWAVE_SPECIAL_HPP
#define CONEWAVE_SPECIAL_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace conewave {

// Gamma function for x > 0 (Lanczos approximation, relative error ~1e-13).
double gamma_real(double x);

// log Gamma for x > 0, usable far beyond the overflow point of gamma_real.
double lgamma_real(double x);

// Bessel function of the first kind, real order nu >= 0, x >= 0.
// Ascending series for small arguments, Steed's continued-fraction method
// otherwise.  Deep in the large-order evanescent regime (x << nu) the value
// underflows to zero, never NaN.
double bessel_j(double nu, double x);

// J_nu(x) and its derivative in one evaluation.
void bessel_j_deriv(double nu, double x, double& j, double& jp);

// Second-kind function for x >= 2; used for internal validation only.
double bessel_y(double nu, double x);

// First M positive zeros of J_nu, strictly increasing, ~1e-12 absolute.
// Guesses come from McMahon's expansion (Olver's Airy-based expansion for
// the low zeros at large order) and are polished by safeguarded Newton;
// a sign-change verification pass guarantees no zero is skipped.
std::vector<double> bessel_zeros(double nu, int m_count);

// Shared zero table, memoized by (nu, M); safe for concurrent readers.
const std::vector<double>& bessel_zeros_cached(double nu, int m_count);

// Evaluates J_nu (and optionally J_nu') on an ascending sequence of
// arguments by Taylor-marching the Bessel ODE between consecutive points,
// seeded by the pointwise evaluator.  Far cheaper than pointwise calls on
// dense grids; absolute accuracy ~1e-10 over marches of a few thousand
// steps.  jp may be null.
void bessel_j_grid(double nu, std::span<const double> xs, double* j, double* jp);

// Legendre polynomial P_l(x) by upward recurrence, and its derivative.
double legendre_p(int l, double x);
void legendre_p_deriv(int l, double x, double& p, double& dp);

// exp(-x) I_0(x); used by the free-plane oracle's angular average.
double bessel_i0_scaled(double x);

} // namespace conewave

#endif
