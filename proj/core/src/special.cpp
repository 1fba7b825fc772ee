#include "conewave/special.hpp"

#include "conewave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace conewave {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos, g = 7, 9 terms (Godfrey's coefficients).
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double x) {
    double a = kLanczos[0];
    for (int k = 1; k < 9; ++k) a += kLanczos[k] / (x - 1.0 + k);
    return a;
}

} // namespace

double gamma_real(double x) {
    if (!(x > 0.0)) throw parameter_error("gamma_real: requires x > 0");
    const double t = x + 6.5; // x + g - 0.5
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * lanczos_sum(x);
}

double lgamma_real(double x) {
    if (!(x > 0.0)) throw parameter_error("lgamma_real: requires x > 0");
    const double t = x + 6.5;
    return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(lanczos_sum(x));
}

namespace {

// log of the leading ascending-series term (x/2)^nu / Gamma(nu+1).
double leading_term_log(double nu, double x) {
    if (x <= 0.0) return nu == 0.0 ? 0.0 : -1e30;
    return nu * std::log(0.5 * x) - lgamma_real(nu + 1.0);
}

// Ascending series for J_nu and J_{nu+1}.  Safe for x up to ~4 (mild
// cancellation only); used to seed grid marches and for all x < 2.
void series_j_pair(double nu, double x, double& j0, double& j1) {
    const double lt = leading_term_log(nu, x);
    if (lt < -745.0) {
        j0 = 0.0;
        j1 = 0.0;
        return;
    }
    const double q = 0.25 * x * x;
    double term = std::exp(lt);
    double sum0 = 0.0, sum1 = 0.0;
    for (int k = 0; k < 200; ++k) {
        sum0 += term;
        sum1 += term * (0.5 * x) / (nu + k + 1.0);
        const double next = -term * q / ((k + 1.0) * (nu + k + 1.0));
        if (std::abs(next) < 1e-18 * (std::abs(sum0) + 1e-300) && k > 2) break;
        term = next;
    }
    j0 = sum0;
    j1 = sum1;
}

struct JYResult {
    double j, jp, y, yp;
};

constexpr double kFpMin = 1e-290;

// Steed's method: CF1 for J'/J at the requested order, stable downward
// recurrence to an order mu <= x, then the complex continued fraction CF2
// for (J'+iY')/(J+iY) at mu, normalized through the Wronskian
// J Y' - J' Y = 2/(pi x).  Valid for x >= 2, any nu >= 0.
JYResult steed_jy(double nu, double x) {
    const int maxit = 50000 + static_cast<int>(4.0 * (x + nu));
    const double eps = 1e-16;

    // CF1: h -> J'_nu/J_nu, isign tracks the sign of J_nu.
    int isign = 1;
    double h = nu / x;
    if (std::abs(h) < kFpMin) h = kFpMin;
    double c = h, d = 0.0;
    bool ok = false;
    for (int i = 1; i <= maxit; ++i) {
        const double b = 2.0 * (nu + i) / x;
        d = b - d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b - 1.0 / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) < eps) {
            ok = true;
            break;
        }
    }
    if (!ok) throw numeric_error("bessel_j: CF1 failed to converge (nu=" + std::to_string(nu) +
                                 ", x=" + std::to_string(x) + ")");

    const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
    const double mu = nu - nl;

    // Downward recurrence from nu to mu with rescaling.
    double jl = isign * kFpMin, jpl = h * jl;
    double jl_save = jl, jpl_save = jpl;
    for (int l = nl; l >= 1; --l) {
        const double jtemp = (mu + l) / x * jl + jpl;
        jpl = (mu + l - 1.0) / x * jtemp - jl;
        jl = jtemp;
        if (std::abs(jl) > 1e250) {
            jl *= 1e-250;
            jpl *= 1e-250;
            jl_save *= 1e-250;
            jpl_save *= 1e-250;
        }
    }
    if (jl == 0.0) jl = eps;
    const double fmu = jpl / jl;

    // CF2: (J'+iY')/(J+iY) = i - 1/(2x) + (i/x) * F,
    // F = K_{k>=1} [ ((k-1/2)^2 - mu^2) / (2(x + ik)) ]  (complex Lentz).
    const std::complex<double> I(0.0, 1.0);
    std::complex<double> f2(kFpMin, 0.0), C2(kFpMin, 0.0), D2(0.0, 0.0);
    ok = false;
    for (int k = 1; k <= maxit; ++k) {
        const double ak = ((k - 0.5) - mu) * ((k - 0.5) + mu);
        const std::complex<double> bk = 2.0 * (x + I * static_cast<double>(k));
        D2 = bk + ak * D2;
        if (std::abs(D2) < kFpMin) D2 = kFpMin;
        C2 = bk + ak / C2;
        if (std::abs(C2) < kFpMin) C2 = kFpMin;
        D2 = 1.0 / D2;
        const std::complex<double> del = C2 * D2;
        f2 *= del;
        if (std::abs(del - 1.0) < eps) {
            ok = true;
            break;
        }
    }
    if (!ok) throw numeric_error("bessel_j: CF2 failed to converge (mu=" + std::to_string(mu) +
                                 ", x=" + std::to_string(x) + ")");
    const std::complex<double> pq = I - 1.0 / (2.0 * x) + (I / x) * f2;
    const double p = pq.real(), q = pq.imag();

    const double w = 2.0 / (kPi * x);
    const double gam = (p - fmu) / q;
    double jmu = std::sqrt(w / (q + gam * (p - fmu)));
    jmu = std::copysign(jmu, jl);
    const double ymu = gam * jmu;
    const double ypmu = ymu * (p + q / gam);

    const double scale = jmu / jl;
    JYResult r;
    r.j = jl_save * scale;
    r.jp = jpl_save * scale;

    // Y by stable upward recurrence from (Y_mu, Y_mu').
    double yl = ymu;
    double yl1 = (mu / x) * ymu - ypmu; // Y_{mu+1}
    for (int l = 1; l <= nl; ++l) {
        const double ytemp = 2.0 * (mu + l) / x * yl1 - yl;
        yl = yl1;
        yl1 = ytemp;
    }
    r.y = yl;
    r.yp = nu / x * yl - yl1;
    return r;
}

void j_and_deriv(double nu, double x, double& j, double& jp) {
    if (nu < 0.0) throw parameter_error("bessel_j: requires nu >= 0");
    if (x < 0.0) throw parameter_error("bessel_j: requires x >= 0");
    if (x == 0.0) {
        j = (nu == 0.0) ? 1.0 : 0.0;
        if (nu == 0.0) jp = 0.0;
        else if (nu == 1.0) jp = 0.5;
        else if (nu < 1.0) jp = std::numeric_limits<double>::infinity(); // x^{nu-1} blowup
        else jp = 0.0;
        return;
    }
    if (leading_term_log(nu, x) < -745.0 && x < nu) {
        j = 0.0;
        jp = 0.0;
        return;
    }
    if (x < 2.0) {
        double j0, j1;
        series_j_pair(nu, x, j0, j1);
        j = j0;
        jp = (nu / x) * j0 - j1;
        return;
    }
    const JYResult r = steed_jy(nu, x);
    j = r.j;
    jp = r.jp;
}

} // namespace

double bessel_j(double nu, double x) {
    double j, jp;
    j_and_deriv(nu, x, j, jp);
    return j;
}

void bessel_j_deriv(double nu, double x, double& j, double& jp) { j_and_deriv(nu, x, j, jp); }

double bessel_y(double nu, double x) {
    if (nu < 0.0) throw parameter_error("bessel_y: requires nu >= 0");
    if (x < 2.0) throw parameter_error("bessel_y: validation helper requires x >= 2");
    return steed_jy(nu, x).y;
}

namespace {

// |a_m|: magnitudes of the zeros of the Airy function Ai.
double airy_zero_abs(int m) {
    static const double table[10] = {2.33810741045977, 4.08794944413097, 5.52055982809555,
                                     6.78670809007176, 7.94413358712085, 9.02265085334098,
                                     10.0401743415581, 11.0085243037332, 11.9360155632363,
                                     12.8287767528658};
    if (m <= 10) return table[m - 1];
    const double t = 3.0 * kPi * (4.0 * m - 1.0) / 8.0;
    const double t2 = t * t;
    return std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t2) - 5.0 / (36.0 * t2 * t2));
}

double mcmahon_guess(double nu, int m) {
    const double beta = (m + 0.5 * nu - 0.25) * kPi;
    const double mu4 = 4.0 * nu * nu;
    const double b8 = 8.0 * beta;
    double z = beta - (mu4 - 1.0) / b8;
    z -= 4.0 * (mu4 - 1.0) * (7.0 * mu4 - 31.0) / (3.0 * b8 * b8 * b8);
    z -= 32.0 * (mu4 - 1.0) * (83.0 * mu4 * mu4 - 982.0 * mu4 + 3779.0) /
         (15.0 * b8 * b8 * b8 * b8 * b8);
    return z;
}

double olver_guess(double nu, int m) {
    const double b = airy_zero_abs(m);
    const double z = std::cbrt(0.5 * nu);
    return nu + b * z + (3.0 / 20.0) * b * b / z;
}

double zero_guess(double nu, int m) {
    if (nu >= 3.0 && m < nu) return olver_guess(nu, m);
    return std::max(mcmahon_guess(nu, m), nu * (1.0 + 1e-12));
}

} // namespace

std::vector<double> bessel_zeros(double nu, int m_count) {
    if (nu < 0.0) throw parameter_error("bessel_zeros: requires nu >= 0");
    if (m_count < 1) throw parameter_error("bessel_zeros: requires M >= 1");

    std::vector<double> zeros;
    zeros.reserve(m_count);
    double prev = std::max(nu, 0.0); // all zeros exceed the order
    for (int m = 1; m <= m_count; ++m) {
        double z = zero_guess(nu, m);
        const double gap = (m == 1) ? std::max(1.0, z - prev) : std::max(1.0, z - zeros[m - 2]);
        if (z <= prev) z = prev + 0.5 * gap;

        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            double j, jp;
            j_and_deriv(nu, z, j, jp);
            if (jp == 0.0) break;
            double dz = -j / jp;
            dz = std::clamp(dz, -0.45 * gap, 0.45 * gap);
            z += dz;
            if (z <= prev) z = 0.5 * (prev + (z - dz));
            if (std::abs(dz) < 1e-13 * z) {
                converged = true;
                break;
            }
        }

        if (!converged || z <= prev) {
            // Bracket by scanning forward from the previous zero, then bisect.
            double lo = prev + 1e-10 * std::max(prev, 1.0);
            double flo = bessel_j(nu, lo);
            const double step = 0.25 * gap;
            double hi = lo;
            bool bracketed = false;
            for (int k = 0; k < 4000; ++k) {
                hi = lo + step;
                const double fhi = bessel_j(nu, hi);
                if (flo == 0.0 || flo * fhi < 0.0) {
                    bracketed = true;
                    break;
                }
                lo = hi;
                flo = fhi;
            }
            if (!bracketed)
                throw numeric_error("bessel_zeros: failed to bracket zero m=" + std::to_string(m) +
                                    " of order nu=" + std::to_string(nu));
            for (int k = 0; k < 200; ++k) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = bessel_j(nu, mid);
                if (flo * fmid <= 0.0) hi = mid;
                else {
                    lo = mid;
                    flo = fmid;
                }
                if (hi - lo < 1e-14 * hi) break;
            }
            z = 0.5 * (lo + hi);
            // Final Newton polish.
            for (int it = 0; it < 4; ++it) {
                double j, jp;
                j_and_deriv(nu, z, j, jp);
                if (jp == 0.0) break;
                z -= j / jp;
            }
        }
        zeros.push_back(z);
        prev = z;
    }

    // Verification: small residual at each zero, alternating sign between
    // consecutive zeros (catches skipped zeros).
    int sign0 = 0;
    for (int m = 0; m < m_count; ++m) {
        if (std::abs(bessel_j(nu, zeros[m])) > 1e-9)
            throw numeric_error("bessel_zeros: residual too large at zero m=" + std::to_string(m + 1) +
                                ", nu=" + std::to_string(nu));
        if (m + 1 < m_count) {
            const double mid = 0.5 * (zeros[m] + zeros[m + 1]);
            const int s = bessel_j(nu, mid) > 0.0 ? 1 : -1;
            if (sign0 == 0) sign0 = s;
            else if (s == sign0)
                throw numeric_error("bessel_zeros: sign-change check failed between zeros " +
                                    std::to_string(m + 1) + " and " + std::to_string(m + 2) +
                                    " for nu=" + std::to_string(nu));
            sign0 = s;
        }
    }
    return zeros;
}

namespace {

std::mutex g_zero_cache_mutex;
std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const std::vector<double>>> g_zero_cache;

std::uint64_t double_bits(double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof(u));
    return u;
}

} // namespace

const std::vector<double>& bessel_zeros_cached(double nu, int m_count) {
    const auto key = std::make_pair(double_bits(nu), m_count);
    {
        std::lock_guard<std::mutex> lock(g_zero_cache_mutex);
        auto it = g_zero_cache.find(key);
        if (it != g_zero_cache.end()) return *it->second;
    }
    auto computed = std::make_shared<const std::vector<double>>(bessel_zeros(nu, m_count));
    std::lock_guard<std::mutex> lock(g_zero_cache_mutex);
    auto [it, inserted] = g_zero_cache.emplace(key, std::move(computed));
    return *it->second;
}

void bessel_j_grid(double nu, std::span<const double> xs, double* j_out, double* jp_out) {
    if (nu < 0.0) throw parameter_error("bessel_j_grid: requires nu >= 0");
    const std::size_t n = xs.size();
    if (n == 0) return;
    for (std::size_t i = 1; i < n; ++i)
        if (!(xs[i] >= xs[i - 1])) throw parameter_error("bessel_j_grid: arguments must ascend");

    constexpr int kMaxTerms = 40;
    double coef[kMaxTerms];

    double xc = -1.0, jc = 0.0, jpc = 0.0; // current march state; xc < 0 means unseeded
    for (std::size_t i = 0; i < n; ++i) {
        const double x = xs[i];
        // Tiny arguments and the deep evanescent zone: series / underflow.
        if (x < 2.0 || (x < nu && leading_term_log(nu, x) < -600.0)) {
            double j, jp;
            j_and_deriv(nu, x, j, jp);
            if (j_out) j_out[i] = j;
            if (jp_out) jp_out[i] = jp;
            xc = -1.0; // restart the march after series points
            continue;
        }
        if (xc < 0.0) {
            j_and_deriv(nu, x, jc, jpc);
            xc = x;
            if (j_out) j_out[i] = jc;
            if (jp_out) jp_out[i] = jpc;
            continue;
        }
        // Taylor steps of the Bessel ODE from (xc, jc, jpc) to x.
        while (xc < x) {
            const double hmax = std::min(3.0, 0.4 * xc);
            const double h = std::min(x - xc, hmax);
            coef[0] = jc;
            coef[1] = jpc;
            double u = coef[0] + coef[1] * h;
            double up = coef[1];
            double hk = h; // h^k for k = 1
            const double x0sq = xc * xc;
            const double scale = std::max({std::abs(coef[0]), std::abs(coef[1]) * h, 1e-280});
            int small_count = 0;
            for (int k = 0; k + 2 < kMaxTerms; ++k) {
                const double cm1 = (k >= 1) ? coef[k - 1] : 0.0;
                const double cm2 = (k >= 2) ? coef[k - 2] : 0.0;
                coef[k + 2] = -(xc * (k + 1.0) * (2.0 * k + 1.0) * coef[k + 1] +
                                (static_cast<double>(k) * k + x0sq - nu * nu) * coef[k] +
                                2.0 * xc * cm1 + cm2) /
                              (x0sq * (k + 1.0) * (k + 2.0));
                hk *= h;
                const double du = coef[k + 2] * hk;
                u += du;
                up += coef[k + 2] * (k + 2.0) * hk / h;
                if (std::abs(du) < 1e-16 * scale) {
                    if (++small_count >= 2) break;
                } else {
                    small_count = 0;
                }
            }
            jc = u;
            jpc = up;
            xc += h;
        }
        if (j_out) j_out[i] = jc;
        if (jp_out) jp_out[i] = jpc;
    }
}

double legendre_p(int l, double x) {
    double p, dp;
    legendre_p_deriv(l, x, p, dp);
    return p;
}

void legendre_p_deriv(int l, double x, double& p, double& dp) {
    if (l < 0) throw parameter_error("legendre_p: requires l >= 0");
    double pm1 = 0.0, pc = 1.0;
    for (int k = 1; k <= l; ++k) {
        const double pn = ((2.0 * k - 1.0) * x * pc - (k - 1.0) * pm1) / k;
        pm1 = pc;
        pc = pn;
    }
    p = pc;
    if (l == 0) {
        dp = 0.0;
    } else if (std::abs(x) < 1.0) {
        dp = l * (x * pc - pm1) / (x * x - 1.0);
    } else {
        // endpoint limit: P_l'(+-1) = +-^{l+1} l(l+1)/2
        dp = 0.5 * l * (l + 1.0);
        if (x < 0.0 && l % 2 == 0) dp = -dp;
    }
}

double bessel_i0_scaled(double x) {
    if (x < 0.0) throw parameter_error("bessel_i0_scaled: requires x >= 0");
    if (x <= 15.0) {
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return sum * std::exp(-x);
    }
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (k * 8.0 * x);
        sum += term;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

} // namespace conewave
