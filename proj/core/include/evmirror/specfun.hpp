#ifndef EVMIRROR_SPECFUN_HPP
#define EVMIRROR_SPECFUN_HPP

#include <complex>

namespace evmirror::specfun {

/// Evaluation strategy actually used for a Bessel value.
enum class BesselMethod { series, integral, asymptotic };

/// Diagnostics attached to each Bessel evaluation.
struct BesselEvalReport {
    int terms_used = 1;  ///< series terms summed, or quadrature panels
    BesselMethod method = BesselMethod::series;
    double est_abs_error = 0.0;
};

struct BesselIResult {
    std::complex<double> value;
    BesselEvalReport report;
};

struct BesselKResult {
    double value = 0.0;
    BesselEvalReport report;
};

/// log Gamma(w) for complex w.
///
/// On the half plane Re w >= 1/2 this is the standard analytic continuation
/// of the real log-gamma, so the imaginary part is continuous (not reduced
/// mod 2 pi) along vertical rays such as {1 + i a : a >= 0}. For Re w < 1/2
/// the reflection formula is used and the imaginary part is only defined up
/// to multiples of 2 pi across its branch cuts.
/// Throws DomainError at the poles w = 0, -1, -2, ...
std::complex<double> ln_gamma(std::complex<double> w);

/// arg Gamma(1 + i a), continuous in a, zero at a = 0. Requires a >= 0.
double arg_gamma_1i(double a);

/// |Gamma(1 + i a)| = sqrt(pi a / sinh(pi a)), with the limit 1 at a = 0.
double abs_gamma_1i(double a);

/// Re digamma(1 + i a); equals -EulerGamma at a = 0. Requires a >= 0.
double re_digamma_1i(double a);

/// Modified Bessel function of imaginary order, I_{i a}(u), from its
/// defining power series in (u/2)^{2n + i a}. Requires a >= 0, u > 0.
///
/// For real u and real a the companion order satisfies
/// I_{-i a}(u) = conj(I_{i a}(u)), so only the +i a value is returned.
/// The series is truncated once a term falls below 1e-17 of the partial
/// sum; failure to converge within 400 terms raises AccuracyError. Terms
/// are accumulated in compensated extended precision, which keeps the
/// exponentially small imaginary part meaningful out to u ~ 40.
BesselIResult bessel_i_imag_order(double a, double u);

/// Modified Bessel function of the third kind of imaginary order,
/// K_{i a}(u). Real for real a and u > 0. Requires a >= 0, u > 0.
///
/// For small and moderate u the value is assembled from the I_{+-i a}
/// series via K = -pi Im I_{i a} / sinh(pi a); forming that difference
/// costs about u / ln 10 digits because I grows like e^u while K decays
/// like e^-u, which is why the series runs in extended precision. Larger
/// u switches to the nonoscillatory integral representation
///   K_{i a}(u) = int_0^inf exp(-u cosh t) cos(a t) dt,
/// whose own precision degrades like e^{pi a / 2} with the order, so the
/// switch point moves out with a (u = 12 at a = 0, roughly 20 + 2.4 a for
/// large orders). Beyond u = 700 the leading asymptotic form
/// sqrt(pi/2u) e^-u is used (the value underflows to zero past u ~ 745).
BesselKResult bessel_k_imag_order(double a, double u);

namespace detail {

/// Power-series evaluation of I_{i a}(u) accepting a signed order
/// parameter. Diagnostic surface backing the conjugate-symmetry tests.
std::complex<double> bessel_i_series_signed(double signed_a, double u);

/// The two K routes exposed individually so their overlap window can be
/// cross-checked. The series route is meaningful for u up to ~40; the
/// integral route for u up to ~700.
double bessel_k_series_path(double a, double u);
double bessel_k_integral_path(double a, double u);

}  // namespace detail

}  // namespace evmirror::specfun

#endif
