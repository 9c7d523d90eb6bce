#pragma once

// Perturbative engine: exact Stirling numbers of the first kind, the two
// independent coefficient routes for the lambda-series of I_lambda(a)
// (explicit Stirling-sum formula vs Lagrange-Buermann derivative form), the
// Stirling double series of K and L, the order-2 expansion of G, and the
// closed form of the lambda^2 coefficient of N.

#include <utility>
#include <vector>

#include "phi4/errors.hpp"

namespace phi4::series {

// Signed Stirling numbers of the first kind, s_{n,n} = 1,
// s_{n,1} = (-1)^{n-1}(n-1)!, recursion s_{n+1,k} = s_{n,k-1} - n s_{n,k}.
// Values grow factorially; 128-bit storage is exact through max_n = 33.
class StirlingTable {
  public:
    explicit StirlingTable(int max_n);
    int max_n() const { return max_n_; }
    __int128 s(int n, int k) const;        // exact; 0 for k outside [1, n]
    double s_double(int n, int k) const;

  private:
    int max_n_;
    std::vector<__int128> v_;  // triangular, row n at n(n-1)/2
};

struct SeriesCoeffs {
    std::vector<double> coeffs;  // index = power of lambda, [0] = 0
    int order = 0;
    double eval_a = 0.0;
};

// Coefficients of lambda^m in I_lambda(a) from the explicit formula
//   -l log(1+a) + sum_n l^{n+1} [ log^n(1+a)/(n a^n) + log^n(1+a)/(n (1+a)^n) ]
//   + sum_n (n-1)! l^{n+1}/(1+a)^n sum_{j=1}^{n-1} sum_k (-1)^j s_{j,n-k}/(k! j!)
//       (((1+a)/a)^{n-j} + 1) log^k(1+a).
SeriesCoeffs I_coeffs_conjecture(double a, int order);

// Same coefficients from the Lagrange-Buermann derivative form
//   sum_n l^n/n! d^{n-1}/da^{n-1} (-log(1+a))^n
//   - l sum_n l^n/n! d^{n-1}/da^{n-1} (-log(1+a))^n / a,
// with the derivatives carried out exactly on the ring of polynomials in
// log(1+a), 1/a, 1/(1+a).
SeriesCoeffs I_coeffs_derivative_form(double a, int order);

// The K-part alone of the derivative form (for the d^{n-1}(-log)^n /n! terms).
SeriesCoeffs K_coeffs_derivative_form(double a, int order);

// Truncated double series K = sum s_{m+n-1,n} (-l)^n a^m/m!,
// L = sum s_{m+n,n}/(m+n) (-l)^n a^m/m!; stated convergence |a| < 1.
// Returns (K, L); sets *warned when |a| >= 1.
std::pair<double, double> KL_stirling_series(double a, double lambda, int order_n,
                                             int order_m, bool* warned = nullptr);

struct GSeries2 {
    double c0, c1, c2;
};

// Order-2 coefficients of G_lambda(a,b): c0 = 1/(1+a+b),
// c1 = (log(1+a)+log(1+b))/(1+a+b)^2, and c2 with the
// zeta(2) - Li2(-a) - Li2(-b) block. a = 0 or b = 0 by continuity.
GSeries2 G_series2(double a, double b);

// [lambda^2] N(a,b) = (zeta2 - Li2(-a) - Li2(-b))/(1+a+b)^2
//   - log(1+a)/(a(1+a+b)) - log(1+b)/(b(1+a+b)), a, b > 0.
double N2_coeff(double a, double b);

// Taylor coefficients of lambda -> G(a, b, lambda) around 0 extracted by a
// complex-step Cauchy circle of radius rho (must stay inside Omega_N).
std::vector<double> g_lambda_coeffs(double a, double b, int nmax, double rho = 0.5,
                                    int m_samples = 64);

// Same extraction for N(a, b, lambda).
std::vector<double> n_lambda_coeffs(double a, double b, int nmax, double rho = 0.3,
                                    int m_samples = 16);

} // namespace phi4::series
