#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace splitgap {

/// Nodes and weights of the n-point Gauss-Legendre rule on [a, b].
struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};
QuadRule gauss_legendre(int n, double a, double b);

/// Integrate f over [a, b] with an n-point Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

/// Composite Gauss-Legendre over uniform panels.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int nodes_per_panel);

/// Composite Gauss-Legendre over panels refined geometrically toward a.
/// Panel boundaries are a + (b-a)/2^j, j = levels..0; the innermost panel
/// [a, a + (b-a)/2^levels] is integrated with one rule as well.
double integrate_geometric(const std::function<double(double)>& f, double a, double b,
                           int nodes_per_panel, int levels);

/// Bisection for f(x) = 0 on [lo, hi]; requires a sign change.
/// Runs until hi - lo <= xtol. Throws RootNotBracketed otherwise.
double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol);

/// sum_{r=1}^infty cos(2 pi r x) / r^alpha for 0 < alpha < 1, x not an integer.
///
/// Direct truncated summation of this series converges far too slowly for
/// quadrature work, so two complementary evaluations are used:
///  - near x = 0 (or 1): the expansion
///      Gamma(1-alpha) sin(pi alpha/2) (2 pi x)^(alpha-1)
///        + sum_{j even} (-1)^(j/2) zeta(alpha-j) (2 pi x)^j / j!
///  - elsewhere: direct sum to r = truncation plus an Euler-Maclaurin-style
///    tail built from the integration-by-parts asymptotics of
///    int_R^inf e^{2 pi i x t} t^(-alpha) dt.
double cos_power_series(double x, double alpha, long long truncation = 100000);

/// First derivative of a sampled function by a centered 7-point stencil
/// (interior points only; first and last 3 entries are set to NaN).
std::vector<double> derivative_stencil7(const std::vector<double>& y, double h);

}  // namespace splitgap
