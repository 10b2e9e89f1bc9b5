#include "splitgap/numerics.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "splitgap/errors.hpp"

namespace splitgap {

QuadRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  // Newton iteration on Legendre roots, standard symmetric construction.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    rule.x[i] = xm - xl * z;
    rule.x[n - 1 - i] = xm + xl * z;
    rule.w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    rule.w[n - 1 - i] = rule.w[i];
  }
  return rule;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const QuadRule rule = gauss_legendre(n, a, b);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.w[i] * f(rule.x[i]);
  return sum;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int nodes_per_panel) {
  const QuadRule rule = gauss_legendre(nodes_per_panel, 0.0, 1.0);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    double s = 0.0;
    for (int i = 0; i < nodes_per_panel; ++i) s += rule.w[i] * f(lo + h * rule.x[i]);
    sum += s * h;
  }
  return sum;
}

double integrate_geometric(const std::function<double(double)>& f, double a, double b,
                           int nodes_per_panel, int levels) {
  const QuadRule rule = gauss_legendre(nodes_per_panel, 0.0, 1.0);
  const double span = b - a;
  double sum = 0.0;
  double hi = b;
  for (int j = 1; j <= levels; ++j) {
    const double lo = a + span * std::ldexp(1.0, -j);
    const double width = hi - lo;
    double s = 0.0;
    for (int i = 0; i < nodes_per_panel; ++i) s += rule.w[i] * f(lo + width * rule.x[i]);
    sum += s * width;
    hi = lo;
  }
  // innermost sliver [a, a + span/2^levels]
  const double width = hi - a;
  double s = 0.0;
  for (int i = 0; i < nodes_per_panel; ++i) s += rule.w[i] * f(a + width * rule.x[i]);
  sum += s * width;
  return sum;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw RootNotBracketed("bisect: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point resolution
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

// Tail sum_{r>R} cos(2 pi x r) r^(-alpha), evaluated through the asymptotic
// expansion of the Lerch transcendent Phi(z, alpha, a) with a = R+1 and
// z = e^{2 pi i x}:
//   Phi(z, s, a) ~ a^-s/(1-z) + sum_{j>=1} (-1)^j (s)_j/j! Li_{-j}(z) a^{-s-j},
// where Li_{-j}(z) is rational in z. Four terms give ~1e-14 absolute accuracy
// for a|1-z| >~ 3e3, which the caller's branch on x guarantees.
double cos_series_tail(double x, double alpha, double a) {
  const std::complex<double> z = std::polar(1.0, 2.0 * M_PI * x);
  const std::complex<double> za = std::polar(1.0, 2.0 * M_PI * x * a);
  const std::complex<double> om = 1.0 / (1.0 - z);
  const std::complex<double> li0 = om;  // sum_{m>=0} z^m, includes the m=0 term
  const std::complex<double> li1 = z * om * om;
  const std::complex<double> li2 = z * (1.0 + z) * om * om * om;
  const std::complex<double> li3 = z * (1.0 + z * (4.0 + z)) * om * om * om * om;

  double apow = std::pow(a, -alpha);
  std::complex<double> sum = li0 * apow;
  apow /= a;
  sum -= alpha * li1 * apow;
  apow /= a;
  sum += 0.5 * alpha * (alpha + 1.0) * li2 * apow;
  apow /= a;
  sum -= alpha * (alpha + 1.0) * (alpha + 2.0) / 6.0 * li3 * apow;
  return (za * sum).real();
}

}  // namespace

double cos_power_series(double x, double alpha, long long truncation) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("cos_power_series: alpha must lie in (0, 1)");
  x -= std::floor(x);
  if (x > 0.5) x = 1.0 - x;  // cos(2 pi r x) is even about x = 1/2
  if (x == 0.0)
    throw std::invalid_argument("cos_power_series diverges at integer x");

  const double crossover = 5e-3;
  if (x < crossover) {
    // Li expansion around x = 0; even powers only contribute to the real part.
    const double u = 2.0 * M_PI * x;
    double sum = std::tgamma(1.0 - alpha) * std::sin(0.5 * M_PI * alpha) *
                 std::pow(u, alpha - 1.0);
    double upow = 1.0, fact = 1.0, sign = 1.0;
    for (int j = 0; j <= 8; j += 2) {
      if (j > 0) {
        upow *= u * u;
        fact *= (j - 1) * j;
        sign = -sign;
      }
      sum += sign * std::riemann_zeta(alpha - j) * upow / fact;
    }
    return sum;
  }

  const long long R = truncation;
  // Kahan summation: the partial sums oscillate and individual terms decay
  // only like r^-alpha.
  double sum = 0.0, comp = 0.0;
  const double w = 2.0 * M_PI * x;
  for (long long r = 1; r <= R; ++r) {
    const double term =
        std::cos(w * static_cast<double>(r)) * std::pow(static_cast<double>(r), -alpha);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum + cos_series_tail(x, alpha, static_cast<double>(R) + 1.0);
}

std::vector<double> derivative_stencil7(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> d(n, std::numeric_limits<double>::quiet_NaN());
  if (n < 7) return d;
  for (std::size_t i = 3; i + 3 < n; ++i) {
    d[i] = (-y[i - 3] + 9.0 * y[i - 2] - 45.0 * y[i - 1] + 45.0 * y[i + 1] -
            9.0 * y[i + 2] + y[i + 3]) /
           (60.0 * h);
  }
  return d;
}

}  // namespace splitgap
