#include "isv/specfun.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "isv/error.hpp"

namespace isv {

namespace {

// Clausen function Cl2(x) for |x| <= pi:
//   Cl2(x) = x - x log|x| + sum_{n>=1} zeta(2n) x^{2n+1} / ((2 pi)^{2n} n (2n+1)).
// The ratio of consecutive terms is at most (x / 2pi)^2 <= 1/4.
double clausen2_reduced(double x) {
  if (x == 0.0) return 0.0;
  double sum = x - x * std::log(std::abs(x));
  const double q = (x / (2.0 * kPi)) * (x / (2.0 * kPi));
  double power = x;
  for (int n = 1; n <= 60; ++n) {
    power *= q;
    const double term = std::riemann_zeta(2.0 * n) * power / (n * (2.0 * n + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

struct Panel {
  double a, b, fa, fm, fb, whole, tol;
  int depth;
};

constexpr long kMaxPanels = 1'000'000;
constexpr int kMaxDepth = 60;

}  // namespace

double lobachevsky(double theta) {
  // pi-periodic: reduce to (-pi/2, pi/2].
  double t = std::remainder(theta, kPi);
  if (t <= -kPi / 2) t += kPi;
  return 0.5 * clausen2_reduced(2.0 * t);
}

double v8() { return 8.0 * lobachevsky(kPi / 4.0); }

double v3() { return 2.0 * lobachevsky(kPi / 6.0); }

double edge_integrand(double t) {
  if (!(t >= 0.0) || !(t < kPi / 3.0)) {
    std::ostringstream os;
    os << "edge_integrand needs 0 <= t < pi/3, got " << t;
    throw Error(ErrorCode::OutOfDomain, os.str());
  }
  const double denom = 2.0 * std::cos(t) - 1.0;
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::OutOfDomain, "edge_integrand: 2 cos t - 1 vanishes");
  }
  // cos t / (2 cos t - 1) = 1 + u with u = 2 sin^2(t/2) / (2 cos t - 1), and
  // arccosh(1 + u) = log1p(u + sqrt(u (u + 2))) keeps accuracy near t = 0.
  const double s = std::sin(0.5 * t);
  const double u = 2.0 * s * s / denom;
  return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol) {
  if (!(a <= b)) throw Error(ErrorCode::InvalidArgument, "integrate needs a <= b");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "integrate needs tol > 0");
  QuadratureResult out{0.0, 0.0, 1};
  if (a == b) return out;

  auto simpson = [](double h, double fa, double fm, double fb) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
  };

  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  std::vector<Panel> stack;
  stack.push_back({a, b, fa, fm, fb, simpson(b - a, fa, fm, fb), tol, 0});
  long panels = 1;

  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double flm = f(0.5 * (p.a + m));
    const double frm = f(0.5 * (m + p.b));
    const double left = simpson(m - p.a, p.fa, flm, p.fm);
    const double right = simpson(p.b - m, p.fm, frm, p.fb);
    const double delta = left + right - p.whole;
    if (std::abs(delta) <= 15.0 * p.tol || p.depth >= kMaxDepth) {
      out.value += left + right + delta / 15.0;
      out.abs_error_estimate += std::abs(delta) / 15.0;
      continue;
    }
    if (++panels > kMaxPanels) {
      throw Error(ErrorCode::MaxSubdivisions, "adaptive Simpson exceeded 1e6 panels");
    }
    // Right half pushed first so the left half is processed first.
    stack.push_back({m, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
    stack.push_back({p.a, m, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
  }
  out.subdivisions = static_cast<int>(panels);
  return out;
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0)) {
    std::ostringstream os;
    os << "no sign change on [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::NoSignChange, os.str());
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
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

}  // namespace isv
