#include "qstep/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qstep/errors.hpp"

namespace qstep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kScanPoints = 401;
constexpr double kCertificateOffset = 1e-4;

double guarded(const std::function<double(double)>& f, double x) {
  try {
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
  } catch (const Error&) {
    return kInf;
  }
}

template <typename F>
double bisect(F&& f, double lo, double hi, double f_lo, double tol) {
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CurveMinimum minimize_bracketed(const std::function<double(double)>& f, double lo, double hi) {
  std::vector<double> xs(kScanPoints), fs(kScanPoints);
  for (int n = 0; n < kScanPoints; ++n) {
    xs[n] = lo + (hi - lo) * n / (kScanPoints - 1);
    fs[n] = guarded(f, xs[n]);
  }
  const auto best = std::min_element(fs.begin(), fs.end());
  const auto idx = static_cast<std::size_t>(best - fs.begin());
  if (!std::isfinite(*best) || idx == 0 || idx + 1 == fs.size() || !std::isfinite(fs[idx - 1]) ||
      !std::isfinite(fs[idx + 1]))
    throw NoInteriorMinimum("no interior minimum found on the scan grid");

  constexpr double inv_phi = std::numbers::phi - 1.0;
  double a = xs[idx - 1];
  double b = xs[idx + 1];
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = guarded(f, c);
  double fd = guarded(f, d);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = guarded(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = guarded(f, d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = guarded(f, x);
  if (!(guarded(f, x - kCertificateOffset) > fx && guarded(f, x + kCertificateOffset) > fx))
    throw NoInteriorMinimum("minimum certificate failed");
  return {x, fx, x * fx};
}

CurveMinimum find_minimum(CurveKind kind, double nuq) {
  if (kind == CurveKind::RescaledComplex || kind == CurveKind::RescaledQuaternionic)
    throw DomainError("find_minimum takes an unscaled curve kind");
  return minimize_bracketed([=](double e) { return delay_on_curve(kind, e, nuq); }, 1e-4, 1.0 - 1e-4);
}

RescaleConstants rescale_constants() {
  return {find_minimum(CurveKind::Complex).eps_star, find_minimum(CurveKind::Quaternionic).eps_star};
}

MimicSolution mimic_potential(double e0_kev, double vq_kev) {
  if (!(e0_kev > 0.0 && e0_kev < vq_kev)) {
    std::ostringstream os;
    os << "mimic requires 0 < e0 < vq, got e0=" << e0_kev << ", vq=" << vq_kev;
    throw DomainError(os.str());
  }
  const double target = physical_delay(e0_kev, PhysicalStep::pure_quaternionic(vq_kev));
  auto mismatch = [&](double v1) { return physical_delay(e0_kev, PhysicalStep::pure_complex(v1)) - target; };

  // Geometric scan of the gap v1 - e0 from 1e-6 e0 up to 1e4 vq.
  constexpr int n = 4000;
  const double gap_lo = 1e-6 * e0_kev;
  const double gap_hi = 1e4 * vq_kev;
  std::vector<double> roots;
  double prev_v = e0_kev + gap_lo;
  double prev_f = mismatch(prev_v);
  for (int i = 1; i <= n; ++i) {
    const double v = e0_kev + gap_lo * std::pow(gap_hi / gap_lo, static_cast<double>(i) / n);
    const double fv = mismatch(v);
    if (fv == 0.0) {
      roots.push_back(v);
    } else if ((fv < 0.0) != (prev_f < 0.0) && prev_f != 0.0) {
      roots.push_back(bisect(mismatch, prev_v, v, prev_f, 1e-7));
    }
    prev_v = v;
    prev_f = fv;
  }
  if (roots.empty()) {
    std::ostringstream os;
    os << "no complex step reproduces delay " << target << " at e0=" << e0_kev << " KeV";
    throw NoMimic(os.str());
  }
  return {e0_kev, vq_kev, roots.back(), target, roots};
}

std::vector<Intersection> curve_intersections(double lo, double hi, const RescaleConstants& s) {
  auto diff = [&](double e) {
    return delay_on_curve(CurveKind::RescaledComplex, e, 0.0, s.complex_scale) -
           delay_on_curve(CurveKind::RescaledQuaternionic, e, 1.0, s.quaternionic_scale);
  };
  std::vector<Intersection> found;
  auto add_root = [&](double x) {
    for (const auto& r : found)
      if (std::abs(r.eps_tilde - x) < 1e-6) return;
    found.push_back({x, delay_on_curve(CurveKind::RescaledComplex, x, 0.0, s.complex_scale)});
  };
  for (const double step : {1e-3, 1e-4}) {
    const int n = static_cast<int>(std::floor((hi - lo) / step));
    double x0 = lo;
    double f0 = diff(x0);
    for (int i = 1; i <= n + 1; ++i) {
      const double x1 = std::min(lo + i * step, hi);
      const double f1 = diff(x1);
      if (f1 == 0.0)
        add_root(x1);
      else if (f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0))
        add_root(bisect(diff, x0, x1, f0, 1e-13));
      x0 = x1;
      f0 = f1;
      if (x1 >= hi) break;
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.eps_tilde < b.eps_tilde; });
  return found;
}

std::vector<Intersection> curve_intersections(const RescaleConstants& s) {
  const double hi = (1.0 - 1e-6) / std::max(s.complex_scale, s.quaternionic_scale);
  return curve_intersections(1e-3, hi, s);
}

}  // namespace qstep
