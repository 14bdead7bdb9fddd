#include <algorithm>
#include <cstdlib>
#include <numbers>
#include <queue>

#include "epdyn/numerics.hpp"

namespace epdyn {
namespace {

// 15-point Kronrod abscissae on [-1,1] (non-negative half) and weights.
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// 7-point Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7]
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Complex value;
  double err;
  bool settled;  // error is at the roundoff floor; splitting cannot help
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class G>
Panel gk15(const G& g, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  Complex fc = g(c);
  Complex k = fc * wgk[7], gs = fc * wg[3];
  double mag = std::abs(fc) * wgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    Complex f1 = g(c - dx), f2 = g(c + dx);
    k += (f1 + f2) * wgk[j];
    mag += (std::abs(f1) + std::abs(f2)) * wgk[j];
    if (j % 2 == 1) gs += (f1 + f2) * wg[j / 2];
  }
  k *= h;
  gs *= h;
  const double e = std::abs(k - gs), floor = 50.0 * 2.2e-16 * std::fabs(h) * mag;
  return {a, b, k, std::max(e, floor), e <= floor};
}

// Global adaptive refinement over a set of parameter intervals.
template <class G>
QuadratureResult adapt(const G& g, const std::vector<std::pair<double, double>>& init,
                       const QuadratureOptions& opt) {
  const long budget = opt.max_evals > 0 ? opt.max_evals : default_max_evals();
  std::priority_queue<Panel> heap;
  std::vector<Panel> done;
  auto keep = [&](const Panel& p) {
    if (p.settled)
      done.push_back(p);
    else
      heap.push(p);
  };
  QuadratureResult r;
  Complex total{0.0, 0.0};
  double err = 0.0;
  for (auto [a, b] : init) {
    Panel p = gk15(g, a, b);
    r.evaluations += 15;
    if (!is_finite(p.value)) fail(ErrorKind::NonFinite, "integrand not finite on the contour");
    total += p.value;
    err += p.err;
    keep(p);
  }
  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  while (err > target() && !heap.empty()) {
    if (r.evaluations + 30 > budget) {
      r.converged = false;
      break;
    }
    Panel p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {  // interval exhausted at double resolution
      done.push_back(p);
      continue;
    }
    Panel l = gk15(g, p.a, m), rr = gk15(g, m, p.b);
    r.evaluations += 30;
    if (!is_finite(l.value) || !is_finite(rr.value))
      fail(ErrorKind::NonFinite, "integrand not finite on the contour");
    total += l.value + rr.value - p.value;
    err += l.err + rr.err - p.err;
    keep(l);
    keep(rr);
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  Complex s{0.0, 0.0};
  double e = 0.0;
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  for (const auto& p : done) {
    s += p.value;
    e += p.err;
  }
  r.value = s;
  r.abs_error_estimate = e;
  if (!r.converged && opt.throw_on_budget)
    fail(ErrorKind::BudgetExceeded, "quadrature tolerance not reached within " + std::to_string(budget) +
                                        " evaluations (estimate " + std::to_string(e) + ")");
  return r;
}

std::vector<std::pair<double, double>> uniform(double a, double b, int n) {
  n = std::max(n, 1);
  std::vector<std::pair<double, double>> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) v.emplace_back(a + (b - a) * i / n, i + 1 == n ? b : a + (b - a) * (i + 1) / n);
  return v;
}

}  // namespace

long default_max_evals() {
  if (const char* s = std::getenv("EPDYN_MAX_EVALS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return 50'000'000;
}

Complex ContourSpec::start() const {
  if (segments.empty()) fail(ErrorKind::InvalidParameter, "empty contour");
  return segments.front().z(0.0);
}

Complex ContourSpec::end() const {
  if (segments.empty()) fail(ErrorKind::InvalidParameter, "empty contour");
  return segments.back().z(1.0);
}

bool ContourSpec::closed(double tol) const { return std::abs(end() - start()) <= tol; }

ContourSpec ContourSpec::circle(Complex center, double radius, Orientation o, int panels) {
  if (!(radius > 0)) fail(ErrorKind::InvalidParameter, "circle radius must be positive");
  const double sgn = o == Orientation::Clockwise ? -1.0 : 1.0;
  const double tau = 2.0 * std::numbers::pi;
  ContourSegment seg;
  seg.z = [=](double s) { return center + radius * std::polar(1.0, sgn * tau * s); };
  seg.dz = [=](double s) { return kI * sgn * tau * radius * std::polar(1.0, sgn * tau * s); };
  seg.panels = panels;
  ContourSpec c;
  c.segments.push_back(std::move(seg));
  c.orientation = o == Orientation::Open ? Orientation::Counterclockwise : o;
  return c;
}

ContourSpec ContourSpec::polyline(const std::vector<Complex>& pts, bool close, int panels) {
  if (pts.size() < 2) fail(ErrorKind::InvalidParameter, "polyline needs at least two points");
  ContourSpec c;
  std::vector<Complex> p = pts;
  if (close && std::abs(p.back() - p.front()) > 0) p.push_back(p.front());
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    const Complex a = p[i], b = p[i + 1];
    ContourSegment seg;
    seg.z = [=](double s) { return a + (b - a) * s; };
    seg.dz = [=](double) { return b - a; };
    seg.panels = panels;
    c.segments.push_back(std::move(seg));
  }
  c.orientation = Orientation::Open;
  if (close) {
    // signed area decides the orientation tag
    double area = 0.0;
    for (size_t i = 0; i + 1 < p.size(); ++i) area += p[i].real() * p[i + 1].imag() - p[i + 1].real() * p[i].imag();
    c.orientation = area >= 0 ? Orientation::Counterclockwise : Orientation::Clockwise;
  }
  return c;
}

QuadratureResult integrate_contour(const ComplexFn& f, const ContourSpec& c, const QuadratureOptions& opt) {
  if (c.segments.empty()) fail(ErrorKind::InvalidParameter, "empty contour");
  if (c.orientation != Orientation::Open && !c.closed())
    fail(ErrorKind::NotClosed, "closed contour does not return to its start");
  // Segments are laid end to end on a single parameter line [k, k+1).
  const size_t n = c.segments.size();
  std::vector<std::pair<double, double>> init;
  for (size_t k = 0; k < n; ++k) {
    const int np = std::max({1, c.segments[k].panels, opt.min_panels});
    for (auto iv : uniform(double(k), double(k + 1), np)) init.push_back(iv);
  }
  auto g = [&](double u) {
    size_t k = std::min(static_cast<size_t>(u), n - 1);
    const double s = u - double(k);
    const auto& seg = c.segments[k];
    return f(seg.z(s)) * seg.dz(s);
  };
  return adapt(g, init, opt);
}

QuadratureResult integrate_real(const std::function<Complex(double)>& f, double a, double b,
                                const QuadratureOptions& opt) {
  if (!(std::isfinite(a) && std::isfinite(b))) fail(ErrorKind::InvalidParameter, "non-finite interval");
  if (a == b) return {};
  return adapt(f, uniform(a, b, opt.min_panels), opt);
}

}  // namespace epdyn
