#include "epdyn/survival.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <numbers>

namespace epdyn {

const char* to_string(Method m) {
  switch (m) {
    case Method::ContourExact: return "contour";
    case Method::FiniteChainOracle: return "finite_chain";
    case Method::Zeno: return "zeno";
    case Method::Ep2aPole: return "ep2a_pole";
    case Method::Ep2aNearThreshold: return "near_threshold";
    case Method::Ep2aLongTime: return "longtime";
    case Method::Ep2bPole: return "ep2b_pole";
    case Method::Ep2bLongTime: return "ep2b_longtime";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  for (auto m : {Method::ContourExact, Method::FiniteChainOracle, Method::Zeno, Method::Ep2aPole,
                 Method::Ep2aNearThreshold, Method::Ep2aLongTime, Method::Ep2bPole, Method::Ep2bLongTime})
    if (s == to_string(m)) return m;
  fail(ErrorKind::InvalidParameter, "unknown method '" + s + "'");
}

bool is_exact(Method m) { return m == Method::ContourExact || m == Method::FiniteChainOracle; }

double SurvivalSeries::max_probability() const {
  double m = 0.0;
  for (double p : probability) m = std::max(m, p);
  return m;
}

size_t SurvivalSeries::failed_points() const {
  return std::count_if(flags.begin(), flags.end(), [](std::uint32_t f) { return (f & kFlagBudget) != 0; });
}

std::vector<double> log_grid(double t_min, double t_max, int n) {
  if (!(t_min > 0.0) || !(t_max >= t_min) || n < 2) fail(ErrorKind::InvalidParameter, "log grid needs 0 < t_min <= t_max, n >= 2");
  std::vector<double> t(n);
  const double a = std::log(t_min), b = std::log(t_max);
  for (int i = 0; i < n; ++i) t[i] = std::exp(a + (b - a) * i / (n - 1));
  t.front() = t_min;
  t.back() = t_max;
  return t;
}

std::vector<double> linear_grid(double t_min, double t_max, int n) {
  if (!(t_min >= 0.0) || !(t_max >= t_min) || n < 2) fail(ErrorKind::InvalidParameter, "linear grid needs 0 <= t_min <= t_max, n >= 2");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t_min + (t_max - t_min) * i / (n - 1);
  t.back() = t_max;
  return t;
}

namespace {

void check_grid(const std::vector<double>& times) {
  for (size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) fail(ErrorKind::InvalidParameter, "times must be finite and >= 0");
    if (i && times[i] < times[i - 1]) fail(ErrorKind::InvalidParameter, "times must be ascending");
  }
}

SurvivalSeries make_series(Method m, const ModelParams& p, const std::vector<double>& times) {
  SurvivalSeries s;
  s.method = m;
  s.params = p;
  s.times = times;
  s.amplitude.assign(times.size(), 0.0);
  s.probability.assign(times.size(), 0.0);
  s.err_est.assign(times.size(), std::numeric_limits<double>::quiet_NaN());
  s.flags.assign(times.size(), kFlagNone);
  return s;
}

void finish(SurvivalSeries& s) {
  for (size_t i = 0; i < s.size(); ++i) s.probability[i] = std::norm(s.amplitude[i]);
}

// Everything the exact evaluation needs from one model.
struct ExactProblem {
  std::function<Complex(Complex)> S;  // integrand factor used on the contour
  std::vector<PolePart> parts;        // same factor as principal parts (time representation)
  struct Bound {
    Complex lambda, energy, weight;
  };
  std::vector<Bound> bound;
  double max_inner = 0.0;  // largest |lambda| among bound poles
};

SurvivalSeries run_exact(const ExactProblem& pr, const ModelParams& params, const std::vector<double>& times,
                         const SurvivalOptions& opt) {
  check_grid(times);
  auto s = make_series(Method::ContourExact, params, times);
  std::vector<size_t> td;
  QuadratureOptions qo;
  qo.abs_tol = opt.abs_tol * 2.0 * std::numbers::pi;
  qo.throw_on_budget = false;
  for (size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (opt.force_time_domain || t > opt.contour_t_max) {
      td.push_back(i);
      continue;
    }
    const double r = contour_radius(t, pr.max_inner);
    auto c = ContourSpec::circle(0.0, r, Orientation::Clockwise, contour_panels(t));
    const auto& S = pr.S;
    auto f = [&](Complex l) {
      const Complex il = 1.0 / l;
      return (il - l) * std::exp(kI * (l + il) * t) * S(l);
    };
    const auto q = integrate_contour(f, c, qo);
    s.amplitude[i] = q.value / (2.0 * std::numbers::pi * kI);
    s.err_est[i] = q.abs_error_estimate / (2.0 * std::numbers::pi);
    if (!q.converged) s.flags[i] |= kFlagBudget;
  }
  if (!td.empty()) {
    std::vector<double> tt;
    for (size_t i : td) tt.push_back(times[i]);
    const auto a = pole_parts_time_domain(pr.parts, tt, opt.time_route);
    for (size_t k = 0; k < td.size(); ++k) {
      s.amplitude[td[k]] = a[k];
      s.flags[td[k]] |= kFlagTimeDomain;
    }
  }
  for (size_t i = 0; i < times.size(); ++i)
    for (const auto& b : pr.bound) s.amplitude[i] += b.weight * std::exp(-kI * b.energy * times[i]);
  finish(s);
  return s;
}

void add_bound(ExactProblem& pr, Complex lambda, Complex energy, Complex c) {
  if (std::abs(lambda) < 1.0 && std::fabs(energy.imag()) <= 1e-12 * std::max(1.0, std::abs(energy))) {
    pr.bound.push_back({lambda, energy.real(), c * (1.0 / lambda - lambda)});
    pr.max_inner = std::max(pr.max_inner, std::abs(lambda));
  }
}

// Principal part at a double pole p from h(lambda) = S(lambda)(lambda - p)^2: a = h(p), b = h'(p) by the
// trapezoidal Cauchy integral on a small circle (aliasing error O(r^16) for h analytic around p).
PolePart double_pole_part(const std::function<Complex(Complex)>& h, Complex p) {
  const double r = 1e-4 * std::max(1.0, std::abs(p));
  Complex a = 0.0, b = 0.0;
  const int n = 16;
  for (int k = 0; k < n; ++k) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
    const Complex v = h(p + r * w);
    a += v;
    b += v / (r * w);
  }
  return {p, b / double(n), a / double(n)};
}

}  // namespace

Complex integrand_factor_m1(const ModelOneParams& p, Complex l) {
  const double q = 1.0 - p.g * p.g;
  return -1.0 / ((q * l + p.eps_d) * l + 1.0);
}

Complex integrand_factor_m2(const ModelTwoParams& p, Complex l) {
  const double q = 1.0 - p.g * p.g;
  const Complex l2 = l * l;
  return -(q * l2 + 1.0) / ((l2 + 1.0) * (q * l2 + 1.0) - p.V * p.V * l2);
}

Complex pole_sum_factor_m1(const ModelOneParams& p, Complex l) {
  const auto sp = discrete_spectrum(p);
  if (sp.at_exceptional_point) fail(ErrorKind::NearEP, "pole sum undefined at the exceptional point");
  const double q = 1.0 - p.g * p.g;
  Complex s = 0.0;
  for (const auto& pt : sp.points) s += pt.lambda / (1.0 - q * pt.lambda * pt.lambda) / (l - pt.lambda);
  return s;
}

Complex pole_sum_factor_m2(const ModelTwoParams& p, Complex l) {
  const auto sp = quartic_spectrum(p);
  if (sp.at_exceptional_point) fail(ErrorKind::NearEP, "pole sum undefined at the exceptional point");
  Complex s = 0.0;
  for (const auto& pt : sp.points) s += dA_weight(p, pt.lambda) * pt.lambda / (l - pt.lambda);
  return s;
}

SurvivalSeries amplitude_contour_m1(const ModelOneParams& p, const std::vector<double>& times,
                                    const SurvivalOptions& opt) {
  validate(p, true);
  if (p.g == 0.0) {
    check_grid(times);
    auto s = make_series(Method::ContourExact, p, times);
    for (size_t i = 0; i < times.size(); ++i) {
      s.amplitude[i] = std::exp(-kI * p.eps_d * times[i]);
      s.err_est[i] = 0.0;
    }
    finish(s);
    return s;
  }
  const auto sp = discrete_spectrum(p, opt.spectrum);
  const double q = 1.0 - p.g * p.g;
  ExactProblem pr;
  if (sp.at_exceptional_point) {
    const Complex lb = sp.points[0].lambda;
    if (std::abs(lb) < 1.0) fail(ErrorKind::DomainError, "coalesced pole inside the contour");
    pr.S = [=](Complex l) { return -1.0 / (q * (l - lb) * (l - lb)); };
    pr.parts = {{lb, 0.0, -1.0 / q}};
  } else {
    std::array<Complex, 2> lam{sp.points[0].lambda, sp.points[1].lambda}, c;
    for (int j = 0; j < 2; ++j) c[j] = lam[j] / (1.0 - q * lam[j] * lam[j]);
    if (sp.near_exceptional_point)
      pr.S = [=](Complex l) { return integrand_factor_m1(p, l); };
    else
      pr.S = [=](Complex l) { return c[0] / (l - lam[0]) + c[1] / (l - lam[1]); };
    for (int j = 0; j < 2; ++j) {
      pr.parts.push_back({lam[j], c[j]});
      add_bound(pr, lam[j], sp.points[j].energy, c[j]);
    }
  }
  return run_exact(pr, p, times, opt);
}

SurvivalSeries amplitude_contour_m2(const ModelTwoParams& p, const std::vector<double>& times,
                                    const SurvivalOptions& opt) {
  validate(p);
  const auto sp = quartic_spectrum(p, opt.spectrum);
  const double q = 1.0 - p.g * p.g;
  ExactProblem pr;
  if (sp.at_exceptional_point) {
    // two double poles at +-pb
    const Complex pb = lambda_roots_m2(p.g, p.V)[0];
    if (std::abs(pb) < 1.0) fail(ErrorKind::DomainError, "coalesced pole inside the contour");
    pr.S = [=](Complex l) { return integrand_factor_m2(p, l); };
    for (Complex c : {pb, -pb}) {
      auto h = [=](Complex l) { return -(q * l * l + 1.0) / (q * (l + c) * (l + c)); };
      pr.parts.push_back(double_pole_part(h, c));
    }
  } else {
    std::array<Complex, 4> lam, c;
    for (int j = 0; j < 4; ++j) {
      lam[j] = sp.points[j].lambda;
      c[j] = dA_weight(p, lam[j]) * lam[j];
    }
    if (sp.near_exceptional_point)
      pr.S = [=](Complex l) { return integrand_factor_m2(p, l); };
    else
      pr.S = [=](Complex l) {
        Complex s = 0.0;
        for (int j = 0; j < 4; ++j) s += c[j] / (l - lam[j]);
        return s;
      };
    for (int j = 0; j < 4; ++j) {
      pr.parts.push_back({lam[j], c[j]});
      add_bound(pr, lam[j], sp.points[j].energy, c[j]);
    }
  }
  return run_exact(pr, p, times, opt);
}

std::pair<std::vector<double>, std::vector<double>> chain_hamiltonian(const ModelParams& p, int n_sites) {
  if (n_sites < 1) fail(ErrorKind::InvalidParameter, "n_sites must be >= 1");
  std::vector<double> d, o;
  if (const auto* m1 = std::get_if<ModelOneParams>(&p)) {
    validate(*m1, true);
    d.assign(n_sites + 1, 0.0);
    o.assign(n_sites, -1.0);
    d[0] = m1->eps_d;
    o[0] = -m1->g;
  } else {
    const auto& m2 = std::get<ModelTwoParams>(p);
    validate(m2);
    d.assign(n_sites + 2, 0.0);
    o.assign(n_sites + 1, -1.0);
    o[0] = -m2.V;
    o[1] = -m2.g;
  }
  return {d, o};
}

SurvivalSeries amplitude_finite_chain(const ModelParams& p, int n_sites, const std::vector<double>& times,
                                      bool enforce_light_cone) {
  check_grid(times);
  const double t_max = times.empty() ? 0.0 : times.back();
  if (enforce_light_cone && n_sites < 2.0 * t_max + kLightConeMargin)
    fail(ErrorKind::LightConeViolation, "finite chain of " + std::to_string(n_sites) + " sites is too short for t = " +
                                            std::to_string(t_max) + " (need >= 2 t + " +
                                            std::to_string(kLightConeMargin) + ")");
  const auto [d, o] = chain_hamiltonian(p, n_sites);
  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(d.data(), d.size());
  Eigen::VectorXd off = Eigen::Map<const Eigen::VectorXd>(o.data(), o.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) fail(ErrorKind::NonFinite, "tridiagonal eigensolver failed");
  const Eigen::VectorXd w = es.eigenvectors().row(0).transpose().array().square();
  const Eigen::VectorXd& E = es.eigenvalues();
  auto s = make_series(Method::FiniteChainOracle, p, times);
  for (size_t i = 0; i < times.size(); ++i) {
    Complex a = 0.0;
    for (Eigen::Index m = 0; m < E.size(); ++m) a += w[m] * std::exp(-kI * (E[m] * times[i]));
    s.amplitude[i] = a;
    s.err_est[i] = 1e-15 * double(E.size());
  }
  finish(s);
  return s;
}

// ---- approximations ----

double zeno(const ModelOneParams& p, double t) { return 1.0 - p.g * p.g * t * t; }
double zeno(const ModelTwoParams& p, double t) { return 1.0 - p.V * p.V * t * t; }

Complex ep2a_pole(double g, double t) {
  const auto ep = ep_location(g, EpBranch::Lower);
  const double lb = ep.lambda_bar, g4 = g * g * g * g;
  return 0.5 * (1.0 + lb * lb + kI * t * g4 * lb * lb * lb) * std::exp(-kI * ep.E_bar * t);
}

Complex ep2a_pole_small_g(double g, double t) {
  const auto ep = ep_location(g, EpBranch::Lower);
  const double g2 = g * g;
  return (1.0 + 0.5 * g2 + kI * t * g2 * g2 * 0.5 * (1.0 + 1.5 * g2)) * std::exp(-kI * ep.E_bar * t);
}

AmplitudeProbability ep2a_near_threshold(double g, double t) {
  const auto ep = ep_location(g, EpBranch::Lower);
  const double d = delta_ep(g);
  const Complex a = std::exp(-kI * ep.E_bar * t) *
                    (1.0 - 4.0 * std::sqrt(kI * t * d / std::numbers::pi) + 2.0 * kI * t * d);
  const double p = 1.0 - 4.0 * std::sqrt(2.0 * t * d / std::numbers::pi) + 16.0 * t * d / std::numbers::pi;
  return {a, p};
}

double ep2a_longtime(double g, double t) {
  const double g2 = g * g, s = std::sqrt(1.0 - g2), d = g2 / (1.0 + s);  // d = 1 - s
  return g2 * g2 / (4.0 * std::numbers::pi * std::pow(d, 8) * t * t * t);
}

double ep2b_pole_slope(double g) {
  const double g2 = g * g, q = 1.0 - g2;
  return g2 * (1.0 + std::sqrt(q)) / (4.0 * std::pow(q, 0.75));
}

AmplitudeProbability ep2b_pole(double g, double t) {
  validate(ModelTwoParams{g, 1.0});
  const double g2 = g * g, q = 1.0 - g2, s = std::sqrt(q);
  const double half_gamma = ep_locations_m2(g).ep2b.gamma_bar / 2.0;
  const double a = (1.0 + ep2b_pole_slope(g) * t) * std::exp(-half_gamma * t);
  const double p = (1.0 + g2 * (1.0 + s) / (2.0 * std::pow(q, 0.75)) * t +
                    g2 * g2 * (2.0 - g2 + 2.0 * s) / (16.0 * std::pow(q, 1.5)) * t * t) *
                   std::exp(-2.0 * t * half_gamma);
  return {a, p};
}

Complex ep2b_longtime_coefficient(double g) {
  const auto ep = ep_locations_m2(g).ep2b;
  const Complex eb = ep.E_bar, lb = ep.lambda_bar;
  const Complex d = 4.0 - eb * eb;
  return (1.0 / lb - lb) * 2.0 * eb * eb * eb / (d * d);
}

Complex ep2b_longtime(double g, double t) {
  if (!(t > 0.0)) fail(ErrorKind::DomainError, "ep2b_longtime needs t > 0");
  return std::pow(t, -1.5) / (2.0 * std::sqrt(std::numbers::pi)) * std::cos(2.0 * t + std::numbers::pi / 4.0) *
             ep2b_longtime_coefficient(g) +
         ep2b_pole(g, t).amplitude;
}

SurvivalSeries approximation_series(Method m, const ModelParams& p, const std::vector<double>& times) {
  if (is_exact(m)) fail(ErrorKind::InvalidParameter, "approximation_series: exact method requested");
  check_grid(times);
  auto s = make_series(m, p, times);
  const auto* m1 = std::get_if<ModelOneParams>(&p);
  const auto* m2 = std::get_if<ModelTwoParams>(&p);
  const double g = m1 ? m1->g : m2->g;
  const bool model_one_only = m == Method::Ep2aPole || m == Method::Ep2aNearThreshold || m == Method::Ep2aLongTime;
  const bool model_two_only = m == Method::Ep2bPole || m == Method::Ep2bLongTime;
  if ((model_one_only && !m1) || (model_two_only && !m2))
    fail(ErrorKind::InvalidParameter, std::string("method ") + to_string(m) + " does not apply to this model");
  for (size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    switch (m) {
      case Method::Zeno: {
        const double z = m1 ? zeno(*m1, t) : zeno(*m2, t);
        s.amplitude[i] = std::sqrt(std::max(z, 0.0));
        s.probability[i] = z;
        continue;
      }
      case Method::Ep2aPole:
        s.amplitude[i] = ep2a_pole(g, t);
        s.flags[i] |= kFlagNonUnitary;
        break;
      case Method::Ep2aNearThreshold: {
        const auto r = ep2a_near_threshold(g, t);
        s.amplitude[i] = r.amplitude;
        s.probability[i] = r.probability;
        continue;
      }
      case Method::Ep2aLongTime: {
        if (t <= 0.0) {
          s.amplitude[i] = std::numeric_limits<double>::infinity();
          s.probability[i] = std::numeric_limits<double>::infinity();
          continue;
        }
        const double pl = ep2a_longtime(g, t);
        s.amplitude[i] = std::sqrt(pl);
        s.probability[i] = pl;
        continue;
      }
      case Method::Ep2bPole: {
        const auto r = ep2b_pole(g, t);
        s.amplitude[i] = r.amplitude;
        s.probability[i] = r.probability;
        continue;
      }
      case Method::Ep2bLongTime:
        if (t <= 0.0) {
          s.amplitude[i] = ep2b_pole(g, t).amplitude;
          break;
        }
        s.amplitude[i] = ep2b_longtime(g, t);
        break;
      default:
        break;
    }
    s.probability[i] = std::norm(s.amplitude[i]);
  }
  return s;
}

Timescales timescales(const ModelOneParams& p) {
  validate(p);
  if (p.eps_d == 0.0) fail(ErrorKind::DomainError, "T_Z = 1/|eps_d| is undefined at eps_d = 0");
  Timescales ts;
  ts.t_zeno = 1.0 / std::fabs(p.eps_d);
  ts.t_ep = 1.0 / delta_ep(p.g);
  return ts;
}

Timescales timescales(const ModelTwoParams& p) {
  validate(p);
  const auto ep = ep_locations_m2(p.g).ep2b;
  Timescales ts;
  ts.t_zeno = 1.0 / (std::sqrt(2.0) * p.V);
  ts.t_ep_edges = {1.0 / std::abs(ep.E_bar + 2.0), 1.0 / std::abs(ep.E_bar - 2.0)};
  ts.t_ep = std::max(ts.t_ep_edges.first, ts.t_ep_edges.second);
  ts.gamma_bar = ep.gamma_bar;
  return ts;
}

double loglog_slope(const SurvivalSeries& s, double t_lo, double t_hi) {
  return loglog_slope(s.times, s.probability, t_lo, t_hi);
}

}  // namespace epdyn
