//
// Copyright 2026 The tukeydepth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "tukey/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>

#include "linalg.hpp"
#include "normal.hpp"
#include "tukey/error.hpp"

namespace tukey {

using detail::Vec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void same_dim(const WeightedPointSet& p, const WeightedPointSet& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch(p.dim(), q.dim());
}

// Union of the atoms of p and q with signed weight w_p - w_q, merged exactly.
struct Signed {
  std::size_t dim;
  std::vector<double> coords;
  std::vector<double> diff;
};

Signed signed_union(const WeightedPointSet& p, const WeightedPointSet& q) {
  std::map<Vec, std::pair<double, double>> acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto x = p.point(i);
    acc[Vec(x.begin(), x.end())].first += p.weight(i);
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto x = q.point(i);
    acc[Vec(x.begin(), x.end())].second += q.weight(i);
  }
  Signed s{p.dim(), {}, {}};
  for (const auto& [x, w] : acc) {
    s.coords.insert(s.coords.end(), x.begin(), x.end());
    s.diff.push_back(w.first - w.second);
  }
  return s;
}

// Largest |sum of diff over {v^T x >= t}| and over {v^T x <= t} for all t.
// Projections closer than `tie_tol` are treated as equal.
double scan_direction(const Signed& s, std::span<const double> v, double tie_tol) {
  const std::size_t m = s.diff.size();
  std::vector<std::pair<double, double>> pr(m);
  double scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    pr[i] = {detail::dot(v, {s.coords.data() + i * s.dim, s.dim}), s.diff[i]};
    scale = std::max(scale, std::abs(pr[i].first));
  }
  std::sort(pr.begin(), pr.end());
  const double tol = tie_tol * (scale + 1.0);
  double best = 0.0;
  // Descending closed tails.
  double acc = 0.0;
  for (std::size_t i = m; i-- > 0;) {
    acc += pr[i].second;
    if (i == 0 || pr[i].first - pr[i - 1].first > tol) best = std::max(best, std::abs(acc));
  }
  acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    acc += pr[i].second;
    if (i + 1 == m || pr[i + 1].first - pr[i].first > tol) best = std::max(best, std::abs(acc));
  }
  return best;
}

}  // namespace

double tv_distance(const WeightedPointSet& p, const WeightedPointSet& q) {
  same_dim(p, q);
  const auto s = signed_union(p, q);
  double total = 0.0;
  for (double w : s.diff) total += std::abs(w);
  return std::min(1.0, 0.5 * total);
}

double halfspace_metric(const WeightedPointSet& p, const WeightedPointSet& q,
                        HalfspaceMode mode, std::size_t budget, std::uint64_t seed) {
  same_dim(p, q);
  const auto s = signed_union(p, q);
  const std::size_t d = s.dim;
  const std::size_t m = s.diff.size();
  constexpr double kTie = 1e-12;
  if (d == 1) {
    const Vec v{1.0};
    return std::min(1.0, scan_direction(s, v, 0.0));
  }
  double best = 0.0;
  if (mode == HalfspaceMode::exact) {
    if (d > 2)
      throw InvalidArgument("exact halfspace metric supports d <= 2; use sampled mode");
    if (m > 400) throw GuardExceeded("exact halfspace metric limited to 400 distinct atoms");
    // Orderings of projections change only at directions orthogonal to a
    // pairwise difference; sample each such direction and each arc between.
    std::vector<double> crit;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const double dx = s.coords[2 * j] - s.coords[2 * i];
        const double dy = s.coords[2 * j + 1] - s.coords[2 * i + 1];
        double a = std::atan2(dy, dx) + 0.5 * M_PI;
        a = std::fmod(a, M_PI);
        if (a < 0) a += M_PI;
        crit.push_back(a);
      }
    if (crit.empty()) crit.push_back(0.0);
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    for (std::size_t k = 0; k < crit.size(); ++k) {
      const double a = crit[k];
      const double b = k + 1 < crit.size() ? crit[k + 1] : crit.front() + M_PI;
      const Vec at{std::cos(a), std::sin(a)};
      best = std::max(best, scan_direction(s, at, kTie));
      const double mid = 0.5 * (a + b);
      const Vec between{std::cos(mid), std::sin(mid)};
      best = std::max(best, scan_direction(s, between, 0.0));
    }
    return std::min(1.0, best);
  }
  SeededRng rng(seed);
  const std::size_t anchored = m >= d ? budget / 2 : 0;
  std::vector<Vec> rows(d - 1);
  for (std::size_t k = 0; k < anchored; ++k) {
    std::vector<std::size_t> idx;
    while (idx.size() < d) {
      const auto c = static_cast<std::size_t>(rng.below(m));
      if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
    }
    const std::span<const double> base(s.coords.data() + idx[0] * d, d);
    for (std::size_t r = 1; r < d; ++r)
      rows[r - 1] = detail::sub({s.coords.data() + idx[r] * d, d}, base);
    if (auto nrm = detail::null_vector(rows, d)) best = std::max(best, scan_direction(s, *nrm, kTie));
  }
  for (std::size_t k = anchored; k < std::max<std::size_t>(budget, 1); ++k) {
    const auto v = rng.unit_vector(d);
    best = std::max(best, scan_direction(s, v, 0.0));
  }
  return std::min(1.0, best);
}

// ---------------------------------------------------------------------------

DecayProfile DecayProfile::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be positive");
  DecayProfile h;
  h.kind_ = Kind::gaussian;
  h.scale_ = sigma;
  return h;
}

DecayProfile DecayProfile::uniform_ball(double radius, std::size_t d) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("radius must be positive");
  if (d == 0) throw InvalidArgument("ball dimension must be >= 1");
  DecayProfile h;
  h.kind_ = Kind::uniform_ball;
  h.scale_ = radius;
  h.dim_ = d;
  return h;
}

DecayProfile DecayProfile::piecewise(std::vector<std::pair<double, double>> steps) {
  if (steps.empty()) throw InvalidArgument("piecewise profile needs at least one step");
  if (steps.front().first != 0.0) throw InvalidArgument("piecewise profile must start at t = 0");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto [t, v] = steps[i];
    if (!std::isfinite(t) || !(v >= 0.0 && v <= 1.0))
      throw InvalidArgument("piecewise step out of range");
    if (i > 0 && (!(t > steps[i - 1].first) || v > steps[i - 1].second))
      throw InvalidArgument("piecewise steps must have increasing t and non-increasing h");
  }
  DecayProfile h;
  h.kind_ = Kind::piecewise;
  h.steps_ = std::move(steps);
  return h;
}

namespace {

// Closest point of aff(F) to the origin, or nullopt if F is affinely dependent.
std::optional<Vec> nearest_on_affine_hull(const std::vector<const double*>& f, std::size_t d) {
  const auto k = static_cast<Eigen::Index>(f.size()) - 1;
  Eigen::Map<const Eigen::VectorXd> a0(f[0], static_cast<Eigen::Index>(d));
  if (k == 0) return Vec(f[0], f[0] + d);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(d), k);
  for (Eigen::Index j = 0; j < k; ++j)
    a.col(j) = Eigen::Map<const Eigen::VectorXd>(f[static_cast<std::size_t>(j) + 1],
                                                 static_cast<Eigen::Index>(d)) - a0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < k) return std::nullopt;
  const Eigen::VectorXd c = qr.solve(-a0);
  const Eigen::VectorXd pt = a0 + a * c;
  return Vec(pt.data(), pt.data() + pt.size());
}

}  // namespace

DecayProfile DecayProfile::empirical(const WeightedPointSet& p, const Point& center,
                                     std::size_t budget, std::uint64_t seed) {
  if (p.dim() != center.dim()) throw DimensionMismatch(p.dim(), center.dim());
  const std::size_t d = p.dim();
  const auto atoms = p.merged();
  const std::size_t m = atoms.size();
  std::vector<Vec> offs(m);
  for (std::size_t i = 0; i < m; ++i) offs[i] = detail::sub(atoms.point(i), center.coords());

  DecayProfile h;
  h.kind_ = Kind::empirical;
  h.dim_ = d;

  // The best strict tail beyond t is a set S with dist(0, conv S) > t, and the
  // nearest point of conv S lies on the affine hull of at most d atoms.
  double subsets = 0.0, c = 1.0;
  for (std::size_t k = 1; k <= std::min(d, m); ++k) {
    c = c * static_cast<double>(m - k + 1) / static_cast<double>(k);
    subsets += c;
  }
  std::vector<Vec> dirs;
  if (subsets <= 2e4) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k <= std::min(d, m); ++k) {
      idx.resize(k);
      std::iota(idx.begin(), idx.end(), 0);
      for (;;) {
        std::vector<const double*> f;
        for (auto i : idx) f.push_back(offs[i].data());
        if (auto pt = nearest_on_affine_hull(f, d); pt && detail::normalize(*pt))
          dirs.push_back(std::move(*pt));
        std::size_t j = k;
        while (j > 0 && idx[j - 1] == m - k + (j - 1)) --j;
        if (j == 0) break;
        ++idx[j - 1];
        for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
      }
    }
  } else {
    h.exact_ = false;
    SeededRng rng(seed);
    for (std::size_t i = 0; i < m; ++i) {
      Vec v = offs[i];
      if (detail::normalize(v)) dirs.push_back(std::move(v));
    }
    for (std::size_t k = 0; k < budget; ++k) dirs.push_back(rng.unit_vector(d));
  }
  if (dirs.empty()) dirs.push_back(Direction::axis(d, 0).vec());
  for (const auto& v : dirs) {
    std::vector<std::pair<double, double>> pr(m);
    for (std::size_t i = 0; i < m; ++i) pr[i] = {detail::dot(v, offs[i]), atoms.weight(i)};
    std::sort(pr.begin(), pr.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<double> vals, above;
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (vals.empty() || pr[i].first != vals.back()) {
        vals.push_back(pr[i].first);
        above.push_back(acc);
      }
      acc += pr[i].second;
    }
    above.push_back(acc);
    h.proj_.push_back(std::move(vals));
    h.above_.push_back(std::move(above));
  }
  return h;
}

DecayProfile DecayProfile::of(const NamedDistribution& dist) {
  switch (dist.kind()) {
    case DistributionKind::gaussian_isotropic: return gaussian(dist.scale());
    case DistributionKind::uniform_ball: return uniform_ball(dist.scale(), dist.dim());
    case DistributionKind::discrete_atoms: return empirical(dist.atoms(), dist.center());
  }
  throw InvalidArgument("unknown distribution kind");
}

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

DecayProfile DecayProfile::parse(std::string_view text, std::size_t d) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  try {
    if (head == "gaussian") return gaussian(rest.empty() ? 1.0 : parse_number(rest));
    if (head == "ball") return uniform_ball(rest.empty() ? 1.0 : parse_number(rest), d);
    if (head == "square") return empirical(square_atoms_3d(), Point::zeros(3));
    if (head == "piecewise") {
      std::vector<std::pair<double, double>> steps;
      std::string_view r = rest;
      while (!r.empty()) {
        const auto comma = r.find(',');
        const auto item = r.substr(0, comma);
        const auto c = item.find(':');
        if (c == std::string_view::npos) throw ConfigError("piecewise step must be t:h");
        steps.emplace_back(parse_number(item.substr(0, c)), parse_number(item.substr(c + 1)));
        r = comma == std::string_view::npos ? std::string_view{} : r.substr(comma + 1);
      }
      return piecewise(std::move(steps));
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("decay '") + std::string(text) + "': " + e.what());
  }
  throw ConfigError("unknown decay profile '" + std::string(text) + "'");
}

double DecayProfile::eval(double t) const {
  if (!(t >= 0.0)) throw InvalidArgument("decay is defined for t >= 0");
  switch (kind_) {
    case Kind::gaussian: return detail::normal_sf(t / scale_);
    case Kind::uniform_ball: {
      const double s = t / scale_;
      if (s >= 1.0) return 0.0;
      // One-sided cap of the unit ball beyond height s.
      const double a = 0.5 * static_cast<double>(dim_ + 1);
      return 0.5 * boost::math::ibeta(a, 0.5, 1.0 - s * s);
    }
    case Kind::piecewise: {
      auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                                 [](double x, const auto& st) { return x < st.first; });
      return std::prev(it)->second;
    }
    case Kind::empirical: {
      double best = 0.0;
      for (std::size_t k = 0; k < proj_.size(); ++k) {
        const auto& vals = proj_[k];
        // First distinct value <= t; mass strictly above it is the tail.
        const auto j = static_cast<std::size_t>(
            std::lower_bound(vals.begin(), vals.end(), t, std::greater<double>()) - vals.begin());
        const auto it = std::find_if(vals.begin() + static_cast<std::ptrdiff_t>(j), vals.end(),
                                     [t](double x) { return x <= t; });
        best = std::max(best, above_[k][static_cast<std::size_t>(it - vals.begin())]);
      }
      return std::min(1.0, best);
    }
  }
  return 0.0;
}

double DecayProfile::inverse(double y) const {
  if (std::isnan(y)) throw InvalidArgument("level is NaN");
  if (y <= 0.0) return kInf;
  if (y > 1.0 + kWeightTolerance) throw InvalidArgument("level must be <= 1");
  switch (kind_) {
    case Kind::gaussian:
      if (y >= 0.5) return 0.0;
      return std::max(0.0, scale_ * detail::normal_quantile(1.0 - y));
    case Kind::uniform_ball: {
      if (y >= 0.5) return 0.0;
      double lo = 0.0, hi = scale_;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (eval(mid) < y ? hi : lo) = mid;
      }
      return hi;
    }
    case Kind::piecewise:
      for (const auto& [t, v] : steps_)
        if (v < y) return t;
      return kInf;
    case Kind::empirical: {
      double best = 0.0;
      for (std::size_t k = 0; k < proj_.size(); ++k) {
        const auto& above = above_[k];
        // Largest j with above[j] < y; the tail drops below y from proj[j] on.
        std::size_t j = 0;
        while (j + 1 < above.size() && above[j + 1] < y) ++j;
        if (j < proj_[k].size()) best = std::max(best, proj_[k][j]);
      }
      return best;
    }
  }
  return kInf;
}

std::string_view to_string(DecayProfile::Kind kind) {
  switch (kind) {
    case DecayProfile::Kind::gaussian: return "gaussian";
    case DecayProfile::Kind::uniform_ball: return "ball";
    case DecayProfile::Kind::piecewise: return "piecewise";
    case DecayProfile::Kind::empirical: return "empirical";
  }
  return "unknown";
}

std::string DecayProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind_);
  switch (kind_) {
    case Kind::gaussian: os << ':' << scale_; break;
    case Kind::uniform_ball: os << ':' << scale_; break;
    case Kind::piecewise:
      os << ':';
      for (std::size_t i = 0; i < steps_.size(); ++i)
        os << (i ? "," : "") << steps_[i].first << ':' << steps_[i].second;
      break;
    case Kind::empirical: os << ':' << proj_.size(); break;
  }
  return os.str();
}

double decay_eval(const DecayProfile& h, double t) { return h.eval(t); }
double generalized_inverse(const DecayProfile& h, double y) { return h.inverse(y); }

// ---------------------------------------------------------------------------

std::string_view to_string(BoundModel model) {
  switch (model) {
    case BoundModel::additive: return "additive";
    case BoundModel::tv: return "tv";
    case BoundModel::projection: return "projection";
  }
  return "unknown";
}

BoundModel parse_bound_model(std::string_view name) {
  if (name == "additive") return BoundModel::additive;
  if (name == "tv") return BoundModel::tv;
  if (name == "projection") return BoundModel::projection;
  throw ConfigError("unknown bound model '" + std::string(name) + "'");
}

namespace {

void check_eps(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw InvalidArgument("eps must lie in [0, 1)");
}

double inverse_at(const DecayProfile& h, double level) {
  if (!(level > kLevelFloor)) return kInf;
  return h.inverse(std::min(level, 1.0));
}

}  // namespace

BoundReport bias_bound_additive(const DecayProfile& h, double eps, std::size_t d) {
  check_eps(eps);
  if (d == 0) throw InvalidArgument("d must be >= 1");
  const double h0 = h.at_zero();
  double level = ((1.0 - eps) * (1.0 - h0) - eps) / (1.0 - eps);
  if (d == 1) level = std::max(level, (0.5 - eps) / (1.0 - eps));
  if (d == 2) level = std::max(level, (1.0 / 3.0 - eps) / (1.0 - eps));
  return {BoundModel::additive, d, eps, inverse_at(h, level)};
}

BoundReport bias_bound_tv(const DecayProfile& h, double eps, std::size_t d) {
  check_eps(eps);
  if (d == 0) throw InvalidArgument("d must be >= 1");
  const double h0 = h.at_zero();
  double level = 1.0 - h0 - 2.0 * eps;
  if (d == 1) level = std::max(level, 0.5 - eps);
  if (d == 2) level = std::max(level, 1.0 / 3.0 - eps);
  return {BoundModel::tv, d, eps, inverse_at(h, level)};
}

BoundReport bias_bound_projection(const DecayProfile& h, double eps, std::size_t d) {
  check_eps(eps);
  const double value = eps < 0.5 ? 2.0 * inverse_at(h, 0.5 - eps) : kInf;
  return {BoundModel::projection, d, eps, value};
}

BoundReport bias_bound(BoundModel model, const DecayProfile& h, double eps, std::size_t d) {
  switch (model) {
    case BoundModel::additive: return bias_bound_additive(h, eps, d);
    case BoundModel::tv: return bias_bound_tv(h, eps, d);
    case BoundModel::projection: return bias_bound_projection(h, eps, d);
  }
  throw InvalidArgument("unknown bound model");
}

double epsilon_tilde(double eps, std::size_t n, std::size_t d, double delta, double c_vc) {
  check_eps(eps);
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (!(c_vc >= 0.0) || !std::isfinite(c_vc)) throw InvalidArgument("c_vc must be >= 0");
  const double nn = static_cast<double>(n);
  const double log_inv = std::log(1.0 / delta);
  const double root = std::sqrt(eps) + std::sqrt(log_inv / (2.0 * nn));
  const double value =
      root * root + c_vc * std::sqrt((static_cast<double>(d) + 1.0 + log_inv) / nn);
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace tukey
