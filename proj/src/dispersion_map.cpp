#include "dmnls/dispersion_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dmnls {

namespace {
constexpr double kPeriodTol = 1e-12;
}

DispersionMap::DispersionMap(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw std::invalid_argument("dispersion map needs at least one segment");
  }
  double total = 0.0;
  for (const Segment& s : segments_) {
    if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
      throw std::invalid_argument("segment duration must be positive");
    }
    if (!std::isfinite(s.value) || s.value == 0.0) {
      throw std::invalid_argument("segment value must be finite and nonzero");
    }
    total += s.duration;
  }
  if (std::abs(total - 1.0) > kPeriodTol) {
    throw std::invalid_argument("segment durations must sum to the unit period");
  }

  breakpoints_.reserve(segments_.size() + 1);
  prefix_integrals_.reserve(segments_.size() + 1);
  breakpoints_.push_back(0.0);
  prefix_integrals_.push_back(0.0);
  double b = 0.0;
  double integral = 0.0;
  for (const Segment& s : segments_) {
    b += s.duration;
    integral += s.duration * s.value;
    breakpoints_.push_back(b);
    prefix_integrals_.push_back(integral);
    sup_norm_ = std::max(sup_norm_, std::abs(s.value));
    inv_sup_norm_ = std::max(inv_sup_norm_, 1.0 / std::abs(s.value));
  }
  breakpoints_.back() = 1.0;  // pin the period boundary exactly
  average_ = integral;

  for (std::size_t k = 0; k + 1 < segments_.size(); ++k) {
    if (segments_[k].value != segments_[k + 1].value) ++jump_count_;
  }
  if (segments_.back().value != segments_.front().value) ++jump_count_;
}

DispersionMap DispersionMap::two_step(double gamma_plus, double gamma_minus,
                                      double t_plus) {
  if (!(gamma_plus > 0.0) || !(gamma_minus > 0.0)) {
    throw std::invalid_argument("two_step requires gamma_plus, gamma_minus > 0");
  }
  if (!(t_plus > 0.0) || !(t_plus < 1.0)) {
    throw std::invalid_argument("two_step requires 0 < t_plus < 1");
  }
  return DispersionMap({{t_plus, gamma_plus}, {1.0 - t_plus, -gamma_minus}});
}

DispersionMap DispersionMap::constant(double value) {
  return DispersionMap({{1.0, value}});
}

std::size_t DispersionMap::segment_index(double frac) const {
  // first breakpoint strictly greater than frac, minus one
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), frac);
  std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin());
  if (k == 0) return 0;
  if (k > segments_.size()) return segments_.size() - 1;
  return k - 1;
}

double DispersionMap::value_at(double t) const {
  double frac = t - std::floor(t);
  if (frac >= 1.0) frac = 0.0;  // guard against rounding at the boundary
  return segments_[segment_index(frac)].value;
}

double DispersionMap::partial_integral(double f) const {
  if (f <= 0.0) return 0.0;
  if (f >= 1.0) return average_;
  std::size_t k = segment_index(f);
  return prefix_integrals_[k] + (f - breakpoints_[k]) * segments_[k].value;
}

double DispersionMap::accumulated(double t, double s) const {
  auto gamma_from_zero = [this](double x) {
    double n = std::floor(x);
    return n * average_ + partial_integral(x - n);
  };
  return gamma_from_zero(t) - gamma_from_zero(s);
}

double DispersionMap::drift_deviation(double t) const {
  return std::abs(accumulated(t, 0.0) - t * average_);
}

double DispersionMap::separation_time(double delta) const {
  Admissibility adm = admissibility();
  if (!adm.ok) {
    throw std::domain_error("not admissible: " + adm.reason);
  }
  return (delta + 4.0 * sup_norm_) / std::abs(average_);
}

Admissibility DispersionMap::admissibility(double zero_average_tol) const {
  // Periodicity, boundedness, bounded inverse, and finitely many jumps are
  // all guaranteed by construction; only the average can fail.
  if (std::abs(average_) <= zero_average_tol) {
    return {false, "zero average"};
  }
  return {true, ""};
}

double DispersionMap::covering_bound() const {
  Admissibility adm = admissibility();
  if (!adm.ok) {
    throw std::domain_error("not admissible: " + adm.reason);
  }
  return 1.0 + jump_count_ *
                   (1.0 + (1.0 + 4.0 * sup_norm_) / std::abs(average_));
}

double DispersionMap::strichartz_constant(double c_str, double q) const {
  if (!(c_str > 0.0)) {
    throw std::invalid_argument("c_str must be positive");
  }
  if (!(q >= 2.0)) {
    throw std::invalid_argument("q must lie in [2, infinity]");
  }
  const double k_gamma = covering_bound();  // throws if not admissible
  if (std::isinf(q)) return c_str;
  return c_str * std::pow(inv_sup_norm_ * k_gamma, 1.0 / q);
}

MonotonePartition DispersionMap::monotone_partition(double t0, double t1) const {
  if (!(t1 > t0)) {
    throw std::invalid_argument("monotone_partition needs a nonempty window");
  }
  MonotonePartition part;
  double t = t0;
  while (t < t1) {
    double bp = next_breakpoint_after(t);
    double end = std::min(bp, t1);
    // sample at the midpoint; the endpoints sit on breakpoints where a
    // one-ulp rounding of t would select the neighboring segment
    bool inc = value_at(0.5 * (t + end)) > 0.0;
    if (!part.intervals.empty() && part.intervals.back().increasing == inc) {
      part.intervals.back().end = end;
    } else {
      part.intervals.push_back({t, end, inc});
    }
    t = end;
  }
  return part;
}

double DispersionMap::next_breakpoint_after(double t) const {
  const double eps = 1e-12 * std::max(1.0, std::abs(t));
  double n = std::floor(t);
  // scan this period and the next; a breakpoint always exists there
  for (int period = 0; period < 2; ++period) {
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
      double candidate = n + period + breakpoints_[k];
      if (candidate > t + eps) return candidate;
    }
  }
  return n + 2.0;  // unreachable
}

CoverReport DispersionMap::cover_intervals(int n, double horizon) const {
  const double bound = covering_bound();  // throws if not admissible
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("horizon must be positive");
  }
  const double needed =
      (std::abs(static_cast<double>(n)) + 1.0 + 2.0 * sup_norm_) /
      std::abs(average_);
  if (horizon < needed) {
    throw std::domain_error("horizon does not contain preimage");
  }

  // Scan forward from 0 when n and <gamma> agree in sign (with n >= 0
  // counting as positive), backward otherwise; the preimage of [n, n+1)
  // lies on that side up to a bounded overlap of the origin.
  const bool forward = (n >= 0) == (average_ > 0.0);
  const double lo = forward ? 0.0 : -horizon;
  const double hi = forward ? horizon : 0.0;
  const double band_lo = static_cast<double>(n);
  const double band_hi = static_cast<double>(n) + 1.0;

  CoverReport report;
  report.n = n;
  report.bound = bound;

  // Half-open in-band subinterval of one linear piece [a,b) with slope v>0.
  // Returns whether the subinterval reaches b with Gamma still below the
  // band top (so a following increasing piece continues the same maximal
  // interval).
  bool open_piece = false;  // last emitted piece may continue
  double period_min = 0.0, period_max = 0.0;
  for (std::size_t k = 0; k <= segments_.size(); ++k) {
    double p = prefix_integrals_[k];
    period_min = std::min(period_min, p);
    period_max = std::max(period_max, p);
  }

  double t = lo;
  // Gamma is carried across contiguous pieces so band crossings are
  // bit-consistent between a piece end and the next piece start.
  double gamma_here = 0.0;
  bool have_gamma = false;
  while (t < hi) {
    // Skip whole periods that cannot meet the band.
    double pstart = std::floor(t);
    double base = pstart * average_;
    if (base + period_max < band_lo || base + period_min >= band_hi) {
      double skip_to = pstart + 1.0;
      if (skip_to <= t) skip_to = t + 1.0;  // safety against rounding
      t = std::min(hi, skip_to);
      open_piece = false;
      have_gamma = false;
      continue;
    }
    double b = std::min(hi, next_breakpoint_after(t));
    double v = value_at(0.5 * (t + b));  // midpoint, robust at breakpoints
    double ga = have_gamma ? gamma_here : accumulated(t, 0.0);
    double gb = ga + (b - t) * v;
    if (v > 0.0) {
      // intersect increasing line with [band_lo, band_hi)
      double enter = (ga >= band_lo) ? t : t + (band_lo - ga) / v;
      double exit = (gb < band_hi) ? b : t + (band_hi - ga) / v;
      enter = std::max(enter, t);
      exit = std::min(exit, b);
      if (exit - enter > 1e-13) {
        if (open_piece && !report.pieces.empty() &&
            enter <= report.pieces.back().second + 1e-12 &&
            enter >= report.pieces.back().second - 1e-12) {
          report.pieces.back().second = exit;
        } else {
          report.pieces.emplace_back(enter, exit);
        }
        open_piece = (exit == b) && (gb < band_hi) && (gb >= band_lo);
      } else {
        open_piece = false;
      }
    } else {
      open_piece = false;
    }
    gamma_here = gb;
    have_gamma = true;
    t = b;
  }

  report.count = static_cast<int>(report.pieces.size());
  if (report.count > bound) {
    throw std::logic_error("covering bound violated");
  }
  return report;
}

}  // namespace dmnls
