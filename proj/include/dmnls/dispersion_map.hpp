#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dmnls {

/// One piece of a piecewise-constant dispersion map: a duration and the
/// constant value the map takes on it.
struct Segment {
  double duration = 0.0;
  double value = 0.0;
};

struct Admissibility {
  bool ok = false;
  std::string reason;  // names the first failing clause when !ok
};

/// A sub-interval of a query window on which the accumulated dispersion is
/// strictly monotone.
struct MonotoneInterval {
  double start = 0.0;
  double end = 0.0;
  bool increasing = false;
};

struct MonotonePartition {
  std::vector<MonotoneInterval> intervals;
};

/// Maximal intervals of the increasing set on which the accumulated
/// dispersion lies in [n, n+1), together with the uniform bound they are
/// checked against.
struct CoverReport {
  int n = 0;
  std::vector<std::pair<double, double>> pieces;  // half-open [start, end)
  int count = 0;                                  // K_n
  double bound = 0.0;                             // K_gamma
};

/// One-periodic piecewise-constant dispersion map gamma(t).
///
/// Immutable after construction.  The constructor enforces: all durations
/// positive and summing to one within 1e-12, all values finite and nonzero.
/// gamma is right-continuous at breakpoints; the value on [b_k, b_{k+1})
/// is segments[k].value.
class DispersionMap {
 public:
  explicit DispersionMap(std::vector<Segment> segments);

  /// Two-segment map: value gamma_plus on [0, t_plus), -gamma_minus on
  /// [t_plus, 1).  Both gamma_plus and gamma_minus must be positive.
  static DispersionMap two_step(double gamma_plus, double gamma_minus,
                                double t_plus);

  /// Constant map gamma == value.
  static DispersionMap constant(double value);

  const std::vector<Segment>& segments() const { return segments_; }

  /// gamma(t); total, one-periodic, right-continuous at breakpoints.
  double value_at(double t) const;

  /// <gamma> = integral of gamma over one period.
  double average() const { return average_; }

  /// sup |gamma|.
  double sup_norm() const { return sup_norm_; }

  /// sup |1/gamma| = 1 / min |gamma|.
  double inv_sup_norm() const { return inv_sup_norm_; }

  /// Number of jumps of gamma in [0,1], counting the wrap-around jump at
  /// the period boundary when the last and first values differ.
  int jump_count() const { return jump_count_; }

  /// Admissibility check: periodic and piecewise constant by construction,
  /// so the only live clause is |<gamma>| > tol (default 1e-12).
  Admissibility admissibility(double zero_average_tol = 1e-12) const;
  bool is_admissible(double zero_average_tol = 1e-12) const {
    return admissibility(zero_average_tol).ok;
  }

  /// Gamma(t, s) = integral of gamma from s to t, evaluated in closed form
  /// (whole periods times the average plus partial-segment sums).
  double accumulated(double t, double s = 0.0) const;

  /// |Gamma(t,0) - t <gamma>|; bounded by 2 sup|gamma| for any one-periodic
  /// map.
  double drift_deviation(double t) const;

  /// (delta + 4 sup|gamma|) / |<gamma>|.  Whenever |t2 - t1| exceeds this,
  /// |Gamma(t2) - Gamma(t1)| > delta.  Throws for zero-average maps.
  double separation_time(double delta) const;

  /// K_gamma = 1 + N_gamma * (1 + (1 + 4 sup|gamma|) / |<gamma>|), the
  /// uniform bound on the covering numbers K_n.  Throws if not admissible.
  double covering_bound() const;

  /// C(gamma) = c_str * sup|1/gamma|^{1/q} * K_gamma^{1/q}.  q may be
  /// infinity (exponent zero).  Throws if not admissible.
  double strichartz_constant(double c_str, double q) const;

  /// Tile (t0, t1) into maximal intervals of constant monotonicity of
  /// Gamma; adjacent same-direction segments are merged.
  MonotonePartition monotone_partition(double t0, double t1) const;

  /// Maximal intervals of { t in the increasing set : Gamma(t,0) in
  /// [n, n+1) }, scanned over the half-line [0, horizon) or (-horizon, 0]
  /// chosen by the signs of n and <gamma> so the preimage lies on the
  /// scanned side.  Throws if the horizon cannot contain the preimage.
  CoverReport cover_intervals(int n, double horizon) const;

  /// Smallest breakpoint of gamma strictly greater than t.
  double next_breakpoint_after(double t) const;

 private:
  std::vector<Segment> segments_;
  std::vector<double> breakpoints_;       // b_0 = 0 < ... < b_N = 1
  std::vector<double> prefix_integrals_;  // integral of gamma over [0, b_k]
  double average_ = 0.0;
  double sup_norm_ = 0.0;
  double inv_sup_norm_ = 0.0;
  int jump_count_ = 0;

  // integral of gamma over [0, f] for f in [0, 1]
  double partial_integral(double f) const;
  std::size_t segment_index(double frac) const;
};

}  // namespace dmnls
