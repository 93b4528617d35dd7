#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmnls/diagnostics.hpp"
#include "dmnls/dispersion_map.hpp"
#include "dmnls/field.hpp"
#include "dmnls/ground_state.hpp"
#include "dmnls/random.hpp"

namespace dmnls {

enum class ExperimentKind {
  strichartz,
  inhomogeneous,
  scattering,
  blowup,
  soliton,
  partition,
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct GridSpec {
  enum class Kind { torus, radial };
  Kind kind = Kind::torus;
  std::size_t points = 1024;
  double extent = 32.0;  // half-length L (torus) or R_max (radial)

  int dimension() const { return kind == Kind::torus ? 1 : 3; }
};

struct DatumSpec {
  // "gaussian": amplitude exp(-(x-center)^2 / (2 width^2) + i modulation x)
  // "ground_state": amplitude * R_+ sampled from the profile
  std::string family = "gaussian";
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;
  double modulation = 0.0;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::partition;
  DispersionMap map = DispersionMap::constant(1.0);
  GridSpec grid;
  DatumSpec datum;
  std::uint64_t seed = 0;
  double dt_max = 1e-3;

  // strichartz / inhomogeneous
  double q = 8.0;
  double r = 4.0;
  double t_window = 12.0;
  int ensemble = 50;
  double c_str = 0.0;  // 0 = calibrate on the constant-gamma baseline

  // scattering
  double eta = 0.05;
  double t_final = 64.0;
  int checkpoints = 8;

  // blowup / trapping
  double lambda = 0.0;          // 0 = auto (smallest power of two)
  double delta = 0.0;           // 0 = use the measured margin
  double h1_growth_factor = 1e3;  // detection threshold over the initial H1

  // partition
  int n_min = -10;
  int n_max = 10;
};

struct Measurement {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct ResultReport {
  ExperimentSpec spec;
  std::string verdict;  // pass | fail | blowup_detected | inconclusive
  std::vector<Measurement> measurements;
  std::vector<DiagnosticsRecord> diagnostics;
  std::vector<CoverReport> covers;          // partition sweeps
  std::optional<ComplexField> final_state;  // e.g. the scattering state u+
  double runtime_seconds = 0.0;
  std::uint64_t seed = 0;

  const Measurement* find(const std::string& name) const;
  bool succeeded() const {
    return verdict == "pass" || verdict == "blowup_detected";
  }
};

/// Linear-flow ensemble audit of the space-time bound against C(gamma).
ResultReport run_strichartz(const ExperimentSpec& spec);

/// Duhamel-integral audit for random forcings; reports the maximal
/// dual-norm ratio and its stability under doubled time resolution.
ResultReport run_inhomogeneous_audit(const ExperimentSpec& spec);

/// Small-data run; checks that back-propagated states form a Cauchy
/// sequence in H^1 and records the extrapolated scattering state.
ResultReport run_scattering(const ExperimentSpec& spec);

/// Rescaled virial blowup on the first focusing segment.
ResultReport run_blowup(const ExperimentSpec& spec,
                        const GroundStateProfile& q_profile);

/// Stationary-profile regression with step-halving convergence check.
ResultReport run_soliton(const ExperimentSpec& spec,
                         const GroundStateProfile& q_profile);

/// Covering-number sweep over a range of n.
ResultReport run_partition(const ExperimentSpec& spec);

/// Dispatch on spec.kind; the profile is required for blowup and soliton.
ResultReport run_experiment(const ExperimentSpec& spec,
                            const GroundStateProfile* q_profile = nullptr);

/// Gaussian wave packet with randomized width, position, and modulation.
ComplexField random_wave_packet(const TorusGrid1D& grid, Rng& rng);

}  // namespace dmnls
