#pragma once

#include <string>
#include <vector>

#include "dmnls/diagnostics.hpp"
#include "dmnls/dispersion_map.hpp"
#include "dmnls/experiments.hpp"
#include "dmnls/field.hpp"

namespace dmnls {

/// Field snapshot, little-endian binary: magic "DMNLS1", grid kind u8
/// (0 torus, 1 radial), M u64, L or R_max f64, t f64, then the stored
/// values as (re, im) f64 pairs.
void write_snapshot(const ComplexField& field, double t,
                    const std::string& path);
std::pair<ComplexField, double> read_snapshot(const std::string& path);

/// CSV export of a field: columns r_or_x, re, im.
void write_field_csv(const ComplexField& field, const std::string& path);

/// Diagnostics stream with the pinned header
/// t,mass,E_plus,E_minus,grad_sq,quartic,variance,momentum,virial_rhs.
void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const std::string& path);

/// Cover reports: columns n, k, piece_index, start, end, bound.
void write_covers_csv(const std::vector<CoverReport>& covers,
                      const std::string& path);

/// Plot-ready data: one period of gamma as (t, gamma), and the accumulated
/// dispersion as (t, Gamma(t,0), <gamma> t) over [0, t_max].
void export_gamma_csv(const DispersionMap& map, const std::string& path,
                      std::size_t samples_per_period = 256);
void export_big_gamma_csv(const DispersionMap& map, double t_max,
                          const std::string& path,
                          std::size_t samples = 512);

/// Machine-readable report:
/// {spec, verdict, measurements: [{name, value, tolerance, pass}],
///  runtime_seconds, seed}.
std::string report_to_json(const ResultReport& report);
void write_report(const ResultReport& report, const std::string& path);

}  // namespace dmnls
