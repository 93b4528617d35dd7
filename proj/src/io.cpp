#include "dmnls/io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "dmnls/config.hpp"

namespace dmnls {

using nlohmann::json;

namespace {

constexpr char kMagic[6] = {'D', 'M', 'N', 'L', 'S', '1'};

void put_f64(std::ofstream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void put_u64(std::ofstream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

double get_f64(std::ifstream& in) {
  double v = 0.0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

std::uint64_t get_u64(std::ifstream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

}  // namespace

void write_snapshot(const ComplexField& field, double t,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open snapshot for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  if (field.is_torus()) {
    out.put(0);
    put_u64(out, field.torus().points);
    put_f64(out, field.torus().half_length);
  } else {
    out.put(1);
    put_u64(out, field.radial().points);
    put_f64(out, field.radial().r_max);
  }
  put_f64(out, t);
  for (const cdouble& z : field.values()) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
}

std::pair<ComplexField, double> read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot: " + path);
  char magic[6];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("bad snapshot magic in " + path);
  }
  int kind = in.get();
  std::uint64_t m = get_u64(in);
  double extent = get_f64(in);
  double t = get_f64(in);
  std::size_t count = kind == 0 ? m : m - 1;
  std::vector<cdouble> values(count);
  for (std::size_t j = 0; j < count; ++j) {
    double re = get_f64(in);
    double im = get_f64(in);
    values[j] = {re, im};
  }
  if (!in) throw std::runtime_error("truncated snapshot: " + path);
  if (kind == 0) {
    return {ComplexField(TorusGrid1D(extent, m), std::move(values)), t};
  }
  return {ComplexField(RadialGrid3D(extent, m), std::move(values)), t};
}

void write_field_csv(const ComplexField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open csv for writing: " + path);
  out.precision(17);
  out << "r_or_x,re,im\n";
  for (std::size_t j = 0; j < field.size(); ++j) {
    double coord = field.is_torus() ? field.torus().node(j)
                                    : field.radial().node(j);
    out << coord << "," << field.values()[j].real() << ","
        << field.values()[j].imag() << "\n";
  }
}

void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open csv for writing: " + path);
  out.precision(17);
  out << "t,mass,E_plus,E_minus,grad_sq,quartic,variance,momentum,virial_rhs\n";
  for (const DiagnosticsRecord& r : records) {
    out << r.t << "," << r.mass << "," << r.e_plus << "," << r.e_minus << ","
        << r.grad_sq << "," << r.quartic << "," << r.variance << ","
        << r.momentum << "," << r.virial_rhs << "\n";
  }
}

void write_covers_csv(const std::vector<CoverReport>& covers,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open csv for writing: " + path);
  out.precision(17);
  out << "n,k,piece_index,start,end,bound\n";
  for (const CoverReport& c : covers) {
    for (std::size_t i = 0; i < c.pieces.size(); ++i) {
      out << c.n << "," << c.count << "," << i << "," << c.pieces[i].first
          << "," << c.pieces[i].second << "," << c.bound << "\n";
    }
    if (c.pieces.empty()) {
      out << c.n << ",0,,,," << c.bound << "\n";
    }
  }
}

void export_gamma_csv(const DispersionMap& map, const std::string& path,
                      std::size_t samples_per_period) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open csv for writing: " + path);
  out.precision(17);
  out << "t,gamma\n";
  for (std::size_t j = 0; j <= samples_per_period; ++j) {
    double t = static_cast<double>(j) / static_cast<double>(samples_per_period);
    out << t << "," << map.value_at(t) << "\n";
  }
}

void export_big_gamma_csv(const DispersionMap& map, double t_max,
                          const std::string& path, std::size_t samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open csv for writing: " + path);
  out.precision(17);
  out << "t,Gamma,avg_line\n";
  for (std::size_t j = 0; j <= samples; ++j) {
    double t = t_max * static_cast<double>(j) / static_cast<double>(samples);
    out << t << "," << map.accumulated(t) << "," << map.average() * t << "\n";
  }
}

std::string report_to_json(const ResultReport& report) {
  json j;
  j["spec"] = json::parse(serialize_spec(report.spec));
  j["verdict"] = report.verdict;
  json ms = json::array();
  for (const Measurement& m : report.measurements) {
    ms.push_back(json{{"name", m.name},
                      {"value", m.value},
                      {"tolerance", m.tolerance},
                      {"pass", m.pass}});
  }
  j["measurements"] = ms;
  j["runtime_seconds"] = report.runtime_seconds;
  j["seed"] = report.seed;
  return j.dump(2);
}

void write_report(const ResultReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report for writing: " + path);
  out << report_to_json(report) << "\n";
}

}  // namespace dmnls
