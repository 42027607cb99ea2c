#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "eqlearn/core/types.hpp"

namespace eqlearn::harness {

// One trial of an experiment; the CSV row schema.
struct RunRecord {
  std::size_t trial = 0;
  std::string domain;
  int n = 0;
  double N = 0.0;  // size of the initial candidate set
  double p = 1.0;
  double delta = 0.0;
  std::string noise_model;
  std::size_t queries = 0;
  bool success = false;
  double theoretical_bound = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline constexpr const char* kCsvHeader = "trial,domain,n,N,p,delta,noise_model,queries,success,theoretical_bound,seed";

// Integers print without a fraction; everything else with 12 significant
// digits, which is stable across runs and platforms with IEEE doubles.
inline std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
    std::ostringstream o;
    o << static_cast<long long>(v);
    return o.str();
  }
  std::ostringstream o;
  o << std::setprecision(12) << v;
  return o.str();
}

inline std::string csv_row(const RunRecord& r) {
  std::ostringstream o;
  o << r.trial << ',' << r.domain << ',' << r.n << ',' << format_number(r.N) << ',' << format_number(r.p) << ','
    << format_number(r.delta) << ',' << r.noise_model << ',' << r.queries << ',' << (r.success ? 1 : 0) << ','
    << format_number(r.theoretical_bound) << ',' << r.seed;
  return o.str();
}

inline void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const RunRecord& r : records) out << csv_row(r) << '\n';
}

inline void emit_csv(const std::vector<RunRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write CSV to '" + path + "'");
  write_csv(out, records);
  if (!out) throw ConfigError("failed while writing CSV to '" + path + "'");
}

inline std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ConfigError("CSV: missing or unexpected header");
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 11) throw ConfigError("CSV: expected 11 fields");
    RunRecord r;
    r.trial = std::stoull(f[0]);
    r.domain = f[1];
    r.n = std::stoi(f[2]);
    r.N = std::stod(f[3]);
    r.p = std::stod(f[4]);
    r.delta = std::stod(f[5]);
    r.noise_model = f[6];
    r.queries = std::stoull(f[7]);
    r.success = f[8] == "1";
    r.theoretical_bound = std::stod(f[9]);
    r.seed = std::stoull(f[10]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eqlearn::harness
