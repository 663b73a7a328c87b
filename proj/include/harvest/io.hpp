#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "harvest/engine.hpp"
#include "harvest/errors.hpp"
#include "harvest/profiles.hpp"

namespace harvest::io {

using json = nlohmann::json;

enum class OutputFormat { Csv, Json };

struct SweepSpec {
  engine::SweepAxis axis = engine::SweepAxis::Separation;
  std::vector<double> grid;
};

struct RunConfig {
  PairConfig pair;
  QuadratureSettings quadrature;
  std::optional<SweepSpec> sweep;
  std::optional<std::string> output_path;
  std::optional<OutputFormat> format;
};

namespace detail {

inline void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

inline double real(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError("'" + key + "' must be finite");
  return v;
}

inline std::uint64_t count(const json& j, const std::string& key) {
  if (!j.is_number_unsigned()) throw ConfigError("'" + key + "' must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline std::string text(const json& j, const std::string& key) {
  if (!j.is_string()) throw ConfigError("'" + key + "' must be a string");
  return j.get<std::string>();
}

template <class E>
E pick(const std::string& s, const std::string& key, std::initializer_list<std::pair<const char*, E>> names) {
  for (const auto& [n, e] : names) {
    if (s == n) return e;
  }
  throw ConfigError("unrecognized value '" + s + "' for '" + key + "'");
}

inline SwitchingFamily switching_family(const std::string& s) {
  return pick<SwitchingFamily>(s, "switching.family",
                               {{"TopHat", SwitchingFamily::TopHat},
                                {"CosineBump", SwitchingFamily::CosineBump},
                                {"GaussianRegDelta", SwitchingFamily::GaussianRegDelta},
                                {"TopHatRegDelta", SwitchingFamily::TopHatRegDelta},
                                {"DeltaIdeal", SwitchingFamily::DeltaIdeal}});
}

inline SmearingFamily smearing_family(const std::string& s) {
  return pick<SmearingFamily>(s, "smearing.family",
                              {{"PointLike", SmearingFamily::PointLike},
                               {"GaussianBall", SmearingFamily::GaussianBall},
                               {"TopHatBall", SmearingFamily::TopHatBall},
                               {"Hydrogen2s2p", SmearingFamily::Hydrogen2s2p}});
}

inline engine::SweepAxis sweep_axis(const std::string& s) {
  return pick<engine::SweepAxis>(s, "sweep.axis",
                                 {{"Gap", engine::SweepAxis::Gap},
                                  {"Separation", engine::SweepAxis::Separation},
                                  {"Delay", engine::SweepAxis::Delay},
                                  {"Angle", engine::SweepAxis::Angle}});
}

inline OutputFormat output_format(const std::string& s) {
  return pick<OutputFormat>(s, "output.format", {{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}});
}

}  // namespace detail

// Strict schema: every key is optional except dimension, switching and smearing; unknown keys are errors.
inline RunConfig parse_config(const json& j) {
  using namespace detail;
  check_keys(j, "config",
             {"dimension", "gap", "coupling", "separation", "delay", "field", "angle", "em_coupling", "switching",
              "smearing", "quadrature", "sweep", "output"});
  for (const char* req : {"dimension", "switching", "smearing"}) {
    if (!j.contains(req)) throw ConfigError(std::string("missing required key '") + req + "'");
  }
  RunConfig rc;
  PairConfig& p = rc.pair;
  if (!j["dimension"].is_number_integer()) throw ConfigError("'dimension' must be an integer");
  const int n = j["dimension"].get<int>();
  try {
    p.dim = SphereDim(n);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (j.contains("gap")) p.gap = real(j["gap"], "gap");
  if (j.contains("coupling")) p.coupling = real(j["coupling"], "coupling");
  if (j.contains("separation")) p.separation = real(j["separation"], "separation");
  if (j.contains("delay")) p.delay = real(j["delay"], "delay");
  if (j.contains("angle")) p.angle = real(j["angle"], "angle");
  if (j.contains("em_coupling")) p.em_coupling = real(j["em_coupling"], "em_coupling");
  if (j.contains("field")) {
    p.field = pick<FieldModel>(text(j["field"], "field"), "field",
                               {{"Scalar", FieldModel::Scalar}, {"EM2s2p", FieldModel::EM2s2p}});
  }

  const json& sw = j["switching"];
  check_keys(sw, "switching", {"family", "duration", "start", "strength", "regulator"});
  if (!sw.contains("family")) throw ConfigError("missing required key 'switching.family'");
  p.switching.family = switching_family(text(sw["family"], "switching.family"));
  if (sw.contains("duration")) p.switching.duration = real(sw["duration"], "switching.duration");
  if (sw.contains("start")) p.switching.start = real(sw["start"], "switching.start");
  if (sw.contains("strength")) p.switching.strength = real(sw["strength"], "switching.strength");
  if (sw.contains("regulator")) p.switching.regulator = real(sw["regulator"], "switching.regulator");

  const json& sm = j["smearing"];
  check_keys(sm, "smearing", {"family", "scale"});
  if (!sm.contains("family")) throw ConfigError("missing required key 'smearing.family'");
  p.smearing.family = smearing_family(text(sm["family"], "smearing.family"));
  if (sm.contains("scale")) p.smearing.scale = real(sm["scale"], "smearing.scale");
  p.smearing.dimension = n;

  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    check_keys(q, "quadrature", {"rel_tol", "abs_tol", "cutoff", "max_subdivisions", "mc_samples", "seed"});
    QuadratureSettings& s = rc.quadrature;
    if (q.contains("rel_tol")) s.rel_tol = real(q["rel_tol"], "quadrature.rel_tol");
    if (q.contains("abs_tol")) s.abs_tol = real(q["abs_tol"], "quadrature.abs_tol");
    if (q.contains("max_subdivisions")) s.max_subdivisions = count(q["max_subdivisions"], "quadrature.max_subdivisions");
    if (q.contains("mc_samples")) s.mc_samples = count(q["mc_samples"], "quadrature.mc_samples");
    if (q.contains("seed")) s.seed = count(q["seed"], "quadrature.seed");
    if (q.contains("cutoff")) {
      const json& c = q["cutoff"];
      check_keys(c, "quadrature.cutoff", {"policy", "tail_frac", "k_max"});
      const std::string policy = c.contains("policy") ? text(c["policy"], "quadrature.cutoff.policy") : "AdaptiveTail";
      if (policy == "AdaptiveTail") {
        if (c.contains("k_max")) throw ConfigError("'k_max' is only valid with the FixedCutoff policy");
        s.cutoff = CutoffPolicy::adaptive(c.contains("tail_frac") ? real(c["tail_frac"], "tail_frac") : 1e-10);
      } else if (policy == "FixedCutoff") {
        if (c.contains("tail_frac")) throw ConfigError("'tail_frac' is only valid with the AdaptiveTail policy");
        if (!c.contains("k_max")) throw ConfigError("FixedCutoff needs 'k_max'");
        s.cutoff = CutoffPolicy::fixed(real(c["k_max"], "k_max"));
      } else {
        throw ConfigError("unrecognized cutoff policy '" + policy + "'");
      }
    }
  }

  if (j.contains("sweep")) {
    const json& sw2 = j["sweep"];
    check_keys(sw2, "sweep", {"axis", "grid", "start", "stop", "count"});
    SweepSpec spec;
    if (!sw2.contains("axis")) throw ConfigError("missing required key 'sweep.axis'");
    spec.axis = sweep_axis(text(sw2["axis"], "sweep.axis"));
    const bool explicit_grid = sw2.contains("grid");
    const bool ranged = sw2.contains("start") || sw2.contains("stop") || sw2.contains("count");
    if (explicit_grid == ranged) throw ConfigError("sweep needs either 'grid' or 'start'/'stop'/'count'");
    if (explicit_grid) {
      if (!sw2["grid"].is_array()) throw ConfigError("'sweep.grid' must be an array");
      for (const auto& v : sw2["grid"]) spec.grid.push_back(real(v, "sweep.grid"));
    } else {
      for (const char* req : {"start", "stop", "count"}) {
        if (!sw2.contains(req)) throw ConfigError(std::string("missing required key 'sweep.") + req + "'");
      }
      const double a = real(sw2["start"], "sweep.start"), b = real(sw2["stop"], "sweep.stop");
      const std::uint64_t m = count(sw2["count"], "sweep.count");
      if (m < 1 || m > 100000) throw ConfigError("'sweep.count' must lie in [1, 100000]");
      for (std::uint64_t i = 0; i < m; ++i) spec.grid.push_back(m == 1 ? a : a + (b - a) * i / (m - 1.0));
    }
    if (spec.grid.empty()) throw ConfigError("sweep grid must not be empty");
    for (std::size_t i = 1; i < spec.grid.size(); ++i) {
      if (!(spec.grid[i] > spec.grid[i - 1])) throw ConfigError("sweep grid must be strictly increasing");
    }
    rc.sweep = spec;
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "output", {"path", "format"});
    if (o.contains("path")) rc.output_path = text(o["path"], "output.path");
    if (o.contains("format")) rc.format = output_format(text(o["format"], "output.format"));
  }

  rc.pair.validate();
  rc.quadrature.validate();
  return rc;
}

inline RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return parse_config(j);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

inline json to_json(const HarvestResult& r) {
  json j;
  j["L"] = r.L;
  j["ReM"] = r.M.real();
  j["ImM"] = r.M.imag();
  j["absM"] = std::abs(r.M);
  j["N2"] = r.N2;
  j["L_err"] = r.L_error;
  j["M_err"] = r.M_error;
  j["causal"] = to_string(r.causal);
  j["route"] = to_string(r.route);
  return j;
}

inline const char* csv_header = "axis_value,L,ReM,ImM,absM,N2,L_err,M_err,causal,status";

inline std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const std::vector<engine::SweepPoint>& rows,
                      const std::vector<CausalClass>& causal) {
  os << csv_header << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    os << fmt17(row.axis_value) << ',';
    if (row.result) {
      const auto& r = *row.result;
      const double absM = std::abs(r.M);
      os << fmt17(r.L) << ',' << fmt17(r.M.real()) << ',' << fmt17(r.M.imag()) << ',' << fmt17(absM) << ','
         << fmt17(std::max(0.0, absM - r.L)) << ',' << fmt17(r.L_error) << ',' << fmt17(r.M_error) << ','
         << to_string(r.causal) << ",ok\n";
    } else {
      const double nan = std::nan("");
      for (int k = 0; k < 7; ++k) os << fmt17(nan) << ',';
      os << to_string(causal[i]) << ",nonconverged\n";
    }
  }
}

struct CsvRow {
  double axis_value, L, ReM, ImM, absM, N2, L_err, M_err;
  std::string causal, status;
};

inline std::vector<CsvRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != csv_header) throw ConfigError("CSV header mismatch");
  std::vector<CsvRow> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 10) throw ConfigError("CSV row has " + std::to_string(f.size()) + " fields");
    CsvRow r;
    double* nums[] = {&r.axis_value, &r.L, &r.ReM, &r.ImM, &r.absM, &r.N2, &r.L_err, &r.M_err};
    for (int k = 0; k < 8; ++k) *nums[k] = std::strtod(f[k].c_str(), nullptr);
    r.causal = f[8];
    r.status = f[9];
    out.push_back(r);
  }
  return out;
}

}  // namespace harvest::io
