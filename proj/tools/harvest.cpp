// harvest: single evaluations, parameter sweeps and the theorem-verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 config error, 3 nonconvergence,
// 4 sweep finished with nonconverged rows, 5 I/O error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "harvest/engine.hpp"
#include "harvest/io.hpp"
#include "harvest/verify.hpp"

namespace {

using namespace harvest;

enum Exit { Ok = 0, VerifyFailed = 1, BadConfig = 2, NoConvergence = 3, PartialSweep = 4, IoFailure = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string route = "reduced";
  std::string suite = "All";
};

unsigned thread_count(const Args& a) {
  if (a.threads) return std::max(1u, *a.threads);
  if (const char* env = std::getenv("HARVEST_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

Route parse_route(const std::string& s) { return s == "direct" ? Route::Direct : Route::Reduced; }

// Emits to --out, then the config's output path, then stdout.
void emit(const std::string& text, const std::string& flag_path, const std::optional<std::string>& cfg_path) {
  const std::string path = !flag_path.empty() ? flag_path : cfg_path.value_or("");
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

io::OutputFormat pick_format(const Args& a, const io::RunConfig& rc, io::OutputFormat fallback) {
  if (a.format == "csv") return io::OutputFormat::Csv;
  if (a.format == "json") return io::OutputFormat::Json;
  return rc.format.value_or(fallback);
}

std::vector<CausalClass> row_classes(const io::RunConfig& rc, const std::vector<engine::SweepPoint>& rows) {
  std::vector<CausalClass> out;
  for (const auto& r : rows) {
    try {
      out.push_back(engine::detail::classify(engine::with_axis(rc.pair, rc.sweep->axis, r.axis_value)));
    } catch (const std::exception&) {
      out.push_back(CausalClass::Unclassified);
    }
  }
  return out;
}

int cmd_compute(const Args& a) {
  auto rc = io::load_config(a.config);
  if (a.seed) rc.quadrature.seed = *a.seed;
  const auto r = engine::compute(rc.pair, rc.quadrature, parse_route(a.route));
  std::ostringstream os;
  if (pick_format(a, rc, io::OutputFormat::Json) == io::OutputFormat::Csv) {
    engine::SweepPoint pt;
    pt.axis_value = std::nan("");
    pt.result = r;
    io::write_csv(os, {pt}, {r.causal});
  } else {
    os << io::to_json(r).dump(2) << '\n';
  }
  emit(os.str(), a.out, rc.output_path);
  return Ok;
}

int cmd_sweep(const Args& a) {
  auto rc = io::load_config(a.config);
  if (!rc.sweep) throw ConfigError("config has no sweep block");
  if (a.seed) rc.quadrature.seed = *a.seed;
  const auto rows = engine::sweep(rc.pair, rc.sweep->axis, rc.sweep->grid, rc.quadrature, parse_route(a.route),
                                  thread_count(a));
  std::ostringstream os;
  if (pick_format(a, rc, io::OutputFormat::Csv) == io::OutputFormat::Csv) {
    io::write_csv(os, rows, row_classes(rc, rows));
  } else {
    io::json arr = io::json::array();
    for (const auto& row : rows) {
      io::json j = row.result ? io::to_json(*row.result) : io::json::object();
      j["axis_value"] = row.axis_value;
      j["status"] = row.result ? "ok" : "nonconverged";
      if (!row.result) j["error"] = row.error;
      arr.push_back(j);
    }
    os << arr.dump(2) << '\n';
  }
  emit(os.str(), a.out, rc.output_path);
  bool all_ok = true;
  for (const auto& row : rows) {
    if (!row.result) {
      all_ok = false;
      std::cerr << "row " << row.axis_value << ": " << row.error << '\n';
    }
  }
  return all_ok ? Ok : PartialSweep;
}

int cmd_verify(const Args& a) {
  static const std::pair<const char*, verify::Suite> names[] = {
      {"NonOverlap", verify::Suite::NonOverlap}, {"OverlapSpacelike", verify::Suite::OverlapSpacelike},
      {"Delta", verify::Suite::Delta},           {"Identities", verify::Suite::Identities},
      {"Regularizations", verify::Suite::Regularizations}, {"EM", verify::Suite::EM},
      {"All", verify::Suite::All}};
  std::optional<verify::Suite> suite;
  for (const auto& [n, s] : names) {
    if (a.suite == n) suite = s;
  }
  if (!suite) throw ConfigError("unknown suite '" + a.suite + "'");
  verify::Options o;
  if (a.seed) o.seed = *a.seed;
  o.threads = thread_count(a);
  const auto checks = verify::run(*suite, o);
  std::size_t passed = 0;
  std::ostringstream os;
  for (const auto& c : checks) {
    passed += c.pass;
    char t[32];
    std::snprintf(t, sizeof t, "%8.2fs", c.seconds);
    os << (c.pass ? "PASS  " : "FAIL  ") << t << "  " << c.name << "  [" << c.detail << "]\n";
  }
  os << (passed == checks.size() ? "PASS " : "FAIL ") << passed << '/' << checks.size() << '\n';
  emit(os.str(), a.out, std::nullopt);
  return passed == checks.size() ? Ok : VerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement harvesting of Unruh-DeWitt detector pairs"};
  app.require_subcommand(1);
  Args a;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", a.out, "output file (default: config output.path, else stdout)");
    sub->add_option("--seed", a.seed, "random seed");
    sub->add_option("--threads", a.threads, "worker threads (overrides HARVEST_THREADS)")->check(CLI::PositiveNumber);
  };
  auto* compute = app.add_subcommand("compute", "evaluate L, M and N2 for one configuration");
  auto* sweep = app.add_subcommand("sweep", "evaluate a configuration over a sweep grid");
  auto* verify = app.add_subcommand("verify", "run a property suite");
  for (auto* sub : {compute, sweep}) {
    sub->add_option("--config", a.config, "JSON configuration file")->required();
    sub->add_option("--format", a.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--route", a.route, "angular integration route")->check(CLI::IsMember({"reduced", "direct"}));
    common(sub);
  }
  verify->add_option("suite,--suite", a.suite, "NonOverlap, OverlapSpacelike, Delta, Identities, Regularizations, EM or All");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return BadConfig;
  }

  try {
    if (*compute) return cmd_compute(a);
    if (*sweep) return cmd_sweep(a);
    return cmd_verify(a);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return IoFailure;
  } catch (const Divergence& e) {
    std::cerr << "divergence: " << e.what() << '\n';
    return NoConvergence;
  } catch (const NonConvergence& e) {
    std::cerr << "nonconvergence: " << e.what() << '\n';
    return NoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return BadConfig;
  }
}
