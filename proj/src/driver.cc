#include "nash_sens/driver.h"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "nash_sens/catalog.h"
#include "nash_sens/equilibrium.h"
#include "nash_sens/errors.h"
#include "nash_sens/parallel.h"
#include "nash_sens/setlimits.h"

namespace nash_sens {

const char* ModeName(Mode mode) {
  switch (mode) {
    case Mode::kNash: return "nash";
    case Mode::kApprox: return "approx";
    case Mode::kSweep: return "sweep";
    case Mode::kLimits: return "limits";
    case Mode::kVerify: return "verify";
  }
  return "?";
}

Mode ParseMode(const std::string& name) {
  for (Mode m : {Mode::kNash, Mode::kApprox, Mode::kSweep, Mode::kLimits,
                 Mode::kVerify}) {
    if (name == ModeName(m)) return m;
  }
  throw ConfigError("config.mode: unknown mode '" + name + "'");
}

namespace {

enum class Kind { kString, kInt, kUInt, kReal, kEps, kRealList, kBool };

const std::map<std::string, Kind>& KeyKinds() {
  static const std::map<std::string, Kind> kinds = {
      {"mode", Kind::kString},   {"game", Kind::kString},
      {"grid", Kind::kInt},      {"x", Kind::kReal},
      {"x_min", Kind::kReal},    {"x_max", Kind::kReal},
      {"x_count", Kind::kInt},   {"eps1", Kind::kReal},
      {"eps2", Kind::kEps},      {"eps3", Kind::kEps},
      {"schedule", Kind::kRealList},
      {"seq", Kind::kString},    {"tie_tol", Kind::kReal},
      {"delta", Kind::kReal},    {"tail_start", Kind::kInt},
      {"closed", Kind::kBool},   {"out", Kind::kString},
      {"seed", Kind::kUInt},     {"threads", Kind::kInt},
  };
  return kinds;
}

[[noreturn]] void Fail(const std::string& key, const std::string& what) {
  throw ConfigError("config." + key + ": " + what);
}

double GetReal(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) Fail(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) Fail(key, "expected a finite number");
  return d;
}

long long GetInt(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) Fail(key, "expected an integer");
  return v.get<long long>();
}

std::optional<double> GetEps(const nlohmann::json& v, const std::string& key) {
  if (v.is_string() && v.get<std::string>() == "off") return std::nullopt;
  if (v.is_null()) return std::nullopt;
  const double d = GetReal(v, key);
  if (!(d > 0)) Fail(key, "must be positive or \"off\"");
  return d;
}

void Require(bool present, const std::string& key, Mode mode) {
  if (!present) {
    Fail(key, std::string("required for mode '") + ModeName(mode) + "'");
  }
}

nlohmann::json OverrideValue(const std::string& key, const std::string& text) {
  const Kind kind = KeyKinds().at(key);
  try {
    switch (kind) {
      case Kind::kString:
        return text;
      case Kind::kBool:
        if (text.empty() || text == "true" || text == "1") return true;
        if (text == "false" || text == "0") return false;
        Fail(key, "expected true or false");
      case Kind::kEps:
        if (text == "off") return "off";
        [[fallthrough]];
      case Kind::kReal: {
        std::size_t used = 0;
        const double d = std::stod(text, &used);
        if (used != text.size()) Fail(key, "expected a number");
        return d;
      }
      case Kind::kInt: {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) Fail(key, "expected an integer");
        return v;
      }
      case Kind::kUInt: {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size() || text.front() == '-') {
          Fail(key, "expected a nonnegative integer");
        }
        return v;
      }
      case Kind::kRealList: {
        nlohmann::json arr = nlohmann::json::array();
        std::stringstream ss(text);
        for (std::string item; std::getline(ss, item, ',');) {
          std::size_t used = 0;
          arr.push_back(std::stod(item, &used));
          if (used != item.size()) Fail(key, "expected numbers");
        }
        return arr;
      }
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    Fail(key, "malformed value '" + text + "'");
  }
  Fail(key, "unsupported");
}

}  // namespace

ExperimentConfig ParseConfig(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!KeyKinds().count(key)) Fail(key, "unknown key");
  }
  ExperimentConfig c;
  if (!doc.contains("mode")) Fail("mode", "missing");
  if (!doc["mode"].is_string()) Fail("mode", "expected a string");
  c.mode = ParseMode(doc["mode"].get<std::string>());

  auto has = [&](const char* k) { return doc.contains(k) && !doc[k].is_null(); };
  if (has("game")) {
    if (!doc["game"].is_string()) Fail("game", "expected a string");
    c.game = doc["game"].get<std::string>();
  }
  if (has("grid")) {
    const long long g = GetInt(doc["grid"], "grid");
    if (g < 2 || g > 100000) Fail("grid", "must be in [2, 100000]");
    c.grid = static_cast<int>(g);
  }
  if (has("x")) c.x = GetReal(doc["x"], "x");
  if (has("x_min")) c.x_min = GetReal(doc["x_min"], "x_min");
  if (has("x_max")) c.x_max = GetReal(doc["x_max"], "x_max");
  if (has("x_count")) {
    const long long n = GetInt(doc["x_count"], "x_count");
    if (n < 2 || n > 100000) Fail("x_count", "must be in [2, 100000]");
    c.x_count = static_cast<int>(n);
  }
  if (has("eps1")) {
    c.eps1 = GetReal(doc["eps1"], "eps1");
    if (!(*c.eps1 > 0)) Fail("eps1", "must be positive");
  }
  if (doc.contains("eps2")) c.eps2 = GetEps(doc["eps2"], "eps2");
  if (doc.contains("eps3")) c.eps3 = GetEps(doc["eps3"], "eps3");
  if (has("schedule")) {
    const auto& s = doc["schedule"];
    if (!s.is_array() || s.empty()) Fail("schedule", "expected a nonempty array");
    c.schedule.clear();
    for (std::size_t k = 0; k < s.size(); ++k) {
      const std::string path = "schedule[" + std::to_string(k) + "]";
      const double e = GetReal(s[k], path);
      if (!(e > 0)) Fail(path, "must be positive");
      if (k > 0 && !(e < c.schedule.back())) {
        Fail(path, "schedule must decrease strictly");
      }
      c.schedule.push_back(e);
    }
  }
  if (has("seq")) {
    if (!doc["seq"].is_string()) Fail("seq", "expected a string");
    c.seq = doc["seq"].get<std::string>();
    ParameterSequence::Parse(*c.seq);
  }
  if (has("tie_tol")) {
    c.tie_tol = GetReal(doc["tie_tol"], "tie_tol");
    if (c.tie_tol < 0) Fail("tie_tol", "must be nonnegative");
  }
  if (has("delta")) {
    c.delta = GetReal(doc["delta"], "delta");
    if (*c.delta < 0) Fail("delta", "must be nonnegative");
  }
  if (has("tail_start")) {
    const long long t = GetInt(doc["tail_start"], "tail_start");
    if (t < 0) Fail("tail_start", "must be nonnegative");
    c.tail_start = static_cast<int>(t);
  }
  if (has("closed")) {
    if (!doc["closed"].is_boolean()) Fail("closed", "expected a boolean");
    c.closed = doc["closed"].get<bool>();
  }
  if (has("out")) {
    if (!doc["out"].is_string()) Fail("out", "expected a string");
    c.out = doc["out"].get<std::string>();
  }
  if (has("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      Fail("seed", "expected a nonnegative integer");
    }
    if (doc["seed"].is_number_integer() && doc["seed"].get<long long>() < 0) {
      Fail("seed", "expected a nonnegative integer");
    }
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (has("threads")) {
    const long long t = GetInt(doc["threads"], "threads");
    if (t < 0 || t > 1024) Fail("threads", "must be in [0, 1024]");
    c.threads = static_cast<int>(t);
  }

  switch (c.mode) {
    case Mode::kNash:
      Require(c.x.has_value(), "x", c.mode);
      break;
    case Mode::kApprox:
    case Mode::kVerify:
      Require(c.x.has_value(), "x", c.mode);
      Require(c.eps1.has_value(), "eps1", c.mode);
      if (c.mode == Mode::kVerify && !(c.tie_tol < *c.eps1)) {
        Fail("tie_tol", "must be smaller than eps1");
      }
      break;
    case Mode::kSweep:
      Require(c.x_min.has_value(), "x_min", c.mode);
      Require(c.x_max.has_value(), "x_max", c.mode);
      Require(c.x_count.has_value(), "x_count", c.mode);
      if (!(*c.x_min < *c.x_max)) Fail("x_max", "must exceed x_min");
      break;
    case Mode::kLimits:
      Require(c.seq.has_value(), "seq", c.mode);
      break;
  }
  // Fail early on unknown game names.
  MakeGame(c.game, c.seed);
  return c;
}

ExperimentConfig ParseConfig(
    std::string_view json_text,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  nlohmann::json doc = nlohmann::json::object();
  if (!json_text.empty()) {
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
  }
  for (const auto& [raw_key, text] : overrides) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '-', '_');
    if (!KeyKinds().count(key)) Fail(key, "unknown key");
    doc[key] = OverrideValue(key, text);
  }
  return ParseConfig(doc);
}

nlohmann::json ExperimentConfig::ToJson() const {
  nlohmann::json j;
  j["mode"] = ModeName(mode);
  j["game"] = game;
  j["grid"] = grid;
  auto opt = [&](const char* k, const auto& v) {
    if (v) j[k] = *v;
  };
  opt("x", x);
  opt("x_min", x_min);
  opt("x_max", x_max);
  opt("x_count", x_count);
  opt("eps1", eps1);
  j["eps2"] = eps2 ? nlohmann::json(*eps2) : nlohmann::json("off");
  j["eps3"] = eps3 ? nlohmann::json(*eps3) : nlohmann::json("off");
  j["schedule"] = schedule;
  opt("seq", seq);
  j["tie_tol"] = tie_tol;
  opt("delta", delta);
  if (tail_start >= 0) j["tail_start"] = tail_start;
  j["closed"] = closed;
  j["out"] = out;
  j["seed"] = seed;
  j["threads"] = threads;
  return j;
}

nlohmann::json RunManifest::ToJson() const {
  nlohmann::json j;
  j["config"] = config;
  j["version"] = version;
  j["wall_seconds"] = wall_seconds;
  nlohmann::json files_json = nlohmann::json::array();
  for (const auto& f : files) {
    files_json.push_back({{"path", f.path}, {"sha256", f.sha256}});
  }
  j["files"] = files_json;
  j["exit_code"] = exit_code;
  return j;
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(kHex[digest[k] >> 4]);
    out.push_back(kHex[digest[k] & 15]);
  }
  return out;
}

namespace {

class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
      throw std::runtime_error("cannot create output directory " +
                               dir_.string() + ": " + ec.message());
    }
  }

  void Write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    f.close();
    if (!f) throw std::runtime_error("cannot write " + path.string());
    files_.push_back({name, Sha256Hex(content)});
  }

  std::vector<ArtifactDigest> files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<ArtifactDigest> files_;
};

std::string Dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string ProfilesCsv(const ProfileSet& set, const Grid& grid) {
  std::ostringstream os;
  WriteProfileCsv(os, set, grid);
  return os.str();
}

EpsilonTriple ConfigEps(const ExperimentConfig& c, double eps1) {
  return EpsilonTriple{eps1, c.eps2, c.eps3};
}

nlohmann::json SetSummary(const char* kind, const ExperimentConfig& c,
                          const GameSpec& game, const ProfileSet& set) {
  nlohmann::json j;
  j["kind"] = kind;
  j["game"] = game.name;
  j["grid"] = c.grid;
  j["x"] = *c.x;
  j["size"] = set.size();
  return j;
}

}  // namespace

RunManifest Run(const ExperimentConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  SetNumThreads(c.threads);
  const GameSpec game = MakeGame(c.game, c.seed);
  const Grid grid = BuildGrid(game.UniformGridSpec(c.grid));
  ArtifactWriter out(c.out);
  RunManifest manifest;
  manifest.config = c.ToJson();

  switch (c.mode) {
    case Mode::kNash: {
      const ProfileSet h = NashSet(game, ParameterPoint{*c.x}, grid, c.tie_tol);
      out.Write("profiles.csv", ProfilesCsv(h, grid));
      out.Write("report.json", Dump(SetSummary("nash", c, game, h)));
      break;
    }
    case Mode::kApprox: {
      const EpsilonTriple eps = ConfigEps(c, *c.eps1);
      const ProfileSet h =
          ApproxNashSet(game, ParameterPoint{*c.x}, eps, grid, c.closed);
      nlohmann::json j = SetSummary("approx", c, game, h);
      j["eps"] = EpsilonToJson(eps);
      j["closed"] = c.closed;
      out.Write("profiles.csv", ProfilesCsv(h, grid));
      out.Write("report.json", Dump(j));
      break;
    }
    case Mode::kSweep: {
      std::ostringstream csv;
      csv << "x,nash_size" << (c.eps1 ? ",approx_size" : "") << "\n";
      const int n = *c.x_count;
      for (int k = 0; k < n; ++k) {
        const double x =
            k == n - 1 ? *c.x_max
                       : *c.x_min + k * ((*c.x_max - *c.x_min) / (n - 1));
        const ParameterPoint p{x};
        csv << FormatDouble(x) << "," << NashSet(game, p, grid, c.tie_tol).size();
        if (c.eps1) {
          csv << ","
              << ApproxNashSet(game, p, ConfigEps(c, *c.eps1), grid, c.closed)
                     .size();
        }
        csv << "\n";
      }
      out.Write("sweep.csv", csv.str());
      break;
    }
    case Mode::kVerify: {
      const SandwichReport r = VerifySandwich(
          game, ParameterPoint{*c.x}, ConfigEps(c, *c.eps1), grid, c.tie_tol);
      nlohmann::json j = nash_sens::ToJson(r);
      j["game"] = game.name;
      j["grid"] = c.grid;
      out.Write("report.json", Dump(j));
      if (!r.all_hold()) manifest.exit_code = 2;
      break;
    }
    case Mode::kLimits: {
      const ParameterSequence seq = ParameterSequence::Parse(*c.seq);
      EpsilonSchedule schedule;
      for (double e : c.schedule) schedule.steps.push_back(ConfigEps(c, e));
      for (std::size_t k = 1; k < schedule.steps.size(); ++k) {
        // Active eps2/eps3 shrink in proportion to eps1.
        const double ratio = c.schedule[k] / c.schedule[0];
        schedule.steps[k] = ConfigEps(c, c.schedule[0]).Scaled(ratio);
        schedule.steps[k].eps1 = c.schedule[k];
      }
      LimitOptions opts;
      opts.tail_start = c.tail_start;
      opts.delta = c.delta.value_or(-1.0);
      opts.tie_tol = c.tie_tol;
      const LimitReport r =
          c.closed ? VerifyClosedVariantLimits(game, seq, schedule, grid, opts)
                   : VerifyConvergenceChain(game, seq, schedule, grid, opts);
      nlohmann::json j = nash_sens::ToJson(r);
      j["game"] = game.name;
      j["grid"] = c.grid;
      out.Write("report.json", Dump(j));
      std::ostringstream traj;
      WriteTrajectoryCsv(traj, r);
      out.Write("trajectory.csv", traj.str());
      if (!r.all_hold()) manifest.exit_code = 2;
      break;
    }
  }

  manifest.files = out.files();
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  ArtifactWriter(c.out).Write("manifest.json", Dump(manifest.ToJson()));
  return manifest;
}

int CliMain(int argc, char** argv) {
  CLI::App app{"Equilibrium sets of parameterized games on grids"};
  std::string mode;
  std::string config_path;
  app.add_option("mode", mode, "nash | approx | sweep | limits | verify")
      ->required();
  app.add_option("--config", config_path, "JSON config file");

  // Flag name -> config key. Values are kept as text and converted by
  // ParseConfig so that file values and flags share one validator.
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"--game", "game"},         {"--grid", "grid"},
      {"--x", "x"},               {"--x-min", "x_min"},
      {"--x-max", "x_max"},       {"--x-count", "x_count"},
      {"--eps1", "eps1"},         {"--eps2", "eps2"},
      {"--eps3", "eps3"},         {"--schedule", "schedule"},
      {"--seq", "seq"},           {"--out", "out"},
      {"--tie-tol", "tie_tol"},   {"--delta", "delta"},
      {"--tail-start", "tail_start"},
      {"--seed", "seed"},         {"--threads", "threads"},
  };
  std::map<std::string, std::string> values;
  for (const auto& [flag, key] : flags) {
    app.add_option(flag, values[key]);
  }
  bool closed = false;
  app.add_flag("--closed", closed, "use the closed approximate sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("config: cannot read " + config_path);
      std::ostringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    std::vector<std::pair<std::string, std::string>> overrides;
    overrides.emplace_back("mode", mode);
    for (const auto& [flag, key] : flags) {
      if (app.count(flag) > 0) overrides.emplace_back(key, values[key]);
    }
    if (closed) overrides.emplace_back("closed", "true");
    const ExperimentConfig config = ParseConfig(text, overrides);
    const RunManifest m = Run(config);
    std::cout << ModeName(config.mode) << ": wrote " << m.files.size()
              << " artifact(s) to " << config.out
              << (m.exit_code == 2 ? " (verdict failure)" : "") << "\n";
    return m.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "nash-sens: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nash_sens
