#include "nash_sens/setlimits.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "nash_sens/errors.h"

namespace nash_sens {

std::vector<ParameterPoint> ParameterSequence::Points() const {
  if (kind == SequenceKind::kCustom) {
    if (custom.size() < 2) {
      throw ConfigError("sequence: custom sequences need >= 2 points");
    }
    return custom;
  }
  if (count < 2) throw ConfigError("sequence: count must be >= 2");
  const double sign = kind == SequenceKind::kHarmonicAbove ? 1.0 : -1.0;
  std::vector<ParameterPoint> out;
  out.reserve(count);
  for (int n = 1; n <= count; ++n) {
    ParameterPoint p = limit;
    for (double& c : p.coords) c += sign * scale / n;
    out.push_back(std::move(p));
  }
  return out;
}

ParameterSequence ParameterSequence::Parse(const std::string& descriptor) {
  std::vector<std::string> parts;
  std::stringstream ss(descriptor);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 4) {
    throw ConfigError("seq: expected KIND:LIMIT:SIDE:COUNT, got '" +
                      descriptor + "'");
  }
  if (parts[0] != "harmonic") {
    throw ConfigError("seq: unknown kind '" + parts[0] + "'");
  }
  ParameterSequence seq;
  if (parts[2] == "above") {
    seq.kind = SequenceKind::kHarmonicAbove;
  } else if (parts[2] == "below") {
    seq.kind = SequenceKind::kHarmonicBelow;
  } else {
    throw ConfigError("seq: side must be 'above' or 'below'");
  }
  try {
    std::size_t used = 0;
    seq.limit = ParameterPoint{std::stod(parts[1], &used)};
    if (used != parts[1].size()) throw std::invalid_argument("limit");
    seq.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("count");
  } catch (const std::logic_error&) {
    throw ConfigError("seq: malformed number in '" + descriptor + "'");
  }
  if (seq.count < 2) throw ConfigError("seq: count must be >= 2");
  return seq;
}

std::string ParameterSequence::Describe() const {
  if (kind == SequenceKind::kCustom) {
    return "custom:" + std::to_string(custom.size());
  }
  std::ostringstream os;
  os << "harmonic:" << FormatDouble(limit.coords.empty() ? 0.0 : limit[0])
     << ":" << (kind == SequenceKind::kHarmonicAbove ? "above" : "below")
     << ":" << count;
  if (scale != 1.0) os << ":scale=" << FormatDouble(scale);
  return os.str();
}

namespace {

void CheckTail(const std::vector<ProfileSet>& sets, int tail_start,
               double delta) {
  if (sets.empty()) throw DomainError("Kuratowski limit of an empty list");
  if (tail_start < 0 || tail_start >= static_cast<int>(sets.size())) {
    throw DomainError("tail_start out of range");
  }
  if (!(delta >= 0)) throw DomainError("delta must be nonnegative");
}

}  // namespace

ProfileSet KuratowskiLimsup(const std::vector<ProfileSet>& sets,
                            int tail_start, double delta, const Grid& grid,
                            Metric metric) {
  CheckTail(sets, tail_start, delta);
  ProfileSet tail = sets[tail_start];
  for (std::size_t j = tail_start + 1; j < sets.size(); ++j) {
    tail = tail.Union(sets[j]);
  }
  return DilateProfiles(tail, delta, grid, metric);
}

ProfileSet KuratowskiLiminf(const std::vector<ProfileSet>& sets,
                            int tail_start, double delta, const Grid& grid,
                            Metric metric) {
  CheckTail(sets, tail_start, delta);
  // Every member must be near sets[tail_start]; start from its dilation.
  const ProfileSet candidates =
      DilateProfiles(sets[tail_start], delta, grid, metric);
  std::vector<std::int64_t> out;
  for (std::int64_t p : candidates.indices()) {
    bool near_all = true;
    for (std::size_t j = tail_start + 1; j < sets.size() && near_all; ++j) {
      near_all = WithinDistance(p, sets[j], delta, grid, metric);
    }
    if (near_all) out.push_back(p);
  }
  return ProfileSet::FromSorted(grid, std::move(out));
}

bool LimitReport::all_hold() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.holds; });
}

namespace {

LimitReport RunLimits(const GameSpec& game, const ParameterSequence& seq,
                      const EpsilonSchedule& schedule, const Grid& grid,
                      const LimitOptions& options, bool closed) {
  schedule.Validate();
  game.CheckGrid(grid);
  const std::vector<ParameterPoint> points = seq.Points();
  for (const auto& x : points) game.CheckParameter(x);
  game.CheckParameter(seq.limit);

  LimitReport r;
  r.sequence = seq;
  r.closed_variant = closed;
  const int n = static_cast<int>(points.size());
  r.tail_start = options.tail_start < 0 ? n / 2 : options.tail_start;
  r.delta = options.delta < 0 ? grid.min_spacing() : options.delta;
  const Metric m = options.metric;

  r.target = NashSet(game, seq.limit, grid, options.tie_tol);

  std::vector<ProfileSet> nash;
  nash.reserve(n);
  for (const auto& x : points) {
    nash.push_back(NashSet(game, x, grid, options.tie_tol));
    r.nash_sizes.push_back(nash.back().size());
  }
  r.nash_liminf = KuratowskiLiminf(nash, r.tail_start, r.delta, grid, m);
  r.nash_limsup = KuratowskiLimsup(nash, r.tail_start, r.delta, grid, m);
  r.nash_liminf_gap = Hausdorff(r.nash_liminf, r.target, grid, m);
  r.nash_limsup_gap = Hausdorff(r.nash_limsup, r.target, grid, m);
  r.verdicts.push_back(
      {"nash_liminf_within_limsup",
       ContainsWithin(r.nash_liminf, r.nash_limsup, r.delta, grid, m)});
  r.verdicts.push_back(
      {"nash_limsup_within_target",
       ContainsWithin(r.nash_limsup, r.target, r.delta, grid, m)});

  for (std::size_t k = 0; k < schedule.steps.size(); ++k) {
    const EpsilonTriple& eps = schedule.steps[k];
    std::vector<ProfileSet> approx;
    approx.reserve(n);
    for (const auto& x : points) {
      approx.push_back(ApproxNashSet(game, x, eps, grid, closed));
    }
    EpsilonRow row;
    row.eps = eps;
    row.liminf = KuratowskiLiminf(approx, r.tail_start, r.delta, grid, m);
    row.limsup = KuratowskiLimsup(approx, r.tail_start, r.delta, grid, m);
    row.liminf_gap = Hausdorff(row.liminf, r.target, grid, m);
    row.limsup_gap = Hausdorff(row.limsup, r.target, grid, m);
    const std::string tag = "eps[" + std::to_string(k) + "]_";
    r.verdicts.push_back(
        {tag + "liminf_within_limsup",
         ContainsWithin(row.liminf, row.limsup, r.delta, grid, m)});
    r.verdicts.push_back(
        {tag + "target_within_liminf",
         ContainsWithin(r.target, row.liminf, r.delta, grid, m)});
    if (!r.rows.empty()) {
      r.liminf_gap_nonincreasing &= row.liminf_gap <= r.rows.back().liminf_gap;
      r.limsup_gap_nonincreasing &= row.limsup_gap <= r.rows.back().limsup_gap;
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

}  // namespace

LimitReport VerifyConvergenceChain(const GameSpec& game,
                                   const ParameterSequence& seq,
                                   const EpsilonSchedule& schedule,
                                   const Grid& grid,
                                   const LimitOptions& options) {
  return RunLimits(game, seq, schedule, grid, options, false);
}

LimitReport VerifyClosedVariantLimits(const GameSpec& game,
                                      const ParameterSequence& seq,
                                      const EpsilonSchedule& schedule,
                                      const Grid& grid,
                                      const LimitOptions& options) {
  return RunLimits(game, seq, schedule, grid, options, true);
}

namespace {

nlohmann::json Gap(double d) {
  // JSON has no infinity; an empty side of the comparison is reported as
  // the string "inf".
  if (std::isinf(d)) return "inf";
  return d;
}

}  // namespace

nlohmann::json ToJson(const LimitReport& r) {
  nlohmann::json j;
  j["kind"] = "limits";
  j["sequence"] = r.sequence.Describe();
  j["variant"] = r.closed_variant ? "closed" : "open";
  j["tail_start"] = r.tail_start;
  j["delta"] = r.delta;
  j["target_size"] = r.target.size();
  j["nash_sizes"] = r.nash_sizes;
  j["nash"] = {{"liminf_size", r.nash_liminf.size()},
               {"limsup_size", r.nash_limsup.size()},
               {"liminf_gap", Gap(r.nash_liminf_gap)},
               {"limsup_gap", Gap(r.nash_limsup_gap)}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"eps", EpsilonToJson(row.eps)},
                    {"liminf_size", row.liminf.size()},
                    {"limsup_size", row.limsup.size()},
                    {"liminf_gap", Gap(row.liminf_gap)},
                    {"limsup_gap", Gap(row.limsup_gap)}});
  }
  j["rows"] = rows;
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"name", v.name}, {"holds", v.holds}});
  }
  j["verdicts"] = verdicts;
  j["liminf_gap_nonincreasing"] = r.liminf_gap_nonincreasing;
  j["limsup_gap_nonincreasing"] = r.limsup_gap_nonincreasing;
  j["all_hold"] = r.all_hold();
  return j;
}

void WriteTrajectoryCsv(std::ostream& os, const LimitReport& r) {
  os << "eps1,eps2,eps3,liminf_size,limsup_size,liminf_gap,limsup_gap\n";
  for (const auto& row : r.rows) {
    os << FormatDouble(row.eps.eps1) << ","
       << (row.eps.eps2 ? FormatDouble(*row.eps.eps2) : "off") << ","
       << (row.eps.eps3 ? FormatDouble(*row.eps.eps3) : "off") << ","
       << row.liminf.size() << "," << row.limsup.size() << ","
       << FormatDouble(row.liminf_gap) << "," << FormatDouble(row.limsup_gap)
       << "\n";
  }
}

}  // namespace nash_sens
