#ifndef NASH_SENS_SETLIMITS_H_
#define NASH_SENS_SETLIMITS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "nash_sens/equilibrium.h"
#include "nash_sens/game.h"
#include "nash_sens/grid.h"

namespace nash_sens {

enum class SequenceKind { kHarmonicAbove, kHarmonicBelow, kCustom };

// Deterministic parameter sequence x_n -> limit. Harmonic kinds generate
// x_n = limit +/- scale / n for n = 1..count, shifting every coordinate.
struct ParameterSequence {
  SequenceKind kind = SequenceKind::kHarmonicAbove;
  ParameterPoint limit;
  int count = 50;
  double scale = 1.0;
  std::vector<ParameterPoint> custom;  // kCustom only

  std::vector<ParameterPoint> Points() const;

  // "KIND:LIMIT:SIDE:COUNT", e.g. "harmonic:1:above:50". Throws ConfigError.
  static ParameterSequence Parse(const std::string& descriptor);
  std::string Describe() const;
};

// Finite-tail surrogate of the Kuratowski upper limit: grid points within
// delta of the union of sets[tail_start..]. Throws DomainError for an empty
// list or tail_start out of range.
ProfileSet KuratowskiLimsup(const std::vector<ProfileSet>& sets,
                            int tail_start, double delta, const Grid& grid,
                            Metric metric = Metric::kEuclidean);

// Finite-tail surrogate of the Kuratowski lower limit: grid points within
// delta of every one of sets[tail_start..].
ProfileSet KuratowskiLiminf(const std::vector<ProfileSet>& sets,
                            int tail_start, double delta, const Grid& grid,
                            Metric metric = Metric::kEuclidean);

struct LimitOptions {
  int tail_start = -1;      // < 0: count / 2
  double delta = -1.0;      // < 0: grid min spacing
  double tie_tol = kDefaultTieTol;
  Metric metric = Metric::kEuclidean;
};

struct Verdict {
  std::string name;
  bool holds = true;
};

// One approximation level of a limit experiment.
struct EpsilonRow {
  EpsilonTriple eps;
  ProfileSet liminf;
  ProfileSet limsup;
  double liminf_gap = 0.0;  // Hausdorff distance to the limit's Nash set
  double limsup_gap = 0.0;
};

struct LimitReport {
  ParameterSequence sequence;
  bool closed_variant = false;
  int tail_start = 0;
  double delta = 0.0;
  ProfileSet target;        // Nash set at the limit parameter
  ProfileSet nash_liminf;   // of the exact Nash sets along the sequence
  ProfileSet nash_limsup;
  double nash_liminf_gap = 0.0;
  double nash_limsup_gap = 0.0;
  std::vector<std::size_t> nash_sizes;  // |h(x_n)| per n
  std::vector<EpsilonRow> rows;
  std::vector<Verdict> verdicts;
  // Whether the gaps never grow along the schedule (reported, not verdicts).
  bool liminf_gap_nonincreasing = true;
  bool limsup_gap_nonincreasing = true;

  bool all_hold() const;
};

// Upper-continuity chain liminf h(x_n) ⊆ limsup h(x_n) ⊆ h(x*) and, along
// the schedule, the limits of the open approximate sets h^eps(x_n) with their
// Hausdorff distance to h(x*). Inclusions are tested within options.delta.
LimitReport VerifyConvergenceChain(const GameSpec& game,
                                   const ParameterSequence& seq,
                                   const EpsilonSchedule& schedule,
                                   const Grid& grid,
                                   const LimitOptions& options = {});

// Same experiment using the closed approximate sets.
LimitReport VerifyClosedVariantLimits(const GameSpec& game,
                                      const ParameterSequence& seq,
                                      const EpsilonSchedule& schedule,
                                      const Grid& grid,
                                      const LimitOptions& options = {});

nlohmann::json ToJson(const LimitReport& report);

// "eps1,eps2,eps3,liminf_size,limsup_size,liminf_gap,limsup_gap" rows.
void WriteTrajectoryCsv(std::ostream& os, const LimitReport& report);

}  // namespace nash_sens

#endif  // NASH_SENS_SETLIMITS_H_
