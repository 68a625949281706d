#pragma once

// Ordinary least-squares straight lines over rank intervals: log-log Zipf
// exponents per rank domain and log-linear coverage growth rates.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexstat/distributions.hpp"

namespace lexstat::fitlab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

// Throws ValidationError for fewer than 3 points or constant x.
LineFit ols(std::span<const double> x, std::span<const double> y);

// Ranks r with lo < r <= hi; an empty hi extends to the last rank.
struct RankInterval {
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;

  std::string label() const;                        // "10-200", "1000-end"
  static RankInterval parse(const std::string& s);  // inverse of label()
};

std::vector<RankInterval> parse_intervals(const std::string& csv);

// (10,200], (200,1000], (1000,V]
std::vector<RankInterval> default_zipf_intervals();
// (10,200], (200,2000], (2000,V]
std::vector<RankInterval> default_coverage_intervals();

struct ZipfSegment {
  RankInterval interval;
  std::int64_t first_rank = 0;
  std::int64_t last_rank = 0;
  double z = 0.0;  // F ∝ r^-z
  double A = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

std::vector<ZipfSegment> segmented_loglog_fit(const RankFrequencyList& rf,
                                              const std::vector<RankInterval>& intervals);

struct CoverageSegment {
  RankInterval interval;
  std::int64_t first_rank = 0;
  std::int64_t last_rank = 0;
  double k = 0.0;
  double T0 = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

std::vector<CoverageSegment> fit_coverage(const CoverageCurve& curve,
                                          const std::vector<RankInterval>& intervals);

}  // namespace lexstat::fitlab
