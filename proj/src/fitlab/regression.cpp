#include "lexstat/fitlab/regression.hpp"

#include <cmath>
#include <sstream>

#include "lexstat/error.hpp"

namespace lexstat::fitlab {

LineFit ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("ols: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw ValidationError("ols: need at least 3 points, got " + std::to_string(n));
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ValidationError("ols: x is constant");
  LineFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

std::string RankInterval::label() const {
  return std::to_string(lo) + "-" + (hi ? std::to_string(*hi) : std::string("end"));
}

RankInterval RankInterval::parse(const std::string& s) {
  const auto dash = s.find('-');
  if (dash == std::string::npos || dash == 0) {
    throw ValidationError("rank interval '" + s + "' is not of the form lo-hi");
  }
  RankInterval iv;
  try {
    std::size_t used = 0;
    const std::string lo = s.substr(0, dash);
    iv.lo = std::stoll(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    const std::string hi = s.substr(dash + 1);
    if (hi != "end") {
      iv.hi = std::stoll(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(hi);
    }
  } catch (const std::logic_error&) {
    throw ValidationError("rank interval '" + s + "' has a malformed bound");
  }
  if (iv.lo < 0 || (iv.hi && *iv.hi <= iv.lo)) {
    throw ValidationError("rank interval '" + s + "' is empty or negative");
  }
  return iv;
}

std::vector<RankInterval> parse_intervals(const std::string& csv) {
  std::vector<RankInterval> out;
  std::stringstream ss(csv);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto b = part.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = part.find_last_not_of(" \t");
    out.push_back(RankInterval::parse(part.substr(b, e - b + 1)));
  }
  if (out.empty()) throw ValidationError("no rank intervals given");
  return out;
}

std::vector<RankInterval> default_zipf_intervals() {
  return {{10, 200}, {200, 1000}, {1000, std::nullopt}};
}

std::vector<RankInterval> default_coverage_intervals() {
  return {{10, 200}, {200, 2000}, {2000, std::nullopt}};
}

namespace {

template <typename Row, typename RankOf>
std::vector<const Row*> select(const std::vector<Row>& rows, const RankInterval& iv, RankOf rank_of) {
  std::vector<const Row*> out;
  for (const auto& row : rows) {
    const auto r = rank_of(row);
    if (r > iv.lo && (!iv.hi || r <= *iv.hi)) out.push_back(&row);
  }
  if (out.size() < 3) {
    throw ValidationError("rank interval " + iv.label() + " holds " + std::to_string(out.size()) +
                          " points; at least 3 are needed");
  }
  return out;
}

}  // namespace

std::vector<ZipfSegment> segmented_loglog_fit(const RankFrequencyList& rf,
                                              const std::vector<RankInterval>& intervals) {
  std::vector<ZipfSegment> out;
  for (const auto& iv : intervals) {
    const auto rows = select(rf.rows, iv, [](const RankRow& r) { return r.rank; });
    std::vector<double> lx, ly;
    for (const RankRow* row : rows) {
      lx.push_back(std::log(static_cast<double>(row->rank)));
      ly.push_back(std::log(static_cast<double>(row->frequency)));
    }
    const LineFit line = ols(lx, ly);
    out.push_back({iv, rows.front()->rank, rows.back()->rank, -line.slope, std::exp(line.intercept),
                   line.r_squared, line.points});
  }
  return out;
}

std::vector<CoverageSegment> fit_coverage(const CoverageCurve& curve,
                                          const std::vector<RankInterval>& intervals) {
  std::vector<CoverageSegment> out;
  for (const auto& iv : intervals) {
    const auto pts = select(curve, iv, [](const CoveragePoint& p) { return p.rank; });
    std::vector<double> lx, ty;
    for (const CoveragePoint* p : pts) {
      lx.push_back(std::log(static_cast<double>(p->rank)));
      ty.push_back(p->covered);
    }
    const LineFit line = ols(lx, ty);
    out.push_back({iv, pts.front()->rank, pts.back()->rank, line.slope, line.intercept,
                   line.r_squared, line.points});
  }
  return out;
}

}  // namespace lexstat::fitlab
