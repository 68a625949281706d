#pragma once

// Output formats. Plot data: one "x y" row per point, integral values printed
// as integers, everything else with 6 significant digits. Percentages carry 4
// decimals. Report reals (profile, fits) carry 10 significant digits.

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lexstat/distributions.hpp"
#include "lexstat/fitlab/levenberg_marquardt.hpp"
#include "lexstat/fitlab/regression.hpp"
#include "lexstat/indices.hpp"

namespace lexstat {

using Json = nlohmann::ordered_json;

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
};

using PlotHeader = std::pair<std::string, std::string>;

std::string format_plot_number(double v);
std::string format_report_number(double v);
std::string format_percent(double v);

// Throws ValidationError on an empty series.
std::string plot_data(std::span<const PlotPoint> series,
                      const std::optional<PlotHeader>& header = std::nullopt);
// As plot_data, written to `path`; throws IoError when it cannot be written.
void emit_plot_data(std::span<const PlotPoint> series, const std::filesystem::path& path,
                    const std::optional<PlotHeader>& header = std::nullopt);

std::vector<PlotPoint> to_plot(const LengthDistribution& d);
std::vector<PlotPoint> to_plot(const MeanSyllableSeries& s);
std::vector<PlotPoint> to_plot(const RankFrequencyList& rf);
std::vector<PlotPoint> to_plot(const CoverageCurve& c);

std::string profile_tsv(const CorpusProfile& p);
Json profile_json(const CorpusProfile& p);

std::string topk_tsv(const std::vector<TopRow>& rows);

struct FitEntry {
  std::string model;    // model id, e.g. "zipf_mandelbrot"
  std::string dataset;  // plot-data file the fit was run on
  std::size_t points = 0;
  std::optional<fitlab::FitResult> lm;
  std::vector<fitlab::ZipfSegment> zipf;
  std::vector<fitlab::CoverageSegment> coverage;
  std::vector<std::pair<std::string, std::string>> errors;  // (scope, message)
};

std::string fits_tsv(const std::vector<FitEntry>& fits);
Json fits_json(const std::vector<FitEntry>& fits);

}  // namespace lexstat
