#pragma once

// Run configuration: a line-oriented "key = value" file with [section]
// headers. Relative paths resolve against the config file's directory.
// The schema is described in docs/config.md.

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lexstat/distributions.hpp"
#include "lexstat/fitlab/levenberg_marquardt.hpp"
#include "lexstat/fitlab/regression.hpp"
#include "lexstat/indices.hpp"
#include "lexstat/text_ingest.hpp"

namespace lexstat {

enum class RankItems { Lemmas, Forms };

inline const std::vector<std::string>& all_stages() {
  static const std::vector<std::string> stages = {"profile", "distributions", "fits", "topk"};
  return stages;
}

struct RunConfig {
  std::filesystem::path text;
  std::optional<std::filesystem::path> lemma_map;
  std::optional<std::filesystem::path> merge_rules;
  std::optional<std::filesystem::path> overrides;
  std::optional<std::filesystem::path> g2p_rules;
  std::filesystem::path output_dir = "out";
  bool plot_header = false;

  TokenizerConfig tokenizer;
  VowelSet vowels = default_vowels();
  Basis basis = Basis::Types;
  ProfileOptions profile;
  RankItems rank_items = RankItems::Lemmas;
  std::size_t top_k = 20;
  Count min_support = 5;

  std::vector<fitlab::ModelId> fits = fitlab::all_models();
  std::vector<fitlab::RankInterval> zipf_intervals = fitlab::default_zipf_intervals();
  std::vector<fitlab::RankInterval> coverage_intervals = fitlab::default_coverage_intervals();
  std::map<fitlab::ModelId, std::map<std::string, double>> init_overrides;
  fitlab::FitOptions fit_options;
  fitlab::ResidualSpace zipf_mandelbrot_space = fitlab::ResidualSpace::Linear;

  std::set<std::string> stages{all_stages().begin(), all_stages().end()};
};

// Throws ResourceError (with line number) on unknown sections or keys and
// malformed values.
RunConfig parse_run_config(std::istream& in, const std::string& label,
                           const std::filesystem::path& base_dir);
// Throws IoError when the file cannot be read.
RunConfig load_run_config(const std::filesystem::path& path);

// "profile,fits" -> validated stage set; throws ValidationError.
std::set<std::string> parse_stages(const std::string& csv);

}  // namespace lexstat
