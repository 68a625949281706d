#pragma once

// Empirical distributions derived from frequency dictionaries: length
// spectra, mean syllable length per word length, rank-frequency lists and
// the text coverage curve.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexstat/lexicon.hpp"

namespace lexstat {

enum class LengthUnit { Letters, Phonemes, Syllables };
enum class Basis { Types, Tokens };

std::string_view to_string(LengthUnit u);
std::string_view to_string(Basis b);
Basis parse_basis(std::string_view text);

struct LengthPoint {
  int length = 0;
  double fraction = 0.0;
};

struct LengthDistribution {
  LengthUnit unit = LengthUnit::Letters;
  Basis basis = Basis::Types;
  std::vector<LengthPoint> points;  // strictly increasing length
};

using VowelSet = std::set<char32_t>;

// а е и і о у я ю є ї
VowelSet default_vowels();
VowelSet parse_vowels(std::string_view utf8);

// Number of vowel nuclei; vowel-less forms (б, ж, в, з, й) have zero.
int count_syllables(std::string_view form, const VowelSet& vowels);

struct G2PRule {
  std::u32string grapheme;  // folded
  int phonemes = 1;
};

// Ordered rewrite rules applied longest-match-first. Letters not covered by a
// rule contribute `default_phonemes` each; non-letters contribute nothing.
struct G2PRules {
  std::vector<G2PRule> rules;
  std::optional<int> default_phonemes = 1;

  // дж, дз -> 1; щ -> 2; ь -> 0.
  static G2PRules ukrainian();
  static G2PRules identity() { return {}; }
};

// Throws ValidationError naming the first letter with no applicable rule when
// the rule set has no default.
int count_phonemes(std::string_view form, const G2PRules& rules);

int count_letters(std::string_view form);

using LengthCounter = std::function<int(std::string_view)>;

LengthDistribution length_distribution(const FormLexicon& lex, LengthUnit unit,
                                       const LengthCounter& counter, Basis basis = Basis::Types);

struct MeanSyllablePoint {
  int syllables = 0;
  double mean_length = 0.0;  // letters per syllable
  Count support = 0;         // word-forms
};

using MeanSyllableSeries = std::vector<MeanSyllablePoint>;

MeanSyllableSeries mean_syllable_series(const FormLexicon& lex, const VowelSet& vowels);

struct RankRow {
  std::int64_t rank = 0;
  std::string item;
  Count frequency = 0;
};

struct RankFrequencyList {
  std::vector<RankRow> rows;
  Count total = 0;  // sum of frequencies

  std::size_t size() const { return rows.size(); }
};

// Descending frequency, ties by item (byte order of the UTF-8 key).
RankFrequencyList rank_frequency(const CountMap& entries);

struct CoveragePoint {
  std::int64_t rank = 0;
  double covered = 0.0;
};

using CoverageCurve = std::vector<CoveragePoint>;

CoverageCurve coverage_curve(const RankFrequencyList& rf);

struct TopRow {
  std::int64_t rank = 0;
  std::string item;
  Count frequency = 0;
  double percent = 0.0;
};

// Percentages are relative to text_size when given (the running-text size N),
// otherwise to the list's own mass.
std::vector<TopRow> top_k(const RankFrequencyList& rf, std::size_t k,
                          std::optional<Count> text_size = std::nullopt);

}  // namespace lexstat
