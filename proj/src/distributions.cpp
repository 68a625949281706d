#include "lexstat/distributions.hpp"

#include <algorithm>
#include <map>

#include "lexstat/error.hpp"
#include "lexstat/unicode.hpp"

namespace lexstat {

std::string_view to_string(LengthUnit u) {
  switch (u) {
    case LengthUnit::Letters:
      return "letters";
    case LengthUnit::Phonemes:
      return "phonemes";
    case LengthUnit::Syllables:
      return "syllables";
  }
  return "?";
}

std::string_view to_string(Basis b) { return b == Basis::Types ? "types" : "tokens"; }

Basis parse_basis(std::string_view text) {
  if (text == "types") return Basis::Types;
  if (text == "tokens") return Basis::Tokens;
  throw ValidationError("basis must be 'types' or 'tokens', got '" + std::string(text) + "'");
}

VowelSet default_vowels() { return parse_vowels("аеиіоуяюєї"); }

VowelSet parse_vowels(std::string_view utf8) {
  VowelSet out;
  for (char32_t cp : unicode::decode_utf8(utf8)) {
    if (!unicode::is_whitespace(cp) && cp != U',') out.insert(unicode::fold(cp));
  }
  return out;
}

int count_syllables(std::string_view form, const VowelSet& vowels) {
  int n = 0;
  for (char32_t cp : unicode::decode_utf8(form)) n += vowels.count(unicode::fold(cp)) > 0 ? 1 : 0;
  return n;
}

int count_letters(std::string_view form) { return static_cast<int>(unicode::count_letters(form)); }

G2PRules G2PRules::ukrainian() {
  G2PRules r;
  r.rules = {{U"дж", 1}, {U"дз", 1}, {U"щ", 2}, {U"ь", 0}};
  return r;
}

int count_phonemes(std::string_view form, const G2PRules& rules) {
  std::u32string text = unicode::decode_utf8(form);
  for (auto& cp : text) cp = unicode::fold(cp);

  std::vector<const G2PRule*> ordered;
  for (const auto& r : rules.rules) {
    if (!r.grapheme.empty()) ordered.push_back(&r);
  }
  std::stable_sort(ordered.begin(), ordered.end(), [](const G2PRule* a, const G2PRule* b) {
    return a->grapheme.size() > b->grapheme.size();
  });

  int total = 0;
  std::size_t i = 0;
  const std::u32string_view view = text;
  while (i < view.size()) {
    const G2PRule* hit = nullptr;
    for (const G2PRule* r : ordered) {
      if (view.substr(i).starts_with(r->grapheme)) {
        hit = r;
        break;
      }
    }
    if (hit != nullptr) {
      total += hit->phonemes;
      i += hit->grapheme.size();
      continue;
    }
    if (unicode::is_letter(view[i])) {
      if (!rules.default_phonemes) {
        throw ValidationError("no grapheme rule for letter '" +
                              unicode::encode_utf8(view.substr(i, 1)) + "' in '" +
                              std::string(form) + "'");
      }
      total += *rules.default_phonemes;
    }
    ++i;
  }
  return total;
}

LengthDistribution length_distribution(const FormLexicon& lex, LengthUnit unit,
                                       const LengthCounter& counter, Basis basis) {
  if (lex.entries.empty()) throw ValidationError("length_distribution: empty lexicon");
  std::map<int, Count> histogram;
  Count mass = 0;
  for (const auto& [form, count] : lex.entries) {
    const int len = counter(form);
    if (len < 0) throw ValidationError("negative length for '" + form + "'");
    const Count w = basis == Basis::Types ? 1 : count;
    histogram[len] += w;
    mass += w;
  }
  LengthDistribution out{unit, basis, {}};
  out.points.reserve(histogram.size());
  for (const auto& [len, c] : histogram) {
    out.points.push_back({len, static_cast<double>(c) / static_cast<double>(mass)});
  }
  return out;
}

MeanSyllableSeries mean_syllable_series(const FormLexicon& lex, const VowelSet& vowels) {
  if (lex.entries.empty()) throw ValidationError("mean_syllable_series: empty lexicon");
  struct Acc {
    double sum = 0.0;
    Count n = 0;
  };
  std::map<int, Acc> groups;
  for (const auto& [form, count] : lex.entries) {
    const int s = count_syllables(form, vowels);
    if (s == 0) continue;
    auto& acc = groups[s];
    acc.sum += static_cast<double>(count_letters(form)) / s;
    ++acc.n;
  }
  MeanSyllableSeries out;
  for (const auto& [s, acc] : groups) {
    out.push_back({s, acc.sum / static_cast<double>(acc.n), acc.n});
  }
  return out;
}

RankFrequencyList rank_frequency(const CountMap& entries) {
  if (entries.empty()) throw ValidationError("rank_frequency: empty lexicon");
  RankFrequencyList rf;
  rf.rows.reserve(entries.size());
  for (const auto& [item, count] : entries) {
    rf.rows.push_back({0, item, count});
    rf.total += count;
  }
  // entries are already in item order, so a stable sort keeps the tie-break
  std::stable_sort(rf.rows.begin(), rf.rows.end(),
                   [](const RankRow& a, const RankRow& b) { return a.frequency > b.frequency; });
  for (std::size_t i = 0; i < rf.rows.size(); ++i) rf.rows[i].rank = static_cast<std::int64_t>(i) + 1;
  return rf;
}

CoverageCurve coverage_curve(const RankFrequencyList& rf) {
  CoverageCurve out;
  out.reserve(rf.rows.size());
  Count running = 0;
  for (const auto& row : rf.rows) {
    running += row.frequency;
    out.push_back({row.rank, static_cast<double>(running) / static_cast<double>(rf.total)});
  }
  return out;
}

std::vector<TopRow> top_k(const RankFrequencyList& rf, std::size_t k,
                          std::optional<Count> text_size) {
  if (k < 1 || k > rf.rows.size()) {
    throw ValidationError("top_k: k=" + std::to_string(k) + " outside [1, " +
                          std::to_string(rf.rows.size()) + "]");
  }
  const Count denom = text_size.value_or(rf.total);
  if (denom <= 0) throw ValidationError("top_k: non-positive text size");
  std::vector<TopRow> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& row = rf.rows[i];
    out.push_back({row.rank, row.item, row.frequency,
                   100.0 * static_cast<double>(row.frequency) / static_cast<double>(denom)});
  }
  return out;
}

}  // namespace lexstat
