#pragma once

// Frequency dictionaries over word-forms and lemmas.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexstat/text_ingest.hpp"

namespace lexstat {

using Count = std::int64_t;
using CountMap = std::map<std::string, Count>;

struct FormLexicon {
  CountMap entries;  // folded form -> occurrences (>= 1)
  Count total_tokens = 0;
  // Most frequent original casing per folded form, for reports.
  std::map<std::string, std::string> display;

  std::size_t size() const { return entries.size(); }
  Count count(const std::string& form) const;
};

// Spelling variants joined under one entry. Without a canonical form the
// variant with the highest count in the lexicon is used (ties: smallest).
struct MergeRule {
  std::vector<std::string> variants;
  std::optional<std::string> canonical;

  // canonical (if any) followed by the variants that differ from it
  std::vector<std::string> members() const;
};

struct LemmaShare {
  std::string lemma;
  double share = 1.0;
};

struct LemmaMap {
  std::map<std::string, std::string> rows;                   // unambiguous form -> lemma
  std::map<std::string, std::vector<LemmaShare>> ambiguous;  // homonymous forms

  bool empty() const { return rows.empty() && ambiguous.empty(); }
  // Throws ValidationError when a form is in both tables or shares are invalid.
  void validate() const;
};

// Manually resolved occurrences: `count` tokens of `form` belong to `lemma`.
struct LemmaOverride {
  std::string form;
  std::string lemma;
  Count count = 0;
};

struct LemmaLexicon {
  CountMap entries;  // lemma -> occurrences (>= 1)
  CountMap unmapped;  // forms absent from the lemma map
  Count mapped_tokens = 0;
  Count unmapped_tokens = 0;

  std::size_t vocabulary_size() const { return entries.size(); }
};

FormLexicon build_form_spectrum(const std::vector<Token>& tokens);

// Throws ValidationError naming the first form claimed by two rules.
void validate_merge_rules(const std::vector<MergeRule>& rules);

FormLexicon apply_merge_rules(const FormLexicon& lex, const std::vector<MergeRule>& rules);

// Splits `count` over weights by largest remainder; result sums to count.
// Ties in the remainder go to the lower index.
std::vector<Count> largest_remainder_split(Count count, const std::vector<double>& weights);

LemmaLexicon lemmatize(const FormLexicon& lex, const LemmaMap& map,
                       const std::vector<LemmaOverride>& overrides = {});

enum class AffixKind { Prefix, Suffix };

struct AffixPattern {
  AffixKind kind = AffixKind::Suffix;
  std::string literal;  // folded

  // "-ся" is a suffix, "за-" a prefix, a bare literal defaults to suffix.
  static AffixPattern parse(const std::string& text);
};

struct PatternCount {
  Count occurrences = 0;
  Count distinct_forms = 0;
};

PatternCount pattern_count(const FormLexicon& lex, const AffixPattern& pattern);

}  // namespace lexstat
