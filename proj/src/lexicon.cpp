#include "lexstat/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lexstat/error.hpp"
#include "lexstat/unicode.hpp"

namespace lexstat {

Count FormLexicon::count(const std::string& form) const {
  const auto it = entries.find(form);
  return it == entries.end() ? 0 : it->second;
}

std::vector<std::string> MergeRule::members() const {
  std::vector<std::string> out;
  if (canonical) out.push_back(*canonical);
  for (const auto& v : variants) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

void LemmaMap::validate() const {
  for (const auto& [form, shares] : ambiguous) {
    if (rows.count(form) > 0) {
      throw ValidationError("form '" + form + "' is both unambiguous and ambiguous in the lemma map");
    }
    if (shares.empty()) throw ValidationError("form '" + form + "' has no lemma candidates");
    double total = 0.0;
    for (const auto& s : shares) {
      if (!(s.share >= 0.0) || !std::isfinite(s.share)) {
        throw ValidationError("form '" + form + "' has a negative or non-finite share");
      }
      total += s.share;
    }
    if (total <= 0.0) throw ValidationError("form '" + form + "' has shares summing to zero");
  }
}

FormLexicon build_form_spectrum(const std::vector<Token>& tokens) {
  FormLexicon lex;
  std::map<std::string, std::map<std::string, Count>> casings;
  for (const auto& tok : tokens) {
    ++lex.entries[tok.folded];
    ++casings[tok.folded][tok.surface];
  }
  lex.total_tokens = static_cast<Count>(tokens.size());
  for (const auto& [form, variants] : casings) {
    // std::map order makes max_element pick the smallest surface among ties
    const auto best = std::max_element(variants.begin(), variants.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    lex.display.emplace(form, best->first);
  }
  return lex;
}

void validate_merge_rules(const std::vector<MergeRule>& rules) {
  std::set<std::string> seen;
  for (const auto& rule : rules) {
    if (rule.variants.empty()) throw ValidationError("merge rule without variants");
    for (const auto& form : rule.members()) {
      if (form.empty()) throw ValidationError("merge rule contains an empty form");
      if (!seen.insert(form).second) {
        throw ValidationError("form '" + form + "' appears in more than one merge rule");
      }
    }
  }
}

FormLexicon apply_merge_rules(const FormLexicon& lex, const std::vector<MergeRule>& rules) {
  validate_merge_rules(rules);
  FormLexicon out = lex;
  for (const auto& rule : rules) {
    const auto members = rule.members();
    Count mass = 0;
    std::string canonical;
    Count best = -1;
    for (const auto& form : members) {
      const Count c = out.count(form);
      mass += c;
      if (c > best || (c == best && form < canonical)) {
        best = c;
        canonical = form;
      }
    }
    if (rule.canonical) canonical = *rule.canonical;
    if (mass == 0) continue;

    std::string display = canonical;
    if (const auto it = out.display.find(canonical); it != out.display.end()) display = it->second;
    for (const auto& form : members) {
      out.entries.erase(form);
      out.display.erase(form);
    }
    out.entries[canonical] = mass;
    out.display[canonical] = display;
  }
  return out;
}

std::vector<Count> largest_remainder_split(Count count, const std::vector<double>& weights) {
  if (weights.empty()) throw ValidationError("largest_remainder_split: no weights");
  const long double total = std::accumulate(weights.begin(), weights.end(), 0.0L);
  if (!(total > 0.0L)) throw ValidationError("largest_remainder_split: weights sum to zero");

  // Quotas are snapped to nearby integers and remainders quantized, so that
  // decimal shares such as 0.7 tie and round exactly as written.
  constexpr long double quantum = 1e-9L;
  std::vector<Count> out(weights.size());
  std::vector<std::int64_t> remainder(weights.size());
  Count assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    long double quota = static_cast<long double>(count) * weights[i] / total;
    const long double nearest = std::round(quota);
    if (std::fabs(quota - nearest) < quantum * std::max(1.0L, quota)) quota = nearest;
    out[i] = static_cast<Count>(std::floor(quota));
    remainder[i] = std::llround((quota - static_cast<long double>(out[i])) / quantum);
    assigned += out[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < count; ++k, ++assigned) ++out[order[k % order.size()]];
  return out;
}

LemmaLexicon lemmatize(const FormLexicon& lex, const LemmaMap& map,
                       const std::vector<LemmaOverride>& overrides) {
  map.validate();
  std::map<std::string, CountMap> pinned;
  for (const auto& ov : overrides) {
    if (ov.count < 0) throw ValidationError("negative override count for '" + ov.form + "'");
    pinned[ov.form][ov.lemma] += ov.count;
  }
  for (const auto& [form, lemmas] : pinned) {
    Count sum = 0;
    for (const auto& [lemma, c] : lemmas) sum += c;
    const Count available = lex.count(form);
    if (sum > available) {
      throw ValidationError("overrides for '" + form + "' pin " + std::to_string(sum) +
                            " occurrences but the form occurs " + std::to_string(available) +
                            " times");
    }
  }

  LemmaLexicon out;
  for (const auto& [form, count] : lex.entries) {
    Count rest = count;
    if (const auto it = pinned.find(form); it != pinned.end()) {
      for (const auto& [lemma, c] : it->second) {
        if (c > 0) out.entries[lemma] += c;
        rest -= c;
      }
    }
    if (rest == 0) continue;
    if (const auto row = map.rows.find(form); row != map.rows.end()) {
      out.entries[row->second] += rest;
    } else if (const auto amb = map.ambiguous.find(form); amb != map.ambiguous.end()) {
      auto shares = amb->second;
      std::sort(shares.begin(), shares.end(),
                [](const LemmaShare& a, const LemmaShare& b) { return a.lemma < b.lemma; });
      std::vector<double> weights;
      for (const auto& s : shares) weights.push_back(s.share);
      const auto split = largest_remainder_split(rest, weights);
      for (std::size_t i = 0; i < shares.size(); ++i) {
        if (split[i] > 0) out.entries[shares[i].lemma] += split[i];
      }
    } else {
      out.unmapped[form] += rest;
      out.unmapped_tokens += rest;
    }
  }
  for (const auto& [lemma, c] : out.entries) out.mapped_tokens += c;
  return out;
}

AffixPattern AffixPattern::parse(const std::string& text) {
  AffixPattern p;
  if (text.find_first_not_of('-') == std::string::npos) throw ValidationError("empty affix pattern");
  if (text.size() > 1 && text.front() == '-') {
    p.kind = AffixKind::Suffix;
    p.literal = text.substr(1);
  } else if (text.size() > 1 && text.back() == '-') {
    p.kind = AffixKind::Prefix;
    p.literal = text.substr(0, text.size() - 1);
  } else {
    p.literal = text;
  }
  if (p.literal.empty()) throw ValidationError("empty affix pattern");
  p.literal = unicode::fold(p.literal);
  return p;
}

PatternCount pattern_count(const FormLexicon& lex, const AffixPattern& pattern) {
  if (pattern.literal.empty()) throw ValidationError("pattern_count: empty pattern");
  PatternCount out;
  const std::string_view lit = pattern.literal;
  for (const auto& [form, count] : lex.entries) {
    const std::string_view f = form;
    const bool hit = pattern.kind == AffixKind::Suffix ? f.ends_with(lit) : f.starts_with(lit);
    if (hit) {
      out.occurrences += count;
      ++out.distinct_forms;
    }
  }
  return out;
}

}  // namespace lexstat
