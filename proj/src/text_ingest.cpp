#include "lexstat/text_ingest.hpp"

#include <array>

#include "lexstat/error.hpp"
#include "lexstat/unicode.hpp"

namespace lexstat {

std::string_view to_string(ScriptClass s) {
  switch (s) {
    case ScriptClass::Cyrillic:
      return "Cyrillic";
    case ScriptClass::Latin:
      return "Latin";
    case ScriptClass::Alphanumeric:
      return "Alphanumeric";
    case ScriptClass::Mixed:
      return "Mixed";
  }
  return "?";
}

void TokenizerConfig::validate() const {
  for (const auto& code : letter_categories) {
    if (!unicode::is_known_category(code)) {
      throw ValidationError("unknown Unicode general category '" + code + "'");
    }
  }
  for (char32_t c : intra_token_chars) {
    if (unicode::is_whitespace(c)) {
      throw ValidationError("intra_token_chars must not contain whitespace");
    }
    if (sentence_terminators.find(c) != std::u32string::npos) {
      throw ValidationError("sentence terminator '" + unicode::encode_utf8(std::u32string(1, c)) +
                            "' is also an intra-token character");
    }
  }
  for (char32_t c : flanked_chars) {
    if (intra_token_chars.find(c) == std::u32string::npos) {
      throw ValidationError("flanked_chars must be a subset of intra_token_chars");
    }
  }
}

std::size_t Token::length() const { return unicode::count_codepoints(surface); }

ScriptClass classify_script(std::string_view surface) {
  if (surface.empty()) throw ValidationError("classify_script: empty surface");
  const std::u32string cps = unicode::decode_utf8(surface);
  bool digit = false;
  bool cyrillic = false;
  bool foreign = false;
  for (char32_t cp : cps) {
    if (unicode::is_digit(cp)) {
      digit = true;
    } else if (unicode::is_letter(cp)) {
      (unicode::script_of(cp) == unicode::Script::Cyrillic ? cyrillic : foreign) = true;
    }
  }
  if (digit || cps.front() == U'§') return ScriptClass::Alphanumeric;
  if (cyrillic && foreign) return ScriptClass::Mixed;
  if (cyrillic) return ScriptClass::Cyrillic;
  if (foreign) return ScriptClass::Latin;
  throw ValidationError("classify_script: '" + std::string(surface) +
                        "' has no letters or digits");
}

namespace {

class CharClasses {
 public:
  explicit CharClasses(const TokenizerConfig& cfg) : cfg_(cfg) {
    for (const auto& code : cfg.letter_categories) {
      const int idx = unicode::category_index(code);
      if (idx >= 0) letter_[static_cast<std::size_t>(idx)] = true;
    }
  }

  bool letter(char32_t cp) const {
    return letter_[static_cast<std::size_t>(unicode::category_index(cp))];
  }
  bool core(char32_t cp) const { return letter(cp) || unicode::is_digit(cp); }
  bool flanked(char32_t cp) const {
    return cfg_.flanked_chars.find(cp) != std::u32string::npos;
  }
  bool free_intra(char32_t cp) const {
    return cfg_.intra_token_chars.find(cp) != std::u32string::npos && !flanked(cp);
  }

 private:
  const TokenizerConfig& cfg_;
  std::array<bool, 32> letter_{};
};

std::vector<Token> tokenize_normalized(const std::u32string& text, const TokenizerConfig& cfg) {
  const CharClasses cc(cfg);
  std::vector<Token> tokens;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const char32_t first = text[i];
    if (!cc.core(first) && !cc.free_intra(first)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    bool has_core = cc.core(first);
    bool prev_word = has_core;  // previous codepoint is a letter/digit (or a mark on one)
    ++i;
    while (i < n) {
      const char32_t cp = text[i];
      if (cc.core(cp)) {
        has_core = true;
        prev_word = true;
      } else if (unicode::is_mark(cp)) {
        // attaches to whatever precedes it
      } else if (cc.flanked(cp)) {
        if (!(prev_word && i + 1 < n && cc.core(text[i + 1]))) break;
        prev_word = false;
      } else if (cc.free_intra(cp)) {
        prev_word = false;
      } else {
        break;
      }
      ++i;
    }
    if (!has_core) continue;
    Token tok;
    const std::u32string_view piece(text.data() + start, i - start);
    tok.surface = unicode::encode_utf8(piece);
    if (cfg.case_folding) {
      tok.folded.reserve(tok.surface.size());
      for (char32_t cp : piece) unicode::append_utf8(tok.folded, unicode::fold(cp));
    } else {
      tok.folded = tok.surface;
    }
    tok.char_offset = start;
    tok.script = classify_script(tok.surface);
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, const TokenizerConfig& cfg) {
  cfg.validate();
  return tokenize_normalized(unicode::to_nfc(unicode::decode_utf8(text)), cfg);
}

std::vector<SentenceSpan> split_sentences(const std::u32string& normalized,
                                          const std::vector<Token>& tokens,
                                          const TokenizerConfig& cfg) {
  std::vector<SentenceSpan> spans;
  const std::size_t count = tokens.size();
  std::size_t start = 0;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t gap_begin = tokens[t].char_offset + tokens[t].length();
    const std::size_t gap_end = t + 1 < count ? tokens[t + 1].char_offset : normalized.size();
    std::size_t p = gap_begin;
    while (p < gap_end && cfg.sentence_terminators.find(normalized[p]) == std::u32string::npos) {
      ++p;
    }
    if (p == gap_end) continue;
    if (normalized[p] == U'.' && p == gap_begin &&
        cfg.abbreviations.count(unicode::fold(tokens[t].surface)) > 0) {
      continue;
    }
    bool boundary = t + 1 == count;
    if (!boundary) {
      bool space = false;
      for (std::size_t q = p + 1; q < gap_end && !space; ++q) space = unicode::is_whitespace(normalized[q]);
      boundary = space && unicode::is_upper(normalized[gap_end]);
    }
    if (boundary) {
      spans.push_back({start, t + 1});
      start = t + 1;
    }
  }
  if (start < count) spans.push_back({start, count});
  return spans;
}

std::vector<SentenceSpan> split_sentences(std::string_view text, const TokenizerConfig& cfg) {
  return ingest(text, cfg).sentences;
}

IngestedText ingest(std::string_view text, const TokenizerConfig& cfg) {
  cfg.validate();
  IngestedText out;
  out.normalized = unicode::to_nfc(unicode::decode_utf8(text));
  out.tokens = tokenize_normalized(out.normalized, cfg);
  out.sentences = split_sentences(out.normalized, out.tokens, cfg);
  return out;
}

}  // namespace lexstat
