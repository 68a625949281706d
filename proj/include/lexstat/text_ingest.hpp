#pragma once

// Tokenization and sentence segmentation of raw UTF-8 text.
//
// A token is a maximal run of letters, digits and intra-token characters that
// contains at least one letter or digit. Flanked characters (hyphen and
// apostrophes by default) stay inside a token only when they sit between two
// word characters, so "60-ий" is a single token while a dash surrounded by
// spaces separates. Combining marks attach to the preceding word character.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lexstat {

enum class ScriptClass { Cyrillic, Latin, Alphanumeric, Mixed };

std::string_view to_string(ScriptClass s);

struct TokenizerConfig {
  // General-category codes ("Lu", "Ll", ...) whose members count as letters.
  std::set<std::string> letter_categories{"Lu", "Ll", "Lt", "Lm", "Lo"};
  // Allowed inside tokens in addition to letters and decimal digits.
  std::u32string intra_token_chars = U"-'’ʼ§";
  // Subset of intra_token_chars admitted only between two word characters.
  std::u32string flanked_chars = U"-'’ʼ";
  bool case_folding = true;
  std::u32string sentence_terminators = U".!?…";
  // Folded token forms after which a '.' does not end a sentence.
  std::set<std::string> abbreviations{"т", "д", "п", "ін", "ім", "пп", "св",  "ст",
                                      "див", "напр", "mr", "mrs", "dr", "st", "vs"};

  // Throws ValidationError when the invariants between the character sets
  // are broken (whitespace inside tokens, terminators inside tokens, ...).
  void validate() const;
};

struct Token {
  std::string surface;  // original casing, NFC
  std::string folded;   // lexicon key
  std::size_t char_offset = 0;  // codepoint offset into the NFC text
  ScriptClass script = ScriptClass::Cyrillic;

  std::size_t length() const;  // in codepoints
};

struct SentenceSpan {
  std::size_t start_token = 0;
  std::size_t end_token = 0;  // exclusive

  std::size_t size() const { return end_token - start_token; }
};

// Tokens are ordered by char_offset. NFC is applied first; invalid UTF-8
// throws DecodeError.
std::vector<Token> tokenize(std::string_view text, const TokenizerConfig& cfg = {});

// Spans index into tokenize(text, cfg) and partition it. A sentence ends at
// the first terminator after a token, provided the next token starts with an
// uppercase letter after whitespace, or the text ends.
std::vector<SentenceSpan> split_sentences(std::string_view text, const TokenizerConfig& cfg = {});

// Throws ValidationError on an empty surface or one without letters, digits
// or a leading section sign.
ScriptClass classify_script(std::string_view surface);

struct IngestedText {
  std::u32string normalized;
  std::vector<Token> tokens;
  std::vector<SentenceSpan> sentences;
};

// Single-pass tokenize + split_sentences.
IngestedText ingest(std::string_view text, const TokenizerConfig& cfg = {});

std::vector<SentenceSpan> split_sentences(const std::u32string& normalized,
                                          const std::vector<Token>& tokens,
                                          const TokenizerConfig& cfg);

}  // namespace lexstat
