#pragma once

// Scalar corpus statistics: text size, vocabulary, richness, exclusiveness
// and concentration indices, mean word and sentence length.

#include <optional>
#include <string>
#include <vector>

#include "lexstat/lexicon.hpp"
#include "lexstat/text_ingest.hpp"

namespace lexstat {

// Lexicon over which hapax and concentration are counted.
enum class VocabularyBasis { Lemmas, Forms };
// Whether mean word length averages over running tokens or distinct forms.
enum class WordLengthAverage { Tokens, Forms };

struct ProfileOptions {
  Count threshold = 10;
  VocabularyBasis vocabulary = VocabularyBasis::Lemmas;
  WordLengthAverage word_length = WordLengthAverage::Tokens;
};

// Fields dependent on the lemma lexicon are empty when it is unavailable.
struct CorpusProfile {
  Count N = 0;
  Count F = 0;
  std::optional<Count> V;
  std::optional<double> variety;
  std::optional<double> density;
  std::optional<Count> hapax_V1;
  std::optional<double> excl_vocab;
  std::optional<double> excl_text;
  std::optional<Count> N_at_threshold;
  std::optional<Count> V_at_threshold;
  std::optional<double> conc_text;
  std::optional<double> conc_vocab;
  double mean_word_len_letters = 0.0;
  double mean_sentence_len_words = 0.0;
  Count threshold = 10;
};

CorpusProfile corpus_profile(const std::vector<Token>& tokens,
                             const std::vector<SentenceSpan>& sentences, const FormLexicon& forms,
                             const LemmaLexicon* lemmas, const ProfileOptions& opts = {});

}  // namespace lexstat
