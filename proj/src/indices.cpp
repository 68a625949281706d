#include "lexstat/indices.hpp"

#include "lexstat/error.hpp"
#include "lexstat/unicode.hpp"

namespace lexstat {

CorpusProfile corpus_profile(const std::vector<Token>& tokens,
                             const std::vector<SentenceSpan>& sentences, const FormLexicon& forms,
                             const LemmaLexicon* lemmas, const ProfileOptions& opts) {
  if (tokens.empty()) throw ValidationError("corpus_profile: empty corpus");
  if (opts.threshold < 1) throw ValidationError("corpus_profile: threshold must be >= 1");
  if (forms.total_tokens != static_cast<Count>(tokens.size())) {
    throw ValidationError("corpus_profile: form lexicon was built from a different token stream");
  }
  if (sentences.empty()) throw ValidationError("corpus_profile: no sentences");

  CorpusProfile p;
  p.threshold = opts.threshold;
  p.N = static_cast<Count>(tokens.size());
  p.F = static_cast<Count>(forms.entries.size());
  const double n = static_cast<double>(p.N);

  if (opts.word_length == WordLengthAverage::Tokens) {
    Count letters = 0;
    for (const auto& tok : tokens) letters += static_cast<Count>(unicode::count_letters(tok.surface));
    p.mean_word_len_letters = static_cast<double>(letters) / n;
  } else {
    Count letters = 0;
    for (const auto& [form, c] : forms.entries) letters += static_cast<Count>(unicode::count_letters(form));
    p.mean_word_len_letters = static_cast<double>(letters) / static_cast<double>(p.F);
  }
  p.mean_sentence_len_words = n / static_cast<double>(sentences.size());

  if (lemmas != nullptr) {
    p.V = static_cast<Count>(lemmas->vocabulary_size());
    if (*p.V > 0) {
      p.variety = static_cast<double>(*p.V) / n;
      p.density = n / static_cast<double>(*p.V);
    }
  }

  const CountMap* vocab = nullptr;
  if (opts.vocabulary == VocabularyBasis::Forms) {
    vocab = &forms.entries;
  } else if (lemmas != nullptr) {
    vocab = &lemmas->entries;
  }
  if (vocab != nullptr && !vocab->empty()) {
    Count hapax = 0, n_at = 0, v_at = 0;
    for (const auto& [item, c] : *vocab) {
      hapax += c == 1 ? 1 : 0;
      if (c >= opts.threshold) {
        n_at += c;
        ++v_at;
      }
    }
    const double v = static_cast<double>(vocab->size());
    p.hapax_V1 = hapax;
    p.excl_vocab = static_cast<double>(hapax) / v;
    p.excl_text = static_cast<double>(hapax) / n;
    p.N_at_threshold = n_at;
    p.V_at_threshold = v_at;
    p.conc_text = static_cast<double>(n_at) / n;
    p.conc_vocab = static_cast<double>(v_at) / v;
  }
  return p;
}

}  // namespace lexstat
