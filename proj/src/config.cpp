#include "lexstat/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "lexstat/error.hpp"
#include "lexstat/unicode.hpp"

namespace lexstat {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

class Parser {
 public:
  Parser(const std::string& label, std::filesystem::path base) : label_(label), base_(std::move(base)) {}

  [[noreturn]] void fail(const std::string& what) const { throw ResourceError(label_, line_, what); }

  void run(std::istream& in, RunConfig& cfg) {
    std::string raw;
    std::string section;
    bool have_text = false;
    while (std::getline(in, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (line_ == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
      const std::string text = trim(raw);
      if (text.empty() || text.front() == '#' || text.front() == ';') continue;
      if (text.front() == '[') {
        if (text.back() != ']') fail("unterminated section header");
        section = trim(text.substr(1, text.size() - 2));
        static const std::set<std::string> known = {"input", "output", "tokenizer", "analysis", "fits"};
        if (known.count(section) == 0) fail("unknown section [" + section + "]");
        continue;
      }
      const auto eq = text.find('=');
      if (eq == std::string::npos) fail("expected key = value");
      const std::string key = trim(text.substr(0, eq));
      const std::string value = trim(text.substr(eq + 1));
      if (key.empty()) fail("empty key");
      try {
        unicode::decode_utf8(value);
      } catch (const DecodeError& e) {
        fail(e.what());
      }
      if (section.empty()) fail("key '" + key + "' outside of a section");
      apply(cfg, section, key, value);
      if (section == "input" && key == "text") have_text = !value.empty();
    }
    if (!have_text) {
      line_ = 0;
      fail("[input] text is required");
    }
  }

 private:
  std::filesystem::path path(const std::string& v) const {
    std::filesystem::path p(v);
    return p.is_absolute() ? p : base_ / p;
  }

  std::optional<std::filesystem::path> optional_path(const std::string& v) const {
    if (v.empty()) return std::nullopt;
    return path(v);
  }

  bool boolean(const std::string& v) const {
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    fail("'" + v + "' is not a boolean");
  }

  double number(const std::string& v) const {
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used == v.size()) return d;
    } catch (const std::logic_error&) {
    }
    fail("'" + v + "' is not a number");
  }

  long long integer(const std::string& v) const {
    try {
      std::size_t used = 0;
      const long long n = std::stoll(v, &used);
      if (used == v.size()) return n;
    } catch (const std::logic_error&) {
    }
    fail("'" + v + "' is not an integer");
  }

  template <typename F>
  auto guarded(F&& f) const {
    try {
      return f();
    } catch (const ValidationError& e) {
      fail(e.what());
    }
  }

  void apply(RunConfig& cfg, const std::string& section, const std::string& key, const std::string& v) {
    auto unknown = [&] { fail("unknown key '" + key + "' in [" + section + "]"); };
    if (section == "input") {
      if (key == "text") cfg.text = path(v);
      else if (key == "lemma_map") cfg.lemma_map = optional_path(v);
      else if (key == "merge_rules") cfg.merge_rules = optional_path(v);
      else if (key == "overrides") cfg.overrides = optional_path(v);
      else if (key == "g2p_rules") cfg.g2p_rules = optional_path(v);
      else unknown();
    } else if (section == "output") {
      if (key == "dir") cfg.output_dir = path(v);
      else if (key == "plot_header") cfg.plot_header = boolean(v);
      else unknown();
    } else if (section == "tokenizer") {
      auto& t = cfg.tokenizer;
      if (key == "letter_categories") {
        const auto list = split_list(v);
        for (const auto& c : list) {
          if (!unicode::is_known_category(c)) fail("unknown general category '" + c + "'");
        }
        t.letter_categories = {list.begin(), list.end()};
      } else if (key == "intra_token_chars") {
        t.intra_token_chars = unicode::decode_utf8(v);
      } else if (key == "flanked_chars") {
        t.flanked_chars = unicode::decode_utf8(v);
      } else if (key == "case_folding") {
        t.case_folding = boolean(v);
      } else if (key == "sentence_terminators") {
        t.sentence_terminators = unicode::decode_utf8(v);
      } else if (key == "abbreviations") {
        t.abbreviations.clear();
        for (const auto& a : split_list(v)) t.abbreviations.insert(unicode::fold(a));
      } else {
        unknown();
      }
    } else if (section == "analysis") {
      if (key == "vowels") {
        cfg.vowels = parse_vowels(v);
      } else if (key == "basis") {
        cfg.basis = guarded([&] { return parse_basis(v); });
      } else if (key == "threshold") {
        cfg.profile.threshold = integer(v);
        if (cfg.profile.threshold < 1) fail("threshold must be >= 1");
      } else if (key == "vocabulary_basis") {
        if (v == "lemmas") cfg.profile.vocabulary = VocabularyBasis::Lemmas;
        else if (v == "forms") cfg.profile.vocabulary = VocabularyBasis::Forms;
        else fail("vocabulary_basis must be 'lemmas' or 'forms'");
      } else if (key == "word_length_average") {
        if (v == "tokens") cfg.profile.word_length = WordLengthAverage::Tokens;
        else if (v == "forms") cfg.profile.word_length = WordLengthAverage::Forms;
        else fail("word_length_average must be 'tokens' or 'forms'");
      } else if (key == "rank_items") {
        if (v == "lemmas") cfg.rank_items = RankItems::Lemmas;
        else if (v == "forms") cfg.rank_items = RankItems::Forms;
        else fail("rank_items must be 'lemmas' or 'forms'");
      } else if (key == "top_k") {
        const long long k = integer(v);
        if (k < 1) fail("top_k must be >= 1");
        cfg.top_k = static_cast<std::size_t>(k);
      } else if (key == "min_support") {
        cfg.min_support = integer(v);
        if (cfg.min_support < 1) fail("min_support must be >= 1");
      } else {
        unknown();
      }
    } else if (section == "fits") {
      apply_fits(cfg, key, v);
    }
  }

  void apply_fits(RunConfig& cfg, const std::string& key, const std::string& v) {
    auto& o = cfg.fit_options;
    if (key == "models") {
      cfg.fits.clear();
      for (const auto& name : split_list(v)) {
        const auto id = fitlab::parse_model_id(name);
        if (!id) fail("unknown model '" + name + "'");
        cfg.fits.push_back(*id);
      }
    } else if (key == "zipf_intervals") {
      cfg.zipf_intervals = guarded([&] { return fitlab::parse_intervals(v); });
    } else if (key == "coverage_intervals") {
      cfg.coverage_intervals = guarded([&] { return fitlab::parse_intervals(v); });
    } else if (key == "zipf_mandelbrot_space") {
      if (v == "linear") cfg.zipf_mandelbrot_space = fitlab::ResidualSpace::Linear;
      else if (v == "log") cfg.zipf_mandelbrot_space = fitlab::ResidualSpace::Log;
      else fail("zipf_mandelbrot_space must be 'linear' or 'log'");
    } else if (key == "max_iterations") {
      o.max_iterations = static_cast<int>(integer(v));
    } else if (key == "gradient_tol") {
      o.gradient_tol = number(v);
    } else if (key == "step_tol") {
      o.step_tol = number(v);
    } else if (key == "initial_lambda") {
      o.initial_lambda = number(v);
    } else if (key == "lambda_up") {
      o.lambda_up = number(v);
    } else if (key == "lambda_down") {
      o.lambda_down = number(v);
    } else if (key == "fd_relative_step") {
      o.fd_relative_step = number(v);
    } else if (key.starts_with("init.")) {
      // init.<model>.<param>
      const auto dot = key.find('.', 5);
      if (dot == std::string::npos) fail("expected init.<model>.<param>");
      const std::string model = key.substr(5, dot - 5);
      const std::string param = key.substr(dot + 1);
      const auto id = fitlab::parse_model_id(model);
      if (!id) fail("unknown model '" + model + "'");
      if (!fitlab::Model::get(*id).param_index(param)) {
        fail("model '" + model + "' has no parameter '" + param + "'");
      }
      cfg.init_overrides[*id][param] = number(v);
    } else {
      fail("unknown key '" + key + "' in [fits]");
    }
  }

  std::string label_;
  std::filesystem::path base_;
  std::size_t line_ = 0;
};

}  // namespace

RunConfig parse_run_config(std::istream& in, const std::string& label,
                           const std::filesystem::path& base_dir) {
  RunConfig cfg;
  cfg.output_dir = base_dir / "out";
  Parser parser(label, base_dir);
  parser.run(in, cfg);
  try {
    cfg.fit_options.validate();
    cfg.tokenizer.validate();
  } catch (const ValidationError& e) {
    throw ResourceError(label, 0, e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse_run_config(in, path.string(), path.parent_path());
}

std::set<std::string> parse_stages(const std::string& csv) {
  std::set<std::string> out;
  for (const auto& s : split_list(csv)) {
    bool known = false;
    for (const auto& k : all_stages()) known = known || k == s;
    if (!known) throw ValidationError("unknown stage '" + s + "'");
    out.insert(s);
  }
  if (out.empty()) throw ValidationError("no stages selected");
  return out;
}

}  // namespace lexstat
