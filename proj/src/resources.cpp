#include "lexstat/resources.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "lexstat/error.hpp"
#include "lexstat/unicode.hpp"

namespace lexstat {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> fields;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

template <typename OnLine>
void for_each_line(std::istream& in, const std::string& label, OnLine&& on_line) {
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (number == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
    try {
      unicode::decode_utf8(raw);
    } catch (const DecodeError& e) {
      throw ResourceError(label, number, e.what());
    }
    if (trim(raw).empty() || raw.front() == '#') continue;
    Line line{number, split(raw, '\t')};
    for (auto& f : line.fields) f = trim(f);
    on_line(line);
  }
}

std::string folded_field(const Line& line, std::size_t i, const std::string& label, const char* what) {
  if (line.fields[i].empty()) throw ResourceError(label, line.number, std::string("empty ") + what);
  return unicode::fold(line.fields[i]);
}

double parse_double(const std::string& s, const std::string& label, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw ResourceError(label, line, "'" + s + "' is not a number");
  }
}

long long parse_integer(const std::string& s, const std::string& label, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ResourceError(label, line, "'" + s + "' is not an integer");
  }
  return v;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

LemmaMap parse_lemma_map(std::istream& in, const std::string& label) {
  struct Row {
    std::string lemma;
    std::optional<double> share;
    std::size_t line;
  };
  std::map<std::string, std::vector<Row>> groups;
  for_each_line(in, label, [&](const Line& line) {
    if (line.fields.size() < 2 || line.fields.size() > 3) {
      throw ResourceError(label, line.number, "expected form<TAB>lemma[<TAB>share]");
    }
    const std::string form = folded_field(line, 0, label, "form");
    if (line.fields[1].empty()) throw ResourceError(label, line.number, "empty lemma");
    Row row{line.fields[1], std::nullopt, line.number};
    if (line.fields.size() == 3) {
      row.share = parse_double(line.fields[2], label, line.number);
      if (*row.share < 0.0) throw ResourceError(label, line.number, "negative share");
    }
    auto& group = groups[form];
    for (const auto& existing : group) {
      if (existing.lemma == row.lemma) {
        throw ResourceError(label, line.number,
                            "duplicate row for form '" + form + "' and lemma '" + row.lemma + "'");
      }
    }
    group.push_back(std::move(row));
  });

  LemmaMap map;
  for (auto& [form, rows] : groups) {
    if (rows.size() == 1) {
      map.rows.emplace(form, rows.front().lemma);
      continue;
    }
    const bool with_share = rows.front().share.has_value();
    double total = 0.0;
    std::vector<LemmaShare> shares;
    for (const auto& row : rows) {
      if (row.share.has_value() != with_share) {
        throw ResourceError(label, row.line,
                            "form '" + form + "': either every candidate lemma has a share or none");
      }
      shares.push_back({row.lemma, row.share.value_or(1.0)});
      total += shares.back().share;
    }
    if (total <= 0.0) throw ResourceError(label, rows.back().line, "shares of '" + form + "' sum to zero");
    map.ambiguous.emplace(form, std::move(shares));
  }
  return map;
}

std::vector<MergeRule> parse_merge_rules(std::istream& in, const std::string& label) {
  std::vector<MergeRule> rules;
  std::set<std::string> seen;
  for_each_line(in, label, [&](const Line& line) {
    if (line.fields.size() != 2) {
      throw ResourceError(label, line.number, "expected canonical<TAB>variant1,variant2,...");
    }
    MergeRule rule;
    if (line.fields[0] != "*") rule.canonical = folded_field(line, 0, label, "canonical form");
    for (const auto& v : split(line.fields[1], ',')) {
      const std::string t = trim(v);
      if (t.empty()) throw ResourceError(label, line.number, "empty variant");
      rule.variants.push_back(unicode::fold(t));
    }
    for (const auto& form : rule.members()) {
      if (!seen.insert(form).second) {
        throw ResourceError(label, line.number, "form '" + form + "' already belongs to another rule");
      }
    }
    rules.push_back(std::move(rule));
  });
  return rules;
}

std::vector<LemmaOverride> parse_overrides(std::istream& in, const std::string& label) {
  std::vector<LemmaOverride> out;
  for_each_line(in, label, [&](const Line& line) {
    if (line.fields.size() != 3) throw ResourceError(label, line.number, "expected form<TAB>lemma<TAB>count");
    LemmaOverride ov;
    ov.form = folded_field(line, 0, label, "form");
    ov.lemma = line.fields[1];
    if (ov.lemma.empty()) throw ResourceError(label, line.number, "empty lemma");
    ov.count = parse_integer(line.fields[2], label, line.number);
    if (ov.count < 0) throw ResourceError(label, line.number, "negative count");
    out.push_back(std::move(ov));
  });
  return out;
}

G2PRules parse_g2p_rules(std::istream& in, const std::string& label) {
  G2PRules rules;
  for_each_line(in, label, [&](const Line& line) {
    if (line.fields.size() != 2) throw ResourceError(label, line.number, "expected grapheme<TAB>phonemes");
    if (line.fields[0] == "@default") {
      if (line.fields[1] == "none") {
        rules.default_phonemes.reset();
      } else {
        rules.default_phonemes = static_cast<int>(parse_integer(line.fields[1], label, line.number));
      }
      return;
    }
    const std::string g = folded_field(line, 0, label, "grapheme");
    const long long n = parse_integer(line.fields[1], label, line.number);
    if (n < 0) throw ResourceError(label, line.number, "negative phoneme count");
    rules.rules.push_back({unicode::decode_utf8(g), static_cast<int>(n)});
  });
  return rules;
}

LemmaMap load_lemma_map(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_lemma_map(in, path.string());
}

std::vector<MergeRule> load_merge_rules(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_merge_rules(in, path.string());
}

std::vector<LemmaOverride> load_overrides(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_overrides(in, path.string());
}

G2PRules load_g2p_rules(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_g2p_rules(in, path.string());
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lexstat
