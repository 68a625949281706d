#pragma once

// Loaders for the tab-separated resource files. Blank lines and lines
// starting with '#' are ignored; forms are case-folded on load.
//
//   lemma map     form<TAB>lemma[<TAB>share]
//   merge rules   canonical<TAB>variant1,variant2,...   ("*" = most frequent)
//   overrides     form<TAB>lemma<TAB>count
//   G2P rules     grapheme<TAB>phonemes, plus "@default<TAB>n|none"
//
// Malformed content throws ResourceError with the line number; an unreadable
// file throws IoError.

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "lexstat/distributions.hpp"
#include "lexstat/lexicon.hpp"

namespace lexstat {

LemmaMap parse_lemma_map(std::istream& in, const std::string& label = "<lemma map>");
std::vector<MergeRule> parse_merge_rules(std::istream& in, const std::string& label = "<merge rules>");
std::vector<LemmaOverride> parse_overrides(std::istream& in, const std::string& label = "<overrides>");
G2PRules parse_g2p_rules(std::istream& in, const std::string& label = "<g2p rules>");

LemmaMap load_lemma_map(const std::filesystem::path& path);
std::vector<MergeRule> load_merge_rules(const std::filesystem::path& path);
std::vector<LemmaOverride> load_overrides(const std::filesystem::path& path);
G2PRules load_g2p_rules(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace lexstat
