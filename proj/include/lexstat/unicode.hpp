#pragma once

// Thin UTF-8 / Unicode property layer. Character properties come from ICU.

#include <cstdint>
#include <string>
#include <string_view>

namespace lexstat::unicode {

// Strict UTF-8 decoding: rejects overlong forms, surrogates and values
// above U+10FFFF. Throws DecodeError carrying the offending byte offset.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

std::u32string to_nfc(const std::u32string& text);

// Simple (1:1) case folding.
char32_t fold(char32_t cp);
std::string fold(std::string_view utf8);

// Two-letter Unicode general category, e.g. "Lu", "Nd", "Zs".
std::string_view general_category(char32_t cp);
bool is_known_category(std::string_view code);
// Dense index of a category (0..29); code lookup returns -1 when unknown.
int category_index(char32_t cp);
int category_index(std::string_view code);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_mark(char32_t cp);
bool is_whitespace(char32_t cp);
bool is_upper(char32_t cp);

enum class Script { Cyrillic, Latin, Other, Common };
Script script_of(char32_t cp);

// Number of codepoints with a letter general category (L*).
std::size_t count_letters(std::string_view utf8);
std::size_t count_codepoints(std::string_view utf8);

}  // namespace lexstat::unicode
