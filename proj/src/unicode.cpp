#include "lexstat/unicode.hpp"

#include <array>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/unistr.h>

#include "lexstat/error.hpp"

namespace lexstat::unicode {

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
      throw DecodeError("invalid UTF-8 lead byte", i);
    }
    if (i + len > n) throw DecodeError("truncated UTF-8 sequence", i);
    for (int k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) throw DecodeError("invalid UTF-8 continuation byte", i + k);
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min) throw DecodeError("overlong UTF-8 sequence", i);
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw DecodeError("invalid Unicode scalar value", i);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

std::u32string to_nfc(const std::u32string& text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  const auto src = icu::UnicodeString::fromUTF32(reinterpret_cast<const UChar32*>(text.data()),
                                                 static_cast<int32_t>(text.size()));
  if (nfc->isNormalized(src, status) && U_SUCCESS(status)) return text;
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = nfc->normalize(src, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  std::u32string out(static_cast<std::size_t>(normalized.countChar32()), U'\0');
  status = U_ZERO_ERROR;
  normalized.toUTF32(reinterpret_cast<UChar32*>(out.data()), static_cast<int32_t>(out.size()),
                     status);
  if (U_FAILURE(status)) throw Error("NFC conversion failed");
  return out;
}

char32_t fold(char32_t cp) {
  return static_cast<char32_t>(u_foldCase(static_cast<UChar32>(cp), U_FOLD_CASE_DEFAULT));
}

std::string fold(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  for (char32_t cp : decode_utf8(utf8)) append_utf8(out, fold(cp));
  return out;
}

namespace {

// Indexed by UCharCategory.
constexpr std::array<std::string_view, U_CHAR_CATEGORY_COUNT> kCategoryCodes = {
    "Cn", "Lu", "Ll", "Lt", "Lm", "Lo", "Mn", "Me", "Mc", "Nd", "Nl", "No", "Zs", "Zl", "Zp",
    "Cc", "Cf", "Co", "Cs", "Pd", "Ps", "Pe", "Pc", "Po", "Sm", "Sc", "Sk", "So", "Pi", "Pf"};

std::uint32_t category_mask(char32_t cp) { return U_GET_GC_MASK(static_cast<UChar32>(cp)); }

}  // namespace

std::string_view general_category(char32_t cp) {
  const auto cat = static_cast<std::size_t>(u_charType(static_cast<UChar32>(cp)));
  return cat < kCategoryCodes.size() ? kCategoryCodes[cat] : std::string_view{"Cn"};
}

bool is_known_category(std::string_view code) {
  for (auto c : kCategoryCodes) {
    if (c == code) return true;
  }
  return false;
}

int category_index(char32_t cp) { return static_cast<int>(u_charType(static_cast<UChar32>(cp))); }

int category_index(std::string_view code) {
  for (std::size_t i = 0; i < kCategoryCodes.size(); ++i) {
    if (kCategoryCodes[i] == code) return static_cast<int>(i);
  }
  return -1;
}

bool is_letter(char32_t cp) { return (category_mask(cp) & U_GC_L_MASK) != 0; }
bool is_digit(char32_t cp) { return (category_mask(cp) & U_GC_ND_MASK) != 0; }
bool is_mark(char32_t cp) { return (category_mask(cp) & U_GC_M_MASK) != 0; }
bool is_whitespace(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0; }
bool is_upper(char32_t cp) {
  return (category_mask(cp) & (U_GC_LU_MASK | U_GC_LT_MASK)) != 0;
}

Script script_of(char32_t cp) {
  UErrorCode status = U_ZERO_ERROR;
  const UScriptCode code = uscript_getScript(static_cast<UChar32>(cp), &status);
  if (U_FAILURE(status)) return Script::Other;
  switch (code) {
    case USCRIPT_CYRILLIC:
      return Script::Cyrillic;
    case USCRIPT_LATIN:
      return Script::Latin;
    case USCRIPT_COMMON:
    case USCRIPT_INHERITED:
      return Script::Common;
    default:
      return Script::Other;
  }
}

std::size_t count_letters(std::string_view utf8) {
  std::size_t n = 0;
  for (char32_t cp : decode_utf8(utf8)) n += is_letter(cp) ? 1 : 0;
  return n;
}

std::size_t count_codepoints(std::string_view utf8) {
  std::size_t n = 0;
  for (unsigned char c : utf8) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

}  // namespace lexstat::unicode
