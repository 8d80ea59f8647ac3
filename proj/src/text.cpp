// Copyright 2026 The scholarlda Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tokenizer and stoplist handling.
//
// Character classes for code points outside ASCII are coarse: the common
// punctuation, symbol and emoji blocks plus the non-ASCII decimal digit
// ranges are recognised, everything else counts as a letter. Case folding
// covers ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic.

#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "scholarlda/corpus.hpp"

namespace scholarlda {
namespace {

enum class CharClass { kLetter, kDigit, kSeparator };

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at text[i] and advances i. Malformed
// sequences decode to U+FFFD and consume a single byte.
char32_t next_code_point(std::string_view text, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(text[i]);
  if (lead < 0x80) {
    ++i;
    return lead;
  }
  std::size_t extra = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++i;
    return kReplacement;
  }
  if (i + extra >= text.size()) {
    ++i;
    return kReplacement;
  }
  for (std::size_t j = 1; j <= extra; ++j) {
    const auto cont = static_cast<unsigned char>(text[i + j]);
    if ((cont & 0xC0) != 0x80) {
      ++i;
      return kReplacement;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  i += extra + 1;
  // Overlong forms and surrogates.
  static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLength[extra] || (cp >= 0xD800 && cp <= 0xDFFF) ||
      cp > 0x10FFFF) {
    return kReplacement;
  }
  return cp;
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

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

CharClass classify(char32_t cp) {
  if (cp < 0x80) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) {
      return CharClass::kLetter;
    }
    if (cp >= '0' && cp <= '9') return CharClass::kDigit;
    return CharClass::kSeparator;
  }
  if (in(cp, 0x0660, 0x0669) || in(cp, 0x06F0, 0x06F9) ||
      in(cp, 0x0966, 0x096F) || in(cp, 0xFF10, 0xFF19) ||
      in(cp, 0x00B2, 0x00B3) || cp == 0x00B9 || in(cp, 0x00BC, 0x00BE)) {
    return CharClass::kDigit;
  }
  if (cp == 0x00AA || cp == 0x00B5 || cp == 0x00BA) return CharClass::kLetter;
  if (in(cp, 0x0080, 0x00BF) || cp == 0x00D7 || cp == 0x00F7 ||
      in(cp, 0x2000, 0x2BFF) || in(cp, 0x2E00, 0x2E7F) ||
      in(cp, 0x3000, 0x303F) || in(cp, 0xE000, 0xF8FF) ||
      in(cp, 0xFE30, 0xFE4F) || in(cp, 0xFF00, 0xFF0F) ||
      in(cp, 0xFF1A, 0xFF20) || in(cp, 0xFF3B, 0xFF40) ||
      in(cp, 0xFF5B, 0xFF65) || in(cp, 0xFFF0, 0xFFFF) ||
      in(cp, 0x1F000, 0x1FAFF)) {
    return CharClass::kSeparator;
  }
  return CharClass::kLetter;
}

char32_t fold_case(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0x80) return cp;
  if (in(cp, 0x00C0, 0x00DE) && cp != 0x00D7) return cp + 0x20;
  if (in(cp, 0x0100, 0x0137) || in(cp, 0x014A, 0x0177)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (in(cp, 0x0139, 0x0148) || in(cp, 0x0179, 0x017E)) {
    return (cp % 2 == 1) ? cp + 1 : cp;
  }
  if (cp == 0x0178) return 0x00FF;
  if (in(cp, 0x0391, 0x03A9) && cp != 0x03A2) return cp + 0x20;
  if (in(cp, 0x0410, 0x042F)) return cp + 0x20;
  if (in(cp, 0x0400, 0x040F)) return cp + 0x50;
  return cp;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string fold_string(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    append_utf8(out, fold_case(next_code_point(text, i)));
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> terms;
  std::string run;
  std::size_t run_chars = 0;
  bool run_has_digit = false;

  auto flush = [&] {
    if (run_chars >= 2 && !run_has_digit) terms.push_back(run);
    run.clear();
    run_chars = 0;
    run_has_digit = false;
  };

  for (std::size_t i = 0; i < text.size();) {
    const char32_t cp = next_code_point(text, i);
    switch (classify(cp)) {
      case CharClass::kLetter:
        append_utf8(run, fold_case(cp));
        ++run_chars;
        break;
      case CharClass::kDigit:
        run_has_digit = true;
        ++run_chars;
        break;
      case CharClass::kSeparator:
        flush();
        break;
    }
  }
  flush();
  return terms;
}

std::vector<std::string> apply_stoplist(const std::vector<std::string>& terms,
                                        const Stoplist& stoplist) {
  std::vector<std::string> kept;
  kept.reserve(terms.size());
  for (const auto& term : terms) {
    if (!stoplist.contains(term)) kept.push_back(term);
  }
  return kept;
}

Stoplist Stoplist::parse(std::istream& in) {
  Stoplist stoplist;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    if (entry.find_first_of(" \t") != std::string_view::npos) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "stoplist line " + std::to_string(line_no) +
                      ": entry contains whitespace");
    }
    stoplist.insert(std::string(entry));
  }
  return stoplist;
}

Stoplist Stoplist::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound,
                "cannot open stoplist: " + path.string());
  }
  return parse(in);
}

extern const char* const kBundledEnglishStoplist;

const Stoplist& Stoplist::english() {
  static const Stoplist stoplist = [] {
    std::istringstream in(kBundledEnglishStoplist);
    return parse(in);
  }();
  return stoplist;
}

bool Stoplist::contains(std::string_view term) const {
  return terms_.find(std::string(term)) != terms_.end();
}

void Stoplist::insert(std::string term) {
  terms_.insert(fold_string(term));
}

}  // namespace scholarlda
