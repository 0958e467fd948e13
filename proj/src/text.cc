// Copyright 2026 The cskb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cskb/text.h"

#include <cstdio>

namespace cskb {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Latin-1 supplement letters are encoded as 0xC3 followed by 0x80..0xBF.
// Uppercase: 0x80..0x9E except 0x97 (multiplication sign).
bool IsLatinUpper(unsigned char lead, unsigned char next) {
  return lead == 0xC3 && next >= 0x80 && next <= 0x9E && next != 0x97;
}

bool IsLatinLower(unsigned char lead, unsigned char next) {
  return lead == 0xC3 && next >= 0xA0 && next <= 0xBE && next != 0xB7;
}

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80 || c == '_';
}

}  // namespace

std::string_view Trim(std::string_view s) {
  size_t begin = 0;
  while (begin < s.size() && IsSpace(s[begin])) ++begin;
  size_t end = s.size();
  while (end > begin && IsSpace(s[end - 1])) --end;
  return s.substr(begin, end - begin);
}

std::vector<std::string> Split(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  if (sep.empty()) {
    out.emplace_back(s);
    return out;
  }
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + sep.size();
  }
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    size_t start = i;
    while (i < s.size() && !IsSpace(s[i])) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string Join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (size_t i = 0; i < out.size(); ++i) {
    unsigned char c = out[i];
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c - 'A' + 'a');
    } else if (i + 1 < out.size() &&
               IsLatinUpper(c, static_cast<unsigned char>(out[i + 1]))) {
      out[i + 1] = static_cast<char>(out[i + 1] + 0x20);
      ++i;
    }
  }
  return out;
}

std::string LowerFirst(std::string_view s) {
  std::string out(s);
  if (out.empty()) return out;
  unsigned char c = out[0];
  if (c >= 'A' && c <= 'Z') {
    out[0] = static_cast<char>(c - 'A' + 'a');
  } else if (out.size() > 1 &&
             IsLatinUpper(c, static_cast<unsigned char>(out[1]))) {
    out[1] = static_cast<char>(out[1] + 0x20);
  }
  return out;
}

std::string UpperFirst(std::string_view s) {
  std::string out(s);
  if (out.empty()) return out;
  unsigned char c = out[0];
  if (c >= 'a' && c <= 'z') {
    out[0] = static_cast<char>(c - 'a' + 'A');
  } else if (out.size() > 1 &&
             IsLatinLower(c, static_cast<unsigned char>(out[1]))) {
    out[1] = static_cast<char>(out[1] - 0x20);
  }
  return out;
}

bool StartsWithUpper(std::string_view s) {
  if (s.empty()) return false;
  unsigned char c = s[0];
  if (c >= 'A' && c <= 'Z') return true;
  return s.size() > 1 && IsLatinUpper(c, static_cast<unsigned char>(s[1]));
}

bool IsAllUpper(std::string_view s) {
  int letters = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    unsigned char c = s[i];
    if (c >= 'A' && c <= 'Z') {
      ++letters;
    } else if (c >= 'a' && c <= 'z') {
      return false;
    } else if (i + 1 < s.size() && c == 0xC3) {
      unsigned char next = s[i + 1];
      if (IsLatinLower(c, next)) return false;
      if (IsLatinUpper(c, next)) ++letters;
      ++i;
    }
  }
  return letters >= 2;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::string_view StripPunctuation(std::string_view token) {
  auto punct = [](char c) {
    return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' ||
           c == '?';
  };
  while (!token.empty() && punct(token.back())) token.remove_suffix(1);
  while (!token.empty() && punct(token.front())) token.remove_prefix(1);
  return token;
}

uint64_t Fnv1a64(std::string_view data, uint64_t seed) {
  uint64_t hash = seed;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string HexDigest(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

bool ContainsWordIgnoreCase(std::string_view text, std::string_view needle) {
  std::string hay = ToLower(text);
  std::string pin = ToLower(Trim(needle));
  if (pin.empty()) return false;
  size_t pos = 0;
  while ((pos = hay.find(pin, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !IsWordByte(hay[pos - 1]);
    size_t end = pos + pin.size();
    bool right_ok = end >= hay.size() || !IsWordByte(hay[end]);
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

}  // namespace cskb
