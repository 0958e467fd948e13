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

// Small UTF-8 aware string helpers shared by every module. Case mapping only
// covers ASCII and the Latin-1 supplement, which is all Portuguese and
// English text needs.

#ifndef CSKB_TEXT_H_
#define CSKB_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cskb {

std::string_view Trim(std::string_view s);

// Splits on every occurrence of `sep`; empty fields are kept.
std::vector<std::string> Split(std::string_view s, std::string_view sep);

// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string> SplitWhitespace(std::string_view s);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

std::string ToLower(std::string_view s);

// Lowercases the first character if it is an uppercase letter.
std::string LowerFirst(std::string_view s);

// Uppercases the first character if it is a lowercase letter.
std::string UpperFirst(std::string_view s);

bool StartsWithUpper(std::string_view s);

// True when the word has at least two letters and all letters are uppercase
// (acronyms such as "SP" or "HIV").
bool IsAllUpper(std::string_view s);

bool StartsWith(std::string_view s, std::string_view prefix);
bool EndsWith(std::string_view s, std::string_view suffix);

// Strips sentence punctuation (.,;:!?) from both ends of a token.
std::string_view StripPunctuation(std::string_view token);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
uint64_t Fnv1a64(std::string_view data, uint64_t seed = 14695981039346656037ull);
std::string HexDigest(uint64_t value);

// True if `needle` occurs in `text` as a whole word sequence, ignoring case.
bool ContainsWordIgnoreCase(std::string_view text, std::string_view needle);

}  // namespace cskb

#endif  // CSKB_TEXT_H_
