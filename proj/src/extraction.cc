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

#include "cskb/extraction.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "cskb/errors.h"
#include "cskb/text.h"

namespace cskb {

namespace {

std::string ReadAll(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string TokenKey(std::string_view token) {
  return ToLower(StripPunctuation(token));
}

bool EndsClause(std::string_view token) {
  return !token.empty() && (token.back() == ',' || token.back() == ';' ||
                            token.back() == ':' || token.back() == '.');
}

// Index of the first occurrence of `needle` (already lowercased) in tokens.
std::optional<size_t> FindAnchor(std::span<const std::string> tokens,
                                 const std::vector<std::string> &needle) {
  if (needle.empty() || needle.size() > tokens.size()) return std::nullopt;
  for (size_t start = 0; start + needle.size() <= tokens.size(); ++start) {
    bool match = true;
    for (size_t k = 0; k < needle.size() && match; ++k) {
      match = TokenKey(tokens[start + k]) == needle[k];
    }
    if (match) return start;
  }
  return std::nullopt;
}

std::vector<std::string> LowerTokens(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string &t : SplitWhitespace(text)) out.push_back(TokenKey(t));
  return out;
}

}  // namespace

ExportLine ParseExportLine(std::string_view line) {
  std::string_view s = line;
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  std::vector<std::string> slots = Split(s, "$$");
  if (slots.size() != 7) {
    throw ParseError("export line has " + std::to_string(slots.size()) +
                     " slots, expected 7: " + std::string(line));
  }
  ExportLine out;
  out.text = std::string(Trim(slots[0]));
  if (out.text.empty()) throw ParseError("export line with empty statement");
  if (Trim(slots[3]).empty()) throw ParseError("export line without education");
  try {
    out.profile = MakeProfile(
        Trim(slots[1]), Trim(slots[2]), Trim(slots[3]), Trim(slots[4]),
        Trim(slots[5]),
        EducationVocabulary(std::set<std::string>{std::string(Trim(slots[3]))}));
  } catch (const ValidationError &e) {
    throw ParseError(std::string("bad profile slots: ") + e.what());
  }
  std::string_view id_text = Trim(slots[6]);
  auto [ptr, ec] =
      std::from_chars(id_text.data(), id_text.data() + id_text.size(), out.id);
  if (ec != std::errc() || ptr != id_text.data() + id_text.size() ||
      out.id <= 0) {
    throw ParseError("bad statement id: '" + std::string(id_text) + "'");
  }
  return out;
}

std::string FormatExportLine(const ExportLine &line) {
  std::string out = line.text;
  for (const std::string &slot : ProfileSlots(line.profile)) {
    out += "$$";
    out += slot;
  }
  out += "$$";
  out += std::to_string(line.id);
  return out;
}

RuleSet RuleSet::Parse(std::string_view text) {
  RuleSet set;
  int lineno = 0;
  for (const std::string &raw : Split(text, "\n")) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line)[0] == '#') continue;
    std::vector<std::string> fields = Split(line, "\t");
    if (fields.size() != 3) {
      throw ParseError("rule line " + std::to_string(lineno) +
                       ": expected TYPE<TAB>anchor<TAB>pattern");
    }
    try {
      set.Add(std::string(Trim(fields[0])), std::string(Trim(fields[1])),
              fields[2]);
    } catch (const ValidationError &e) {
      throw ParseError("rule line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return set;
}

RuleSet RuleSet::Load(const std::string &path) { return Parse(ReadAll(path)); }

void RuleSet::Add(std::string type, std::string anchor, std::string pattern) {
  ExtractionRule rule;
  rule.type = std::move(type);
  rule.anchor = std::move(anchor);
  rule.pattern = std::move(pattern);
  try {
    rule.regex = std::regex(rule.pattern, std::regex::ECMAScript);
  } catch (const std::regex_error &e) {
    throw ValidationError("bad pattern '" + rule.pattern + "': " + e.what());
  }
  if (rule.regex.mark_count() != 2) {
    throw ValidationError("pattern must have exactly two capture groups: " +
                          rule.pattern);
  }
  if (Trim(rule.anchor).empty()) {
    throw ValidationError("rule without anchor: " + rule.pattern);
  }
  rules_.push_back(std::move(rule));
}

NegationLexicon::NegationLexicon(std::vector<std::string> phrases,
                                 size_t window)
    : window_(window) {
  for (const std::string &phrase : phrases) {
    std::vector<std::string> tokens = LowerTokens(phrase);
    if (!tokens.empty()) phrases_.push_back(std::move(tokens));
  }
  // Longer phrases first: "quase nunca" is reported before "nunca".
  std::stable_sort(phrases_.begin(), phrases_.end(),
                   [](const auto &a, const auto &b) { return a.size() > b.size(); });
}

NegationLexicon NegationLexicon::Parse(std::string_view text, size_t window) {
  std::vector<std::string> phrases;
  for (const std::string &line : Split(text, "\n")) {
    std::string_view t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    phrases.emplace_back(t);
  }
  return NegationLexicon(std::move(phrases), window);
}

NegationLexicon NegationLexicon::Load(const std::string &path, size_t window) {
  return Parse(ReadAll(path), window);
}

PolarityDecision ResolvePolarity(std::span<const std::string> tokens,
                                 size_t anchor_index,
                                 std::string_view affirmative_type,
                                 const TypeRegistry &registry,
                                 const NegationLexicon &negation) {
  PolarityDecision decision;
  decision.type = std::string(affirmative_type);

  // Scan window: up to `window` tokens before the anchor, same clause only.
  size_t begin = anchor_index;
  while (begin > 0 && anchor_index - begin < negation.window() &&
         !EndsClause(tokens[begin - 1])) {
    --begin;
  }
  std::vector<std::string> window;
  for (size_t k = begin; k < anchor_index; ++k) window.push_back(TokenKey(tokens[k]));

  for (const auto &phrase : negation.phrases()) {
    if (phrase.size() > window.size()) continue;
    for (size_t start = 0; start + phrase.size() <= window.size(); ++start) {
      if (!std::equal(phrase.begin(), phrase.end(), window.begin() + start)) {
        continue;
      }
      decision.negation_begin = begin + start;
      decision.negation_end = begin + start + phrase.size();
      std::optional<std::string> negative = registry.NegativeOf(affirmative_type);
      if (negative) {
        decision.type = *negative;
        decision.negated = true;
      } else {
        decision.warning = true;
      }
      return decision;
    }
  }
  return decision;
}

Extractor::Extractor(RuleSet rules, TypeRegistry registry,
                     NegationLexicon negation)
    : rules_(std::move(rules)),
      registry_(std::move(registry)),
      negation_(std::move(negation)) {
  for (const ExtractionRule &rule : rules_.rules()) {
    const RelationType *type = registry_.Find(rule.type);
    if (type == nullptr) {
      throw ValidationError("rule for unregistered type: " + rule.type);
    }
    if (type->negative()) {
      throw ValidationError("rules must name affirmative types: " + rule.type);
    }
  }
}

std::vector<Relation> Extractor::Extract(const ExportLine &line,
                                         ExtractionStats *stats) const {
  std::vector<Relation> out;
  std::set<RelationKey> seen;
  std::vector<std::string> tokens = SplitWhitespace(line.text);
  size_t warnings = 0;

  for (const ExtractionRule &rule : rules_.rules()) {
    std::optional<size_t> anchor = FindAnchor(tokens, LowerTokens(rule.anchor));
    if (!anchor) continue;
    PolarityDecision polarity =
        ResolvePolarity(tokens, *anchor, rule.type, registry_, negation_);

    // The pattern sees the statement without the negation phrase.
    std::vector<std::string> kept;
    for (size_t k = 0; k < tokens.size(); ++k) {
      if (k >= polarity.negation_begin && k < polarity.negation_end) continue;
      kept.push_back(tokens[k]);
    }
    std::string cleaned = Join(kept, " ");
    while (!cleaned.empty() &&
           (cleaned.back() == '.' || cleaned.back() == '!')) {
      cleaned.pop_back();
    }

    std::smatch match;
    if (!std::regex_match(cleaned, match, rule.regex)) continue;
    if (polarity.warning) ++warnings;

    auto capture = [&](int group) {
      std::string value(Trim(match.str(group)));
      // Sentence-initial capitalization is not part of the concept.
      if (match.position(group) == 0) {
        std::vector<std::string> words = SplitWhitespace(value);
        if (!words.empty() && !IsAllUpper(words.front())) value = LowerFirst(value);
      }
      return value;
    };
    Relation r;
    r.type = polarity.type;
    r.param1 = capture(1);
    r.param2 = capture(2);
    if (r.param1.empty() || r.param2.empty()) continue;
    r.profile = line.profile;
    r.f = 1;
    r.i = 0;
    r.ids = {line.id};
    if (seen.insert(r.Key()).second) out.push_back(std::move(r));
  }

  if (stats != nullptr) {
    ++stats->lines;
    if (out.empty()) ++stats->unmatched;
    stats->relations += out.size();
    stats->polarity_warnings += warnings;
  }
  return out;
}

std::vector<Relation> Extractor::ExtractLine(std::string_view line,
                                             ExtractionStats *stats) const {
  return Extract(ParseExportLine(line), stats);
}

std::vector<Relation> Extractor::ExtractCorpus(std::span<const std::string> lines,
                                               ExtractionStats *stats) const {
  std::vector<Relation> out;
  for (const std::string &line : lines) {
    if (Trim(line).empty()) continue;
    std::vector<Relation> rels = ExtractLine(line, stats);
    out.insert(out.end(), std::make_move_iterator(rels.begin()),
               std::make_move_iterator(rels.end()));
  }
  std::stable_sort(out.begin(), out.end(), [](const Relation &a, const Relation &b) {
    if (a.ids.front() != b.ids.front()) return a.ids.front() < b.ids.front();
    return a.Key() < b.Key();
  });
  return out;
}

}  // namespace cskb
