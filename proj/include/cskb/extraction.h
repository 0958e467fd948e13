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

// Extraction phase: template-shaped statements are matched against regular
// expression rules, producing profiled binary relations. The relation type
// flips to its negative form when a negation adverb precedes the structure
// that selects the type.

#ifndef CSKB_EXTRACTION_H_
#define CSKB_EXTRACTION_H_

#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cskb/profile.h"
#include "cskb/relation-type.h"
#include "cskb/relation.h"

namespace cskb {

// One line of the exported corpus: text$$gender$$age$$education$$city$$state$$id
struct ExportLine {
  std::string text;
  ProfileAttrs profile;
  StatementId id = 0;

  bool operator==(const ExportLine &) const = default;
};

// Throws ParseError when the line does not have exactly seven slots.
ExportLine ParseExportLine(std::string_view line);
std::string FormatExportLine(const ExportLine &line);

struct ExtractionRule {
  std::string type;     // affirmative relation type
  std::string anchor;   // text of the type-defining structure
  std::string pattern;  // ECMAScript regex with exactly two capture groups
  std::regex regex;
};

// Rule file: `TYPE<TAB>anchor<TAB>pattern` per line, '#' comments.
class RuleSet {
 public:
  static RuleSet Parse(std::string_view text);
  static RuleSet Load(const std::string &path);

  // Throws ValidationError if the pattern does not compile or does not have
  // exactly two capture groups.
  void Add(std::string type, std::string anchor, std::string pattern);

  const std::vector<ExtractionRule> &rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

 private:
  std::vector<ExtractionRule> rules_;
};

// Negative adverbs and adverbial phrases, matched case-insensitively within a
// window of tokens before the anchor, without crossing a clause boundary.
class NegationLexicon {
 public:
  NegationLexicon() = default;
  NegationLexicon(std::vector<std::string> phrases, size_t window = 3);

  // One phrase per line.
  static NegationLexicon Parse(std::string_view text, size_t window = 3);
  static NegationLexicon Load(const std::string &path, size_t window = 3);

  const std::vector<std::vector<std::string>> &phrases() const {
    return phrases_;
  }
  size_t window() const { return window_; }

 private:
  std::vector<std::vector<std::string>> phrases_;  // lowercased token lists
  size_t window_ = 3;
};

struct PolarityDecision {
  std::string type;
  bool negated = false;
  bool warning = false;  // negation seen on a type without a negative form
  // Token span [negation_begin, negation_end) of the matched negation phrase.
  size_t negation_begin = 0;
  size_t negation_end = 0;
};

// Decides between `affirmative_type` and its negative counterpart given the
// tokenized statement and the index of the first anchor token.
PolarityDecision ResolvePolarity(std::span<const std::string> tokens,
                                 size_t anchor_index,
                                 std::string_view affirmative_type,
                                 const TypeRegistry &registry,
                                 const NegationLexicon &negation);

struct ExtractionStats {
  size_t lines = 0;
  size_t unmatched = 0;
  size_t relations = 0;
  size_t polarity_warnings = 0;
};

class Extractor {
 public:
  Extractor(RuleSet rules, TypeRegistry registry, NegationLexicon negation);

  // Every matching rule contributes one relation (f=1, i=0) carrying the
  // line's profile and id. Identical relations from one line collapse.
  std::vector<Relation> Extract(const ExportLine &line,
                                ExtractionStats *stats = nullptr) const;
  std::vector<Relation> ExtractLine(std::string_view line,
                                    ExtractionStats *stats = nullptr) const;

  // Output is sorted by (id, key) so it does not depend on input order.
  std::vector<Relation> ExtractCorpus(std::span<const std::string> lines,
                                      ExtractionStats *stats = nullptr) const;

  const TypeRegistry &registry() const { return registry_; }

 private:
  RuleSet rules_;
  TypeRegistry registry_;
  NegationLexicon negation_;
};

}  // namespace cskb

#endif  // CSKB_EXTRACTION_H_
