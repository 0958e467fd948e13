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

// Part-of-speech tagging and inflectional lookup behind a small provider
// contract, so that any tagger/dictionary pair can back normalization.

#ifndef CSKB_MORPHOLOGY_H_
#define CSKB_MORPHOLOGY_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cskb {

enum class Tag { kSubst, kVerb, kAdj, kPrep, kArt, kPron, kAdv, kPropn, kOther };

std::string_view TagName(Tag tag);
std::optional<Tag> ParseTag(std::string_view name);

struct TaggedToken {
  std::string surface;
  std::string lemma;
  Tag tag = Tag::kOther;

  bool operator==(const TaggedToken &) const = default;
};

// Enclitic pronoun rewrite: a verb form ending in `suffix` becomes the
// infinitive obtained by replacing the suffix ("á-la" -> "ar").
struct CliticRule {
  std::string suffix;
  std::string replacement;
};

class MorphologyProvider {
 public:
  virtual ~MorphologyProvider() = default;

  // Tags every token; never fails. Unknown tokens come back as OTHER (or
  // PROPN when capitalized) with lemma equal to the surface. Tokens already
  // in `word/TAG` form keep their tag.
  virtual std::vector<TaggedToken> TagText(std::string_view text) const = 0;

  // Normal form of `surface` under `tag`, or nullopt on a dictionary miss.
  virtual std::optional<std::string> Lookup(std::string_view surface,
                                            Tag tag) const = 0;

  virtual std::span<const CliticRule> clitic_rules() const = 0;

  // True if the surface form is in the dictionary under any tag.
  virtual bool Knows(std::string_view surface) const = 0;
};

// Lexicon-backed provider. Lexicon records are `surface<TAB>lemma<TAB>TAG`;
// `!clitic<TAB>suffix<TAB>replacement` records add clitic rules. Every lemma
// is also registered as its own surface form so normalized text is a fixed
// point. Ambiguous surfaces resolve by tag priority.
class LexiconMorphology : public MorphologyProvider {
 public:
  static std::vector<Tag> DefaultPriority();

  LexiconMorphology() : priority_(DefaultPriority()) {}

  static LexiconMorphology Parse(std::string_view text);
  static LexiconMorphology Load(const std::string &path);

  void AddEntry(std::string_view surface, std::string_view lemma, Tag tag);
  void AddCliticRule(CliticRule rule);
  void set_priority(std::vector<Tag> priority) { priority_ = std::move(priority); }

  std::vector<TaggedToken> TagText(std::string_view text) const override;
  std::optional<std::string> Lookup(std::string_view surface,
                                    Tag tag) const override;
  std::span<const CliticRule> clitic_rules() const override { return clitics_; }
  bool Knows(std::string_view surface) const override;

  size_t entry_count() const;

 private:
  const std::vector<std::pair<std::string, Tag>> *Entries(
      std::string_view surface) const;
  int Rank(Tag tag) const;

  std::map<std::string, std::vector<std::pair<std::string, Tag>>, std::less<>>
      entries_;
  std::vector<CliticRule> clitics_;
  std::vector<Tag> priority_;
};

// Splits text into word tokens, trimming sentence punctuation.
std::vector<std::string> Tokenize(std::string_view text);

// "lemma/TAG lemma/TAG ..." and the plain "lemma lemma ..." rendering.
std::string FormatTagged(std::span<const TaggedToken> tokens);
std::string FormatLemmas(std::span<const TaggedToken> tokens);

// Removes "/TAG" suffixes from a tagged phrase; untagged text is unchanged.
std::string StripTags(std::string_view phrase);

// Parses "word/TAG" tokens; untagged tokens get Tag::kOther.
std::vector<TaggedToken> ParseTaggedPhrase(std::string_view phrase);

}  // namespace cskb

#endif  // CSKB_MORPHOLOGY_H_
