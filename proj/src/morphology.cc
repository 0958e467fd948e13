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

#include "cskb/morphology.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "cskb/errors.h"
#include "cskb/text.h"

namespace cskb {

namespace {

constexpr std::array<std::pair<Tag, std::string_view>, 9> kTagNames = {{
    {Tag::kSubst, "SUBST"},
    {Tag::kVerb, "VERB"},
    {Tag::kAdj, "ADJ"},
    {Tag::kPrep, "PREP"},
    {Tag::kArt, "ART"},
    {Tag::kPron, "PRON"},
    {Tag::kAdv, "ADV"},
    {Tag::kPropn, "PROPN"},
    {Tag::kOther, "OTHER"},
}};

// Splits "word/TAG" when TAG is a known tag name.
bool SplitTagged(std::string_view token, std::string_view *word, Tag *tag) {
  size_t slash = token.rfind('/');
  if (slash == std::string_view::npos || slash == 0) return false;
  std::optional<Tag> parsed = ParseTag(token.substr(slash + 1));
  if (!parsed) return false;
  *word = token.substr(0, slash);
  *tag = *parsed;
  return true;
}

}  // namespace

std::string_view TagName(Tag tag) {
  for (const auto &[t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "OTHER";
}

std::optional<Tag> ParseTag(std::string_view name) {
  for (const auto &[t, tag_name] : kTagNames) {
    if (tag_name == name) return t;
  }
  return std::nullopt;
}

std::vector<Tag> LexiconMorphology::DefaultPriority() {
  return {Tag::kVerb, Tag::kSubst, Tag::kAdj,   Tag::kAdv,  Tag::kPrep,
          Tag::kPron, Tag::kArt,   Tag::kPropn, Tag::kOther};
}

LexiconMorphology LexiconMorphology::Parse(std::string_view text) {
  LexiconMorphology lexicon;
  int lineno = 0;
  for (const std::string &raw : Split(text, "\n")) {
    ++lineno;
    std::string_view line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = Split(line, "\t");
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError("lexicon line " + std::to_string(lineno) +
                       ": expected surface<TAB>lemma<TAB>tag");
    }
    if (fields[0] == "!clitic") {
      std::string replacement = fields.size() == 3 ? fields[2] : "";
      lexicon.AddCliticRule({fields[1], replacement});
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError("lexicon line " + std::to_string(lineno) +
                       ": missing tag");
    }
    std::optional<Tag> tag = ParseTag(Trim(fields[2]));
    if (!tag) {
      throw ParseError("lexicon line " + std::to_string(lineno) +
                       ": unknown tag '" + fields[2] + "'");
    }
    lexicon.AddEntry(Trim(fields[0]), Trim(fields[1]), *tag);
  }
  return lexicon;
}

LexiconMorphology LexiconMorphology::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open lexicon: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

void LexiconMorphology::AddEntry(std::string_view surface,
                                 std::string_view lemma, Tag tag) {
  auto add = [this](std::string_view s, std::string_view l, Tag t) {
    auto &list = entries_[std::string(s)];
    for (const auto &[existing_lemma, existing_tag] : list) {
      if (existing_tag == t) return;
    }
    list.emplace_back(std::string(l), t);
  };
  add(surface, lemma, tag);
  add(lemma, lemma, tag);
}

void LexiconMorphology::AddCliticRule(CliticRule rule) {
  clitics_.push_back(std::move(rule));
  // Longest suffix first so "á-las" wins over "-las".
  std::stable_sort(clitics_.begin(), clitics_.end(),
                   [](const CliticRule &a, const CliticRule &b) {
                     return a.suffix.size() > b.suffix.size();
                   });
}

const std::vector<std::pair<std::string, Tag>> *LexiconMorphology::Entries(
    std::string_view surface) const {
  auto it = entries_.find(surface);
  if (it != entries_.end()) return &it->second;
  it = entries_.find(ToLower(surface));
  if (it != entries_.end()) return &it->second;
  return nullptr;
}

int LexiconMorphology::Rank(Tag tag) const {
  auto it = std::find(priority_.begin(), priority_.end(), tag);
  return static_cast<int>(it - priority_.begin());
}

std::vector<TaggedToken> LexiconMorphology::TagText(std::string_view text) const {
  std::vector<TaggedToken> out;
  for (const std::string &token : Tokenize(text)) {
    std::string_view word;
    Tag tag;
    if (SplitTagged(token, &word, &tag)) {
      out.push_back({std::string(word), std::string(word), tag});
      continue;
    }
    TaggedToken tagged{token, token, Tag::kOther};
    // Mid-sentence capitals are names ("São Carlos") unless listed as such.
    bool name = !out.empty() && StartsWithUpper(token) && !IsAllUpper(token) &&
                entries_.find(token) == entries_.end();
    if (name) {
      tagged.tag = Tag::kPropn;
    } else if (const auto *entries = Entries(token)) {
      Tag best = entries->front().second;
      for (const auto &entry : *entries) {
        if (Rank(entry.second) < Rank(best)) best = entry.second;
      }
      tagged.tag = best;
    } else if (std::any_of(clitics_.begin(), clitics_.end(),
                           [&](const CliticRule &rule) {
                             return token.size() > rule.suffix.size() &&
                                    EndsWith(ToLower(token), rule.suffix);
                           })) {
      tagged.tag = Tag::kVerb;
    } else if (StartsWithUpper(token)) {
      tagged.tag = Tag::kPropn;
    }
    out.push_back(std::move(tagged));
  }
  return out;
}

std::optional<std::string> LexiconMorphology::Lookup(std::string_view surface,
                                                     Tag tag) const {
  const auto *entries = Entries(surface);
  if (entries == nullptr) return std::nullopt;
  for (const auto &[lemma, entry_tag] : *entries) {
    if (entry_tag == tag) return lemma;
  }
  return std::nullopt;
}

bool LexiconMorphology::Knows(std::string_view surface) const {
  return Entries(surface) != nullptr;
}

size_t LexiconMorphology::entry_count() const {
  size_t n = 0;
  for (const auto &entry : entries_) n += entry.second.size();
  return n;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string &raw : SplitWhitespace(text)) {
    std::string_view token = StripPunctuation(raw);
    if (!token.empty()) out.emplace_back(token);
  }
  return out;
}

std::string FormatTagged(std::span<const TaggedToken> tokens) {
  std::string out;
  for (const TaggedToken &t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.lemma;
    out += '/';
    out += TagName(t.tag);
  }
  return out;
}

std::string FormatLemmas(std::span<const TaggedToken> tokens) {
  std::string out;
  for (const TaggedToken &t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.lemma;
  }
  return out;
}

std::string StripTags(std::string_view phrase) {
  std::vector<std::string> words;
  for (const std::string &token : SplitWhitespace(phrase)) {
    std::string_view word;
    Tag tag;
    words.emplace_back(SplitTagged(token, &word, &tag) ? word : token);
  }
  return Join(words, " ");
}

std::vector<TaggedToken> ParseTaggedPhrase(std::string_view phrase) {
  std::vector<TaggedToken> out;
  for (const std::string &token : SplitWhitespace(phrase)) {
    std::string_view word;
    Tag tag;
    if (SplitTagged(token, &word, &tag)) {
      out.push_back({std::string(word), std::string(word), tag});
    } else {
      out.push_back({token, token, Tag::kOther});
    }
  }
  return out;
}

}  // namespace cskb
