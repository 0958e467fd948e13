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

#include "cskb/normalization.h"

#include "cskb/text.h"

namespace cskb {

NormalizationStats &NormalizationStats::operator+=(
    const NormalizationStats &other) {
  tokens += other.tokens;
  misses += other.misses;
  articles_removed += other.articles_removed;
  clitics_rewritten += other.clitics_rewritten;
  return *this;
}

std::string NormalizationStats::Report() const {
  return "{\"tokens\": " + std::to_string(tokens) +
         ", \"misses\": " + std::to_string(misses) +
         ", \"articles_removed\": " + std::to_string(articles_removed) +
         ", \"clitics_rewritten\": " + std::to_string(clitics_rewritten) + "}";
}

std::vector<TaggedToken> NormalizePhrase(std::string_view text,
                                         const MorphologyProvider &provider,
                                         NormalizationStats *stats) {
  NormalizationStats local;
  std::vector<TaggedToken> out;

  // Step 1: tagging.
  std::vector<TaggedToken> tokens = provider.TagText(text);
  local.tokens = tokens.size();

  for (TaggedToken &token : tokens) {
    // Step 2: articles out, proper names frozen, enclitics rewritten.
    if (token.tag == Tag::kArt) {
      ++local.articles_removed;
      continue;
    }
    if (token.tag == Tag::kPropn) {
      token.lemma = token.surface;
      out.push_back(std::move(token));
      continue;
    }
    bool rewritten = false;
    if (token.tag == Tag::kVerb && !provider.Lookup(token.surface, Tag::kVerb)) {
      std::string lower = ToLower(token.surface);
      for (const CliticRule &rule : provider.clitic_rules()) {
        if (lower.size() > rule.suffix.size() && EndsWith(lower, rule.suffix)) {
          token.lemma =
              lower.substr(0, lower.size() - rule.suffix.size()) + rule.replacement;
          ++local.clitics_rewritten;
          rewritten = true;
          break;
        }
      }
    }

    // Step 3: dictionary normal form.
    if (!rewritten) {
      if (std::optional<std::string> lemma =
              provider.Lookup(token.surface, token.tag)) {
        token.lemma = *lemma;
      } else {
        ++local.misses;
      }
    }
    out.push_back(std::move(token));
  }

  if (stats != nullptr) *stats += local;
  return out;
}

Relation NormalizeRelation(const Relation &relation,
                           const MorphologyProvider &provider,
                           NormalizationStats *stats) {
  Relation out = relation;
  auto normalize = [&](const std::string &param) {
    std::vector<TaggedToken> tokens = NormalizePhrase(param, provider, stats);
    return tokens.empty() ? param : FormatTagged(tokens);
  };
  out.param1 = normalize(relation.param1);
  out.param2 = normalize(relation.param2);
  return out;
}

std::vector<Relation> NormalizeRelations(const std::vector<Relation> &relations,
                                         const MorphologyProvider &provider,
                                         NormalizationStats *stats) {
  std::vector<Relation> out;
  out.reserve(relations.size());
  for (const Relation &r : relations) {
    out.push_back(NormalizeRelation(r, provider, stats));
  }
  return out;
}

std::string LemmaKey(std::string_view text, const MorphologyProvider &provider) {
  std::vector<TaggedToken> tokens = NormalizePhrase(ToLower(text), provider);
  return ToLower(FormatLemmas(tokens));
}

}  // namespace cskb
