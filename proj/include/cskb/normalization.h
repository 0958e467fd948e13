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

// Normalization phase: tag, drop articles, rewrite enclitic verb forms, and
// replace every token by its dictionary normal form so that morphological
// variants of the same concept become one node.

#ifndef CSKB_NORMALIZATION_H_
#define CSKB_NORMALIZATION_H_

#include <string>
#include <string_view>
#include <vector>

#include "cskb/morphology.h"
#include "cskb/relation.h"

namespace cskb {

struct NormalizationStats {
  size_t tokens = 0;
  size_t misses = 0;
  size_t articles_removed = 0;
  size_t clitics_rewritten = 0;

  NormalizationStats &operator+=(const NormalizationStats &other);

  // {"tokens": N, "misses": N, "articles_removed": N, "clitics_rewritten": N}
  std::string Report() const;
};

// Total function. Returned tokens keep the original surface; `lemma` holds the
// normal form. Proper names keep lemma == surface and ART tokens are dropped.
std::vector<TaggedToken> NormalizePhrase(std::string_view text,
                                         const MorphologyProvider &provider,
                                         NormalizationStats *stats = nullptr);

// Replaces both parameters by their tagged normal forms ("usar/VERB
// caderno/SUBST"). Profile, ids and counters are untouched. A parameter made
// only of articles is kept as is.
Relation NormalizeRelation(const Relation &relation,
                           const MorphologyProvider &provider,
                           NormalizationStats *stats = nullptr);

std::vector<Relation> NormalizeRelations(const std::vector<Relation> &relations,
                                         const MorphologyProvider &provider,
                                         NormalizationStats *stats = nullptr);

// Lowercased, article-free lemma string; used for answer matching and query
// expansion.
std::string LemmaKey(std::string_view text, const MorphologyProvider &provider);

}  // namespace cskb

#endif  // CSKB_NORMALIZATION_H_
