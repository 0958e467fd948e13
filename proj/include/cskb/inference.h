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

// Read-only reasoning over a materialized network. Every function here is a
// pure read and can run concurrently on a shared ConceptNet.

#ifndef CSKB_INFERENCE_H_
#define CSKB_INFERENCE_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cskb/conceptnet.h"
#include "cskb/morphology.h"
#include "cskb/relation-type.h"
#include "cskb/render.h"

namespace cskb {

struct ScoredConcept {
  std::string name;
  double score = 0.0;

  bool operator==(const ScoredConcept &) const = default;
};

struct ContextOptions {
  int depth = 2;
  double decay = 0.5;
};

// ln(1 + f + i).
double EdgeStrength(const Relation &relation);

// Node labels denoted by `name`: the exact label if present, otherwise
// every label whose tag-free form equals it.
std::vector<std::string> ResolveConcept(const ConceptNet &net,
                                        std::string_view name);

// Spreading activation. Relations are undirected edges; a concept's activation
// from one seed is the sum over simple paths of length <= depth of the product
// of edge strengths times decay^(length - 1). With several seeds activations
// add up, and concepts reached from every seed are multiplied by the number of
// seeds. Seeds are excluded; output is sorted by score, then concept.
// Throws ValidationError when depth < 1.
std::vector<ScoredConcept> GetContext(std::span<const std::string> seeds,
                                      const ConceptNet &net,
                                      const ContextOptions &options = {});

struct NodeEntry {
  Relation relation;
  std::string sentence;
  std::vector<StatementId> ids;
};

// Every relation incident to the concept, rendered, with its statement ids.
std::vector<NodeEntry> DisplayNode(std::string_view name, const ConceptNet &net,
                                   const RenderTemplates &templates,
                                   const TypeRegistry &registry);

struct Correspondence {
  std::string base;
  std::string target;
  int systematicity = 0;
  bool literal = false;  // base == target
  std::vector<std::pair<RelationKey, RelationKey>> support;
};

// Greedy structure mapping from `base` onto `target`. Every pair of
// same-type relations (reflexive only with reflexive) proposes pairing their
// arguments position by position. The proposal consistent with the one-to-one
// mapping so far that aligns the most new relation pairs is accepted; ties go
// to the proposal leaving the most consistent proposals open, then to more
// literal pairs, then to key order. Stops when nothing aligns. Systematicity
// is the number of aligned relation pairs incident to the concept when it is
// accepted. Literal correspondences are listed first. Throws ValidationError
// on an empty network.
std::vector<Correspondence> GetAnalogy(const ConceptNet &base,
                                       const ConceptNet &target);

// Lemmatizes the expression; returns every concept whose tag-free label
// contains the lemma string, followed by the context of exactly matching
// nodes. Deduplicated.
std::vector<std::string> ExpandQuery(std::string_view expression,
                                     const ConceptNet &net,
                                     const MorphologyProvider &morphology,
                                     const ContextOptions &options = {});

// Whole expression plus noun phrases (noun/adjective runs, optionally chained
// by prepositions) and verb phrases (verb + following noun phrase chain).
// Longest first, duplicates removed, each a contiguous span of the input.
std::vector<std::string> DecomposePhrases(std::string_view expression,
                                          const MorphologyProvider &morphology);

}  // namespace cskb

#endif  // CSKB_INFERENCE_H_
