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

// Relaxation phase. Relations arrive normalized and tagged, one per extracted
// statement. They are grouped per (type, params, profile) with f counting the
// direct sources, then heuristic passes derive new relations with f=0 and i
// counting the derivations. A derivation whose source id is already listed on
// the target relation is a no-op, so re-running a pass changes nothing.

#ifndef CSKB_RELAXATION_H_
#define CSKB_RELAXATION_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cskb/relation.h"

namespace cskb {

struct RelaxationFlags {
  bool property_of = true;
  bool thematic_kline = true;
  // Extensions, off by default.
  bool capable_of = false;
  bool capable_of_receiving_action = false;
  bool super_thematic_kline = false;

  static RelaxationFlags AllOff() { return {false, false, false, false, false}; }
};

struct PassReport {
  std::string heuristic;
  size_t derived = 0;     // derivations attempted
  size_t created = 0;     // new relations
  size_t merged = 0;      // ids appended to an existing relation
  size_t suppressed = 0;  // derivations whose id was already present
};

struct RelaxationReport {
  size_t grouped_inputs = 0;
  size_t grouped_outputs = 0;
  std::vector<PassReport> passes;

  std::string Format() const;
};

// Resets every input to f=1, i=0 and groups equal (type, params, profile)
// keys: f becomes the number of grouped sources and ids are unioned in
// ascending order.
std::vector<Relation> SeedAndGroup(const std::vector<Relation> &relations,
                                   RelaxationReport *report = nullptr);

// IsA(noun phrase, adjective) derives PropertyOf with the same params,
// profile and ids.
std::vector<Relation> InferPropertyOf(const std::vector<Relation> &relations,
                                      PassReport *report = nullptr);

// The flagged family: CapableOf, CapableOfReceivingAction, ThematicKLine and
// SuperThematicKLine derivations, each merged like InferPropertyOf.
std::vector<Relation> ApplyFamilyHeuristics(const std::vector<Relation> &relations,
                                            const RelaxationFlags &flags,
                                            RelaxationReport *report = nullptr);

// Full phase: SeedAndGroup, then PropertyOf, then the family.
std::vector<Relation> Relax(const std::vector<Relation> &normalized,
                            const RelaxationFlags &flags = {},
                            RelaxationReport *report = nullptr);

// Tag-pattern predicates over tagged phrases ("computador/SUBST pessoal/ADJ").
bool IsNounPhrase(std::string_view tagged);
bool IsAdjectivePhrase(std::string_view tagged);

// Merges one derived relation (f/i ignored, ids = derivation ids) into a keyed
// store following the relaxation rules. Exposed for the filtering phase.
void MergeDerived(std::map<ProfiledKey, Relation> &store, const Relation &derived,
                  PassReport *report);

}  // namespace cskb

#endif  // CSKB_RELAXATION_H_
