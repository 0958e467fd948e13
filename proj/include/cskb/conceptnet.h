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

#ifndef CSKB_CONCEPTNET_H_
#define CSKB_CONCEPTNET_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cskb/profile.h"
#include "cskb/relation.h"

namespace cskb {

// An immutable semantic network: at most one relation per (type, param1,
// param2) key plus an index from every concept to its incident relations.
// Safe for concurrent reads once built.
class ConceptNet {
 public:
  ConceptNet() = default;

  // Profiles are dropped; relations with equal keys are merged (counters
  // summed, ids unioned).
  static ConceptNet Build(std::vector<Relation> relations,
                          ProfileQuery query = ProfileQuery::MatchAll());

  // Relations sorted by key.
  const std::vector<Relation> &relations() const { return relations_; }
  const ProfileQuery &query() const { return query_; }

  const Relation *Find(const RelationKey &key) const;

  // Indices into relations() of every relation with `concept` as a
  // parameter. Empty for unknown concepts.
  std::span<const size_t> Incident(std::string_view name) const;

  bool HasConcept(std::string_view name) const;

  // All concepts, sorted.
  std::vector<std::string> Concepts() const;

  size_t node_count() const { return index_.size(); }
  size_t relation_count() const { return relations_.size(); }
  bool empty() const { return relations_.empty(); }

 private:
  std::vector<Relation> relations_;
  std::map<std::string, std::vector<size_t>, std::less<>> index_;
  ProfileQuery query_;
};

using ConceptNetHandle = std::shared_ptr<const ConceptNet>;

struct NetworkMetrics {
  size_t nodes = 0;
  size_t relations = 0;
  double density = 0.0;  // 2 * relations / nodes, 0 for an empty network
};

NetworkMetrics ComputeDensity(const ConceptNet &net);

}  // namespace cskb

#endif  // CSKB_CONCEPTNET_H_
