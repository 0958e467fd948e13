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

#include "cskb/conceptnet.h"

#include <algorithm>

namespace cskb {

ConceptNet ConceptNet::Build(std::vector<Relation> relations,
                             ProfileQuery query) {
  std::map<RelationKey, Relation> merged;
  for (Relation &r : relations) {
    r.profile.reset();
    std::sort(r.ids.begin(), r.ids.end());
    auto it = merged.find(r.Key());
    if (it == merged.end()) {
      RelationKey key = r.Key();
      merged.emplace(std::move(key), std::move(r));
    } else {
      MergeRelation(it->second, r);
    }
  }

  ConceptNet net;
  net.query_ = std::move(query);
  net.relations_.reserve(merged.size());
  for (auto &entry : merged) net.relations_.push_back(std::move(entry.second));
  for (size_t k = 0; k < net.relations_.size(); ++k) {
    const Relation &r = net.relations_[k];
    net.index_[r.param1].push_back(k);
    if (r.param2 != r.param1) net.index_[r.param2].push_back(k);
  }
  return net;
}

const Relation *ConceptNet::Find(const RelationKey &key) const {
  auto it = std::lower_bound(
      relations_.begin(), relations_.end(), key,
      [](const Relation &r, const RelationKey &k) { return r.Key() < k; });
  if (it == relations_.end() || it->Key() != key) return nullptr;
  return &*it;
}

std::span<const size_t> ConceptNet::Incident(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return {};
  return it->second;
}

bool ConceptNet::HasConcept(std::string_view name) const {
  return index_.find(name) != index_.end();
}

std::vector<std::string> ConceptNet::Concepts() const {
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto &entry : index_) out.push_back(entry.first);
  return out;
}

NetworkMetrics ComputeDensity(const ConceptNet &net) {
  NetworkMetrics m;
  m.nodes = net.node_count();
  m.relations = net.relation_count();
  m.density = m.nodes == 0 ? 0.0
                           : 2.0 * static_cast<double>(m.relations) /
                                 static_cast<double>(m.nodes);
  return m;
}

}  // namespace cskb
