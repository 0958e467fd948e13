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

#ifndef CSKB_RELATION_H_
#define CSKB_RELATION_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cskb/profile.h"
#include "cskb/relation-type.h"

namespace cskb {

using StatementId = int64_t;

struct RelationKey {
  std::string type;
  std::string param1;
  std::string param2;

  auto operator<=>(const RelationKey &) const = default;
  bool operator==(const RelationKey &) const = default;
};

// Key used before Filtering: the contributor profile is part of identity.
struct ProfiledKey {
  RelationKey key;
  ProfileAttrs profile;

  auto operator<=>(const ProfiledKey &) const = default;
  bool operator==(const ProfiledKey &) const = default;
};

// A typed binary relation between two concept phrases. `f` counts direct
// derivations from uttered statements, `i` counts inferred ones, and `ids`
// lists the originating statement ids without duplicates.
struct Relation {
  std::string type;
  std::string param1;
  std::string param2;
  std::optional<ProfileAttrs> profile;
  int64_t f = 1;
  int64_t i = 0;
  std::vector<StatementId> ids;

  RelationKey Key() const { return {type, param1, param2}; }
  ProfiledKey KeyWithProfile() const;

  bool operator==(const Relation &) const = default;
};

// The three line grammars used between pipeline phases.
//   kFinal:     (T "p1" "p2" "f=F;i=I" "id;id")
//   kExtracted: (T "p1" "p2" "g" "age" "edu" "city" "state" "id;id")
//   kWeighted:  (T "p1" "p2" "g" "age" "edu" "city" "state" "id;id" "f=F;i=I")
enum class LineFormat { kFinal, kExtracted, kWeighted };

// Serializes a relation. Quotes and backslashes inside slots are escaped with
// a backslash. Profiled formats require `profile` to be set.
std::string SerializeRelation(const Relation &relation, LineFormat format);

// Parses any of the three grammars, detected from the slot count. Relations
// read from kExtracted lines get f=1, i=0. When `registry` is given, the
// relation type must be registered. Throws ParseError.
Relation ParseRelationLine(std::string_view line,
                           const TypeRegistry *registry = nullptr,
                           LineFormat *detected = nullptr);

// One relation per line; blank lines are skipped.
std::vector<Relation> ParseRelationLines(std::string_view text,
                                         const TypeRegistry *registry = nullptr);
std::vector<Relation> ReadRelationFile(const std::string &path,
                                       const TypeRegistry *registry = nullptr);
std::string SerializeRelations(const std::vector<Relation> &relations,
                               LineFormat format);
void WriteRelationFile(const std::string &path,
                       const std::vector<Relation> &relations,
                       LineFormat format);

// Adds the ids of `from` that are not already in `into` and sums the
// counters. Used when reconciling relations with disjoint provenance.
void MergeRelation(Relation &into, const Relation &from);

}  // namespace cskb

#endif  // CSKB_RELATION_H_
