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

#ifndef CSKB_RELATION_TYPE_H_
#define CSKB_RELATION_TYPE_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cskb {

enum class Polarity { kAffirmative, kNegative };

// A named binary predicate. Negative types point at their affirmative
// counterpart (NotIsA -> IsA). K-line types link contexts and never have a
// negative form.
struct RelationType {
  std::string name;
  Polarity polarity = Polarity::kAffirmative;
  std::string affirmative_counterpart;  // set iff polarity is negative
  bool kline = false;

  bool negative() const { return polarity == Polarity::kNegative; }
};

// Closed set of relation types known to the pipeline. Immutable once built.
class TypeRegistry {
 public:
  TypeRegistry() = default;

  // Validates and registers `defs`. Throws ValidationError on duplicate names,
  // negatives without an affirmative counterpart, or negatives of k-lines.
  static TypeRegistry Register(const std::vector<RelationType> &defs);

  // The types used throughout this project: IsA, PropertyOf, UsedFor,
  // LocationOf, MotivationOf, CapableOf and CapableOfReceivingAction with
  // their negatives, plus the ThematicKLine, SuperThematicKLine and
  // ConceptuallyRelatedTo k-lines.
  static TypeRegistry Default();

  // Reads `name<TAB>affirmative|negative<TAB>counterpart<TAB>kline` records.
  // Blank lines and lines starting with '#' are skipped.
  static TypeRegistry Load(const std::string &path);
  static TypeRegistry Parse(std::string_view text);

  const RelationType *Find(std::string_view name) const;
  bool Contains(std::string_view name) const { return Find(name) != nullptr; }

  // Negative counterpart of an affirmative non-k-line type, if registered.
  std::optional<std::string> NegativeOf(std::string_view affirmative) const;

  std::vector<std::string> Names() const;
  size_t size() const { return types_.size(); }
  bool empty() const { return types_.empty(); }

 private:
  std::map<std::string, RelationType, std::less<>> types_;
  std::map<std::string, std::string, std::less<>> negative_of_;
};

}  // namespace cskb

#endif  // CSKB_RELATION_TYPE_H_
