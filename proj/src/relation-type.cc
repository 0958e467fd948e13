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

#include "cskb/relation-type.h"

#include <fstream>
#include <sstream>

#include "cskb/errors.h"
#include "cskb/text.h"

namespace cskb {

TypeRegistry TypeRegistry::Register(const std::vector<RelationType> &defs) {
  TypeRegistry registry;
  for (const RelationType &def : defs) {
    if (def.name.empty()) throw ValidationError("relation type without a name");
    if (!registry.types_.emplace(def.name, def).second) {
      throw ValidationError("duplicate relation type: " + def.name);
    }
  }
  for (const auto &[name, def] : registry.types_) {
    if (!def.negative()) continue;
    if (def.kline) {
      throw ValidationError("k-line type cannot be negative: " + name);
    }
    const RelationType *base = registry.Find(def.affirmative_counterpart);
    if (base == nullptr) {
      throw ValidationError("negative type " + name +
                            " names unknown counterpart '" +
                            def.affirmative_counterpart + "'");
    }
    if (base->negative()) {
      throw ValidationError("counterpart of " + name + " is itself negative");
    }
    if (base->kline) {
      throw ValidationError("k-line type has no negative form: " + base->name);
    }
    auto [it, inserted] = registry.negative_of_.emplace(base->name, name);
    if (!inserted) {
      throw ValidationError("two negatives registered for " + base->name);
    }
  }
  return registry;
}

TypeRegistry TypeRegistry::Default() {
  std::vector<RelationType> defs;
  for (const char *name :
       {"IsA", "PropertyOf", "UsedFor", "LocationOf", "MotivationOf",
        "CapableOf", "CapableOfReceivingAction"}) {
    defs.push_back({name, Polarity::kAffirmative, "", false});
    defs.push_back({std::string("Not") + name, Polarity::kNegative, name, false});
  }
  for (const char *name :
       {"ThematicKLine", "SuperThematicKLine", "ConceptuallyRelatedTo"}) {
    defs.push_back({name, Polarity::kAffirmative, "", true});
  }
  return Register(defs);
}

TypeRegistry TypeRegistry::Parse(std::string_view text) {
  std::vector<RelationType> defs;
  int lineno = 0;
  for (const std::string &raw : Split(text, "\n")) {
    ++lineno;
    std::string_view line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = Split(line, "\t");
    if (fields.size() != 4) {
      throw ParseError("relation type record " + std::to_string(lineno) +
                       ": expected 4 tab-separated fields");
    }
    RelationType def;
    def.name = std::string(Trim(fields[0]));
    std::string polarity(Trim(fields[1]));
    if (polarity == "affirmative") {
      def.polarity = Polarity::kAffirmative;
    } else if (polarity == "negative") {
      def.polarity = Polarity::kNegative;
    } else {
      throw ParseError("relation type record " + std::to_string(lineno) +
                       ": bad polarity '" + polarity + "'");
    }
    def.affirmative_counterpart = std::string(Trim(fields[2]));
    if (def.affirmative_counterpart == "-") def.affirmative_counterpart.clear();
    std::string kline(Trim(fields[3]));
    def.kline = kline == "kline" || kline == "true" || kline == "1";
    defs.push_back(std::move(def));
  }
  return Register(defs);
}

TypeRegistry TypeRegistry::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw StorageError("cannot open relation type file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

const RelationType *TypeRegistry::Find(std::string_view name) const {
  auto it = types_.find(name);
  return it == types_.end() ? nullptr : &it->second;
}

std::optional<std::string> TypeRegistry::NegativeOf(
    std::string_view affirmative) const {
  auto it = negative_of_.find(affirmative);
  if (it == negative_of_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> TypeRegistry::Names() const {
  std::vector<std::string> names;
  names.reserve(types_.size());
  for (const auto &entry : types_) names.push_back(entry.first);
  return names;
}

}  // namespace cskb
