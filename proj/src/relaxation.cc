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

#include "cskb/relaxation.h"

#include <algorithm>
#include <functional>
#include <sstream>

#include "cskb/morphology.h"

namespace cskb {

namespace {

using Store = std::map<ProfiledKey, Relation>;

// Derivation passes that feed themselves (CapableOf through IsA chains) are
// iterated until nothing changes; this bounds pathological inputs.
constexpr int kMaxIterations = 32;

Store ToStore(const std::vector<Relation> &relations) {
  Store store;
  for (const Relation &r : relations) {
    auto it = store.find(r.KeyWithProfile());
    if (it == store.end()) {
      store.emplace(r.KeyWithProfile(), r);
    } else {
      MergeRelation(it->second, r);
    }
  }
  return store;
}

std::vector<Relation> FromStore(Store store) {
  std::vector<Relation> out;
  out.reserve(store.size());
  for (auto &entry : store) out.push_back(std::move(entry.second));
  std::stable_sort(out.begin(), out.end(), [](const Relation &a, const Relation &b) {
    if (a.ids.front() != b.ids.front()) return a.ids.front() < b.ids.front();
    return a.KeyWithProfile() < b.KeyWithProfile();
  });
  return out;
}

bool IsKLine(std::string_view type) {
  return type == "ThematicKLine" || type == "SuperThematicKLine" ||
         type == "ConceptuallyRelatedTo";
}

bool IsNegative(std::string_view type) {
  return type.size() > 3 && type.substr(0, 3) == "Not";
}

StatementId MinId(const Relation &r) {
  return *std::min_element(r.ids.begin(), r.ids.end());
}

// Runs `derive` over frozen snapshots until a snapshot yields no change.
void RunPass(Store &store, PassReport &report,
             const std::function<void(const Store &, std::vector<Relation> &)>
                 &derive) {
  for (int iteration = 0; iteration < kMaxIterations; ++iteration) {
    std::vector<Relation> derived;
    derive(store, derived);
    size_t before_created = report.created;
    size_t before_merged = report.merged;
    for (const Relation &d : derived) MergeDerived(store, d, &report);
    if (report.created == before_created && report.merged == before_merged) {
      return;
    }
  }
}

void DeriveCapableOf(const Store &store, std::vector<Relation> &out) {
  // IsA(x, y) + CapableOf(y, v) -> CapableOf(x, v), ids of the IsA.
  std::map<std::pair<ProfileAttrs, std::string>, std::vector<const Relation *>>
      abilities;
  for (const auto &[key, r] : store) {
    if (r.type == "CapableOf") abilities[{key.profile, r.param1}].push_back(&r);
  }
  for (const auto &[key, r] : store) {
    if (r.type != "IsA") continue;
    auto it = abilities.find({key.profile, r.param2});
    if (it == abilities.end()) continue;
    for (const Relation *ability : it->second) {
      if (ability->param2 == r.param1) continue;
      Relation d;
      d.type = "CapableOf";
      d.param1 = r.param1;
      d.param2 = ability->param2;
      d.profile = r.profile;
      d.ids = r.ids;
      out.push_back(std::move(d));
    }
  }
}

void DeriveCapableOfReceivingAction(const Store &store, std::vector<Relation> &out) {
  // UsedFor(x, "verb object") -> CapableOfReceivingAction(object, verb).
  for (const auto &[key, r] : store) {
    if (r.type != "UsedFor") continue;
    std::vector<TaggedToken> tokens = ParseTaggedPhrase(r.param2);
    if (tokens.size() < 2 || tokens.front().tag != Tag::kVerb) continue;
    std::vector<TaggedToken> object(tokens.begin() + 1, tokens.end());
    std::string object_phrase = FormatTagged(object);
    if (!IsNounPhrase(object_phrase)) continue;
    Relation d;
    d.type = "CapableOfReceivingAction";
    d.param1 = object_phrase;
    d.param2 = FormatTagged(std::span<const TaggedToken>(tokens.data(), 1));
    d.profile = r.profile;
    d.ids = r.ids;
    out.push_back(std::move(d));
  }
}

void DeriveThematicKLine(const Store &store, std::vector<Relation> &out) {
  // Two relations of one affirmative type sharing the second parameter link
  // their first parameters. The relation first contributed names param1; the
  // derivation is credited to the later one's earliest statement.
  std::map<std::tuple<ProfileAttrs, std::string, std::string>,
           std::vector<const Relation *>>
      groups;
  for (const auto &[key, r] : store) {
    if (IsKLine(r.type) || IsNegative(r.type) || r.type == "IsA" ||
        r.type == "PropertyOf") {
      continue;
    }
    groups[{key.profile, r.type, r.param2}].push_back(&r);
  }
  for (auto &[group_key, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](const Relation *a, const Relation *b) {
                if (MinId(*a) != MinId(*b)) return MinId(*a) < MinId(*b);
                return a->param1 < b->param1;
              });
    for (size_t a = 0; a < members.size(); ++a) {
      for (size_t b = a + 1; b < members.size(); ++b) {
        if (members[a]->param1 == members[b]->param1) continue;
        Relation d;
        d.type = "ThematicKLine";
        d.param1 = members[a]->param1;
        d.param2 = members[b]->param1;
        d.profile = members[a]->profile;
        d.ids = {MinId(*members[b])};
        out.push_back(std::move(d));
      }
    }
  }
}

void DeriveSuperThematicKLine(const Store &store, std::vector<Relation> &out) {
  // A multi-word noun phrase generalizes to its first noun.
  for (const auto &[key, r] : store) {
    if (IsKLine(r.type)) continue;
    for (const std::string *param : {&r.param1, &r.param2}) {
      if (!IsNounPhrase(*param)) continue;
      std::vector<TaggedToken> tokens = ParseTaggedPhrase(*param);
      if (tokens.size() < 2) continue;
      auto head = std::find_if(tokens.begin(), tokens.end(), [](const TaggedToken &t) {
        return t.tag == Tag::kSubst || t.tag == Tag::kPropn;
      });
      Relation d;
      d.type = "SuperThematicKLine";
      d.param1 = *param;
      d.param2 = FormatTagged(std::span<const TaggedToken>(&*head, 1));
      d.profile = r.profile;
      d.ids = r.ids;
      out.push_back(std::move(d));
    }
  }
}

}  // namespace

std::string RelaxationReport::Format() const {
  std::ostringstream out;
  out << "group: inputs=" << grouped_inputs << " outputs=" << grouped_outputs
      << "\n";
  for (const PassReport &p : passes) {
    out << p.heuristic << ": derived=" << p.derived << " created=" << p.created
        << " merged=" << p.merged << " suppressed=" << p.suppressed << "\n";
  }
  return out.str();
}

bool IsNounPhrase(std::string_view tagged) {
  std::vector<TaggedToken> tokens = ParseTaggedPhrase(tagged);
  if (tokens.empty()) return false;
  bool has_noun = false;
  for (const TaggedToken &t : tokens) {
    switch (t.tag) {
      case Tag::kSubst:
      case Tag::kPropn:
        has_noun = true;
        break;
      case Tag::kAdj:
      case Tag::kPrep:
        break;
      default:
        return false;
    }
  }
  return has_noun && tokens.front().tag != Tag::kPrep &&
         tokens.back().tag != Tag::kPrep;
}

bool IsAdjectivePhrase(std::string_view tagged) {
  std::vector<TaggedToken> tokens = ParseTaggedPhrase(tagged);
  if (tokens.empty() || tokens.back().tag != Tag::kAdj) return false;
  return std::all_of(tokens.begin(), tokens.end(), [](const TaggedToken &t) {
    return t.tag == Tag::kAdj || t.tag == Tag::kAdv;
  });
}

void MergeDerived(Store &store, const Relation &derived, PassReport *report) {
  if (report != nullptr) ++report->derived;
  ProfiledKey key = derived.KeyWithProfile();
  auto it = store.find(key);
  if (it == store.end()) {
    Relation r = derived;
    std::sort(r.ids.begin(), r.ids.end());
    r.ids.erase(std::unique(r.ids.begin(), r.ids.end()), r.ids.end());
    r.f = 0;
    r.i = static_cast<int64_t>(r.ids.size());
    store.emplace(std::move(key), std::move(r));
    if (report != nullptr) ++report->created;
    return;
  }
  Relation &target = it->second;
  bool appended = false;
  for (StatementId id : derived.ids) {
    if (std::find(target.ids.begin(), target.ids.end(), id) != target.ids.end()) {
      continue;
    }
    target.ids.push_back(id);
    ++target.i;
    appended = true;
  }
  std::sort(target.ids.begin(), target.ids.end());
  if (report != nullptr) {
    if (appended) {
      ++report->merged;
    } else {
      ++report->suppressed;
    }
  }
}

std::vector<Relation> SeedAndGroup(const std::vector<Relation> &relations,
                                   RelaxationReport *report) {
  Store store;
  for (const Relation &source : relations) {
    Relation r = source;
    r.f = 1;
    r.i = 0;
    auto it = store.find(r.KeyWithProfile());
    if (it == store.end()) {
      std::sort(r.ids.begin(), r.ids.end());
      store.emplace(r.KeyWithProfile(), std::move(r));
      continue;
    }
    Relation &target = it->second;
    bool fresh = false;
    for (StatementId id : r.ids) {
      if (std::find(target.ids.begin(), target.ids.end(), id) == target.ids.end()) {
        target.ids.push_back(id);
        fresh = true;
      }
    }
    // The same statement extracted twice is one source, not two.
    if (fresh) ++target.f;
    std::sort(target.ids.begin(), target.ids.end());
  }
  if (report != nullptr) {
    report->grouped_inputs = relations.size();
    report->grouped_outputs = store.size();
  }
  return FromStore(std::move(store));
}

std::vector<Relation> InferPropertyOf(const std::vector<Relation> &relations,
                                      PassReport *report) {
  PassReport local{"PropertyOf"};
  Store store = ToStore(relations);
  RunPass(store, local, [](const Store &snapshot, std::vector<Relation> &out) {
    for (const auto &[key, r] : snapshot) {
      if (r.type != "IsA") continue;
      if (!IsNounPhrase(r.param1) || !IsAdjectivePhrase(r.param2)) continue;
      Relation d = r;
      d.type = "PropertyOf";
      out.push_back(std::move(d));
    }
  });
  if (report != nullptr) *report = local;
  return FromStore(std::move(store));
}

std::vector<Relation> ApplyFamilyHeuristics(const std::vector<Relation> &relations,
                                            const RelaxationFlags &flags,
                                            RelaxationReport *report) {
  Store store = ToStore(relations);
  auto run = [&](bool enabled, const char *name,
                 void (*derive)(const Store &, std::vector<Relation> &)) {
    if (!enabled) return;
    PassReport pass{name};
    RunPass(store, pass, derive);
    if (report != nullptr) report->passes.push_back(pass);
  };
  run(flags.capable_of, "CapableOf", DeriveCapableOf);
  run(flags.capable_of_receiving_action, "CapableOfReceivingAction",
      DeriveCapableOfReceivingAction);
  run(flags.thematic_kline, "ThematicKLine", DeriveThematicKLine);
  run(flags.super_thematic_kline, "SuperThematicKLine", DeriveSuperThematicKLine);
  return FromStore(std::move(store));
}

std::vector<Relation> Relax(const std::vector<Relation> &normalized,
                            const RelaxationFlags &flags,
                            RelaxationReport *report) {
  std::vector<Relation> out = SeedAndGroup(normalized, report);
  if (flags.property_of) {
    PassReport pass;
    out = InferPropertyOf(out, &pass);
    if (report != nullptr) report->passes.push_back(pass);
  }
  return ApplyFamilyHeuristics(out, flags, report);
}

}  // namespace cskb
