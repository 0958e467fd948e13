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


// Brute-force reference implementations used to check the library.

#ifndef CSKB_TESTS_ORACLES_H_
#define CSKB_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cskb/conceptnet.h"
#include "cskb/extraction.h"
#include "cskb/pipeline.h"
#include "cskb/profile.h"
#include "cskb/relation.h"

namespace cskb::testing {

// Sum over every simple path (by relation, ignoring direction and
// self-loops) of at most `depth` edges: prod ln(1+f+i) * decay^(len-1).
inline std::map<std::string, double> ContextOracle(const std::vector<std::string> &seeds,
                                                   const ConceptNet &net, int depth,
                                                   double decay) {
  const std::vector<Relation> &rels = net.relations();
  std::set<std::string> starts;
  for (const std::string &s : seeds) {
    bool exact = false;
    for (const Relation &r : rels) exact |= r.param1 == s || r.param2 == s;
    if (exact) {
      starts.insert(s);
      continue;
    }
    for (const Relation &r : rels) {
      for (const std::string *p : {&r.param1, &r.param2}) {
        std::string plain;
        std::istringstream words(*p);
        std::string w;
        while (words >> w) {
          size_t slash = w.rfind('/');
          if (!plain.empty()) plain += ' ';
          plain += slash == std::string::npos ? w : w.substr(0, slash);
        }
        if (plain == s) starts.insert(*p);
      }
    }
  }

  std::map<std::string, double> total;
  std::map<std::string, size_t> hits;
  for (const std::string &seed : starts) {
    std::map<std::string, double> act;
    std::vector<std::string> path{seed};
    std::function<void(const std::string &, double, int)> walk =
        [&](const std::string &node, double product, int length) {
          if (length == depth) return;
          for (const Relation &r : rels) {
            if (r.param1 == r.param2) continue;
            std::string next;
            if (r.param1 == node) {
              next = r.param2;
            } else if (r.param2 == node) {
              next = r.param1;
            } else {
              continue;
            }
            bool seen = false;
            for (const std::string &p : path) seen |= p == next;
            if (seen) continue;
            double value = product * std::log(1.0 + static_cast<double>(r.f + r.i));
            act[next] += value * std::pow(decay, length);
            path.push_back(next);
            walk(next, value, length + 1);
            path.pop_back();
          }
        };
    walk(seed, 1.0, 0);
    for (const auto &[node, v] : act) {
      total[node] += v;
      ++hits[node];
    }
  }
  std::map<std::string, double> out;
  for (const auto &[node, v] : total) {
    if (starts.count(node)) continue;
    double boost = starts.size() > 1 && hits[node] == starts.size()
                       ? static_cast<double>(starts.size())
                       : 1.0;
    out[node] = v * boost;
  }
  return out;
}

// Number of same-type relation pairs whose arguments the mapping sends onto
// each other.
inline int MappingScore(const ConceptNet &base, const ConceptNet &target,
                        const std::map<std::string, std::string> &mapping) {
  int score = 0;
  for (const Relation &rb : base.relations()) {
    auto a = mapping.find(rb.param1);
    auto b = mapping.find(rb.param2);
    if (a == mapping.end() || b == mapping.end()) continue;
    for (const Relation &rt : target.relations()) {
      if (rt.type == rb.type && rt.param1 == a->second && rt.param2 == b->second) ++score;
    }
  }
  return score;
}

// Best MappingScore over every one-to-one partial mapping.
inline int ExhaustiveAnalogy(const ConceptNet &base, const ConceptNet &target) {
  std::vector<std::string> xs = base.Concepts();
  std::vector<std::string> ys = target.Concepts();
  // Constraint list: (x1, x2, y1, y2) for each same-type relation pair.
  struct Pair {
    size_t x1, x2, y1, y2;
  };
  auto index_of = [](const std::vector<std::string> &v, const std::string &s) {
    return static_cast<size_t>(std::lower_bound(v.begin(), v.end(), s) - v.begin());
  };
  std::vector<std::vector<Pair>> closing(xs.size());
  for (const Relation &rb : base.relations()) {
    for (const Relation &rt : target.relations()) {
      if (rb.type != rt.type) continue;
      Pair p{index_of(xs, rb.param1), index_of(xs, rb.param2), index_of(ys, rt.param1),
             index_of(ys, rt.param2)};
      closing[std::max(p.x1, p.x2)].push_back(p);
    }
  }
  const size_t kNone = static_cast<size_t>(-1);
  std::vector<size_t> assign(xs.size(), kNone);
  std::vector<bool> used(ys.size(), false);
  int best = 0;
  std::function<void(size_t, int)> search = [&](size_t k, int score) {
    if (k == xs.size()) {
      best = std::max(best, score);
      return;
    }
    auto gain = [&](size_t y) {
      assign[k] = y;
      int g = 0;
      for (const Pair &p : closing[k]) {
        if (assign[p.x1] == p.y1 && assign[p.x2] == p.y2 && assign[p.x1] != kNone) ++g;
      }
      return g;
    };
    for (size_t y = 0; y < ys.size(); ++y) {
      if (used[y]) continue;
      int g = gain(y);
      used[y] = true;
      search(k + 1, score + g);
      used[y] = false;
    }
    assign[k] = kNone;
    search(k + 1, score);
  };
  search(0, 0);
  return best;
}

struct OracleRelation {
  int64_t f = 0;
  int64_t i = 0;
  std::set<StatementId> ids;
  bool operator==(const OracleRelation &) const = default;
};

// Filters the export lines by profile, reruns the phases on the subset,
// merges across profiles and applies the IsA-PropertyOf join once.
inline std::map<RelationKey, OracleRelation> FilterOracle(
    const std::vector<std::string> &lines, const ProfileQuery::Lists &query,
    const Resources &resources) {
  auto accepts = [](const std::vector<std::string> &list, const std::string &v) {
    if (list.empty()) return true;
    for (const std::string &x : list) {
      if (x == v) return true;
    }
    return false;
  };
  std::vector<std::string> subset;
  for (const std::string &line : lines) {
    std::vector<std::string> slots;
    size_t pos = 0;
    while (true) {
      size_t next = line.find("$$", pos);
      slots.push_back(line.substr(pos, next == std::string::npos ? next : next - pos));
      if (next == std::string::npos) break;
      pos = next + 2;
    }
    bool keep = true;
    for (size_t k = 0; k < 5; ++k) keep = keep && accepts(query[k], slots[k + 1]);
    if (keep) subset.push_back(line);
  }

  std::map<RelationKey, OracleRelation> merged;
  for (const Relation &r : RunPipeline(subset, resources).relaxed) {
    OracleRelation &m = merged[r.Key()];
    m.f += r.f;
    m.i += r.i;
    m.ids.insert(r.ids.begin(), r.ids.end());
  }
  std::vector<std::pair<RelationKey, std::set<StatementId>>> derived;
  for (const auto &[isa, a] : merged) {
    if (isa.type != "IsA" || isa.param1 == isa.param2) continue;
    for (const auto &[prop, b] : merged) {
      if (prop.type == "PropertyOf" && prop.param1 == isa.param2) {
        derived.push_back({{"PropertyOf", isa.param1, prop.param2}, a.ids});
      }
    }
  }
  for (const auto &[key, ids] : derived) {
    OracleRelation &m = merged[key];
    for (StatementId id : ids) {
      if (m.ids.insert(id).second) ++m.i;
    }
  }
  return merged;
}

inline std::map<RelationKey, OracleRelation> AsOracle(const ConceptNet &net) {
  std::map<RelationKey, OracleRelation> out;
  for (const Relation &r : net.relations()) {
    out[r.Key()] = {r.f, r.i, std::set<StatementId>(r.ids.begin(), r.ids.end())};
  }
  return out;
}

}  // namespace cskb::testing

#endif  // CSKB_TESTS_ORACLES_H_
