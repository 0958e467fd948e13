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

#include "cskb/inference.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_set>

#include "cskb/errors.h"
#include "cskb/normalization.h"
#include "cskb/text.h"

namespace cskb {

namespace {

const std::string &OtherEnd(const Relation &r, const std::string &node) {
  return r.param1 == node ? r.param2 : r.param1;
}

void Spread(const ConceptNet &net, const std::string &node, double product,
            int length, const ContextOptions &options,
            std::unordered_set<std::string> &on_path,
            std::map<std::string, double> &activation) {
  if (length == options.depth) return;
  for (size_t index : net.Incident(node)) {
    const Relation &r = net.relations()[index];
    if (r.param1 == r.param2) continue;
    const std::string &next = OtherEnd(r, node);
    if (on_path.count(next)) continue;
    double value = product * EdgeStrength(r);
    activation[next] += value * std::pow(options.decay, length);
    on_path.insert(next);
    Spread(net, next, value, length + 1, options, on_path, activation);
    on_path.erase(next);
  }
}

}  // namespace

double EdgeStrength(const Relation &relation) {
  return std::log1p(static_cast<double>(relation.f + relation.i));
}

std::vector<std::string> ResolveConcept(const ConceptNet &net,
                                        std::string_view name) {
  if (net.HasConcept(name)) return {std::string(name)};
  std::vector<std::string> out;
  for (const std::string &label : net.Concepts()) {
    if (StripTags(label) == name) out.push_back(label);
  }
  return out;
}

std::vector<ScoredConcept> GetContext(std::span<const std::string> seeds,
                                      const ConceptNet &net,
                                      const ContextOptions &options) {
  if (options.depth < 1) throw ValidationError("depth must be >= 1");

  std::set<std::string> seed_nodes;
  for (const std::string &seed : seeds) {
    for (std::string &node : ResolveConcept(net, seed)) {
      seed_nodes.insert(std::move(node));
    }
  }

  std::map<std::string, double> total;
  std::map<std::string, size_t> reached_by;
  for (const std::string &seed : seed_nodes) {
    std::map<std::string, double> activation;
    std::unordered_set<std::string> on_path{seed};
    Spread(net, seed, 1.0, 0, options, on_path, activation);
    for (const auto &[node, value] : activation) {
      total[node] += value;
      ++reached_by[node];
    }
  }

  std::vector<ScoredConcept> out;
  for (auto &[node, score] : total) {
    if (seed_nodes.count(node)) continue;
    double boost = 1.0;
    if (seed_nodes.size() > 1 && reached_by[node] == seed_nodes.size()) {
      boost = static_cast<double>(seed_nodes.size());
    }
    out.push_back({node, score * boost});
  }
  std::sort(out.begin(), out.end(), [](const ScoredConcept &a, const ScoredConcept &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.name < b.name;
  });
  return out;
}

std::vector<NodeEntry> DisplayNode(std::string_view name, const ConceptNet &net,
                                   const RenderTemplates &templates,
                                   const TypeRegistry &registry) {
  std::vector<NodeEntry> out;
  for (const std::string &node : ResolveConcept(net, name)) {
    for (size_t index : net.Incident(node)) {
      const Relation &r = net.relations()[index];
      out.push_back({r, RenderSentence(r, templates, registry), r.ids});
    }
  }
  return out;
}

namespace {

class AnalogyBuilder {
 public:
  AnalogyBuilder(const ConceptNet &base, const ConceptNet &target)
      : base_(base), target_(target) {
    for (const Relation &rb : base_.relations()) {
      for (const Relation &rt : target_.relations()) {
        if (rb.type != rt.type) continue;
        if ((rb.param1 == rb.param2) != (rt.param1 == rt.param2)) continue;
        hypotheses_.push_back({&rb, &rt});
      }
    }
  }

  std::vector<Correspondence> Run() {
    std::vector<Correspondence> accepted;
    while (true) {
      bool found = false;
      std::tuple<int, int, int> best_rank{0, 0, 0};
      Pairs best;
      for (const auto &[rb, rt] : hypotheses_) {
        Pairs pairs;
        if (!NewPairs(*rb, *rt, &pairs) || pairs.empty()) continue;
        int gain = Gain(pairs);
        if (gain <= 0) continue;
        int literal = 0;
        for (const auto &[x, y] : pairs) literal += x == y;
        std::tuple<int, int, int> rank{gain, Potential(pairs), literal};
        // Strict improvement keeps the first of equal hypotheses.
        if (!found || rank > best_rank) {
          found = true;
          best_rank = rank;
          best = pairs;
        }
      }
      if (!found) break;
      for (const auto &[x, y] : best) {
        forward_[x] = y;
        backward_[y] = x;
      }
      for (const auto &[x, y] : best) {
        Correspondence c;
        c.base = x;
        c.target = y;
        c.literal = x == y;
        c.support = Support(x);
        c.systematicity = static_cast<int>(c.support.size());
        accepted.push_back(std::move(c));
      }
    }
    std::stable_partition(accepted.begin(), accepted.end(),
                          [](const Correspondence &c) { return c.literal; });
    return accepted;
  }

 private:
  using Pairs = std::vector<std::pair<std::string, std::string>>;

  // Concept pairs the hypothesis would add, or false when it contradicts the
  // current one-to-one mapping.
  bool NewPairs(const Relation &rb, const Relation &rt, Pairs *out) const {
    std::pair<std::string, std::string> ends[2] = {{rb.param1, rt.param1},
                                                   {rb.param2, rt.param2}};
    size_t count = rb.param1 == rb.param2 ? 1 : 2;
    for (size_t k = 0; k < count; ++k) {
      const auto &[x, y] = ends[k];
      auto f = forward_.find(x);
      if (f != forward_.end()) {
        if (f->second != y) return false;
        continue;
      }
      if (backward_.count(y)) return false;
      out->push_back(ends[k]);
    }
    return true;
  }

  // Hypotheses that would still align something after `pairs` is accepted.
  int Potential(const Pairs &pairs) {
    for (const auto &[x, y] : pairs) {
      forward_[x] = y;
      backward_[y] = x;
    }
    int potential = 0;
    for (const auto &[rb, rt] : hypotheses_) {
      Pairs more;
      if (NewPairs(*rb, *rt, &more) && !more.empty()) ++potential;
    }
    for (const auto &[x, y] : pairs) {
      forward_.erase(x);
      backward_.erase(y);
    }
    return potential;
  }

  std::optional<std::string> Image(const std::string &x, const Pairs &extra) const {
    auto f = forward_.find(x);
    if (f != forward_.end()) return f->second;
    for (const auto &[b, t] : extra) {
      if (b == x) return t;
    }
    return std::nullopt;
  }

  // Base relations that become aligned once `pairs` join the mapping.
  int Gain(const Pairs &pairs) const {
    std::set<size_t> touched;
    for (const auto &[x, y] : pairs) {
      for (size_t index : base_.Incident(x)) touched.insert(index);
    }
    int gain = 0;
    for (size_t index : touched) {
      const Relation &r = base_.relations()[index];
      std::optional<std::string> a = Image(r.param1, pairs);
      std::optional<std::string> b = Image(r.param2, pairs);
      if (a && b && target_.Find({r.type, *a, *b})) ++gain;
    }
    return gain;
  }

  std::vector<std::pair<RelationKey, RelationKey>> Support(const std::string &x) const {
    std::vector<std::pair<RelationKey, RelationKey>> out;
    for (size_t index : base_.Incident(x)) {
      const Relation &r = base_.relations()[index];
      std::optional<std::string> a = Image(r.param1, {});
      std::optional<std::string> b = Image(r.param2, {});
      if (!a || !b) continue;
      if (const Relation *t = target_.Find({r.type, *a, *b})) {
        out.emplace_back(r.Key(), t->Key());
      }
    }
    return out;
  }

  const ConceptNet &base_;
  const ConceptNet &target_;
  std::vector<std::pair<const Relation *, const Relation *>> hypotheses_;
  std::map<std::string, std::string> forward_;
  std::map<std::string, std::string> backward_;
};

}  // namespace

std::vector<Correspondence> GetAnalogy(const ConceptNet &base,
                                       const ConceptNet &target) {
  if (base.empty() || target.empty()) {
    throw ValidationError("analogy needs two non-empty networks");
  }
  return AnalogyBuilder(base, target).Run();
}

std::vector<std::string> ExpandQuery(std::string_view expression,
                                     const ConceptNet &net,
                                     const MorphologyProvider &morphology,
                                     const ContextOptions &options) {
  std::vector<TaggedToken> tokens = NormalizePhrase(expression, morphology);
  if (tokens.empty()) return {};
  std::string tagged = FormatTagged(tokens);
  std::string lemmas = ToLower(FormatLemmas(tokens));

  std::vector<std::string> out;
  std::set<std::string> seen;
  std::vector<std::string> exact;
  for (const std::string &label : net.Concepts()) {
    std::string plain = ToLower(StripTags(label));
    if (label == tagged || plain == lemmas) exact.push_back(label);
    if (plain.find(lemmas) != std::string::npos && seen.insert(label).second) {
      out.push_back(label);
    }
  }
  for (const ScoredConcept &scored : GetContext(exact, net, options)) {
    if (seen.insert(scored.name).second) out.push_back(scored.name);
  }
  return out;
}

std::vector<std::string> DecomposePhrases(std::string_view expression,
                                          const MorphologyProvider &morphology) {
  std::vector<TaggedToken> tokens = morphology.TagText(expression);
  const size_t n = tokens.size();
  if (n == 0) return {};

  auto nominal = [&](size_t k) {
    Tag t = tokens[k].tag;
    return t == Tag::kSubst || t == Tag::kPropn || t == Tag::kAdj;
  };
  auto head = [&](size_t k) {
    return tokens[k].tag == Tag::kSubst || tokens[k].tag == Tag::kPropn;
  };

  // Maximal nominal runs holding at least one noun.
  std::vector<std::pair<size_t, size_t>> nps;
  for (size_t k = 0; k < n;) {
    if (!nominal(k)) {
      ++k;
      continue;
    }
    size_t end = k;
    bool has_head = false;
    while (end < n && nominal(end)) has_head |= head(end++);
    if (has_head) nps.emplace_back(k, end);
    k = end;
  }

  // A preposition (optionally followed by an article) links adjacent runs.
  auto linked = [&](size_t left_end, size_t right_begin) {
    if (right_begin <= left_end) return false;
    size_t gap = right_begin - left_end;
    if (gap == 0 || gap > 2 || tokens[left_end].tag != Tag::kPrep) return false;
    return gap == 1 || tokens[left_end + 1].tag == Tag::kArt;
  };

  std::vector<std::pair<size_t, size_t>> spans{{0, n}};
  for (size_t a = 0; a < nps.size(); ++a) {
    size_t b = a;
    while (true) {
      spans.emplace_back(nps[a].first, nps[b].second);
      if (nps[a].first > 0 && tokens[nps[a].first - 1].tag == Tag::kVerb) {
        spans.emplace_back(nps[a].first - 1, nps[b].second);
      }
      if (b + 1 >= nps.size() || !linked(nps[b].second, nps[b + 1].first)) break;
      ++b;
    }
  }

  std::sort(spans.begin(), spans.end(), [](const auto &l, const auto &r) {
    size_t ll = l.second - l.first, rl = r.second - r.first;
    if (ll != rl) return ll > rl;
    return l.first < r.first;
  });
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto &[begin, end] : spans) {
    std::vector<std::string> words;
    for (size_t k = begin; k < end; ++k) words.push_back(tokens[k].surface);
    std::string phrase = Join(words, " ");
    if (seen.insert(phrase).second) out.push_back(std::move(phrase));
  }
  return out;
}

}  // namespace cskb
