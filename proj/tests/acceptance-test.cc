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


// Prints one PASS/FAIL line per acceptance criterion with its runtime and
// limit. Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cskb/conceptnet.h"
#include "cskb/extraction.h"
#include "cskb/game-service.h"
#include "cskb/inference.h"
#include "cskb/management-server.h"
#include "cskb/normalization.h"
#include "cskb/pipeline.h"
#include "cskb/profile-filter.h"
#include "cskb/relaxation.h"
#include "cskb/render.h"
#include "cskb/statement-store.h"
#include "interop.h"
#include "oracles.h"
#include "test-support.h"

using namespace cskb;
using namespace cskb::testing;
using xmlrpc::Value;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed checks; the first few messages end up in the report.
class Checker {
 public:
  void Expect(bool ok, const std::string &what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) failed_.push_back(what);
  }
  Outcome Finish(const std::string &summary) const {
    Outcome out{failures_ == 0, summary};
    if (failures_ > 0) {
      out.detail += "; " + std::to_string(failures_) + " of " + std::to_string(checks_) +
                    " checks failed:";
      for (const std::string &f : failed_) out.detail += " [" + f + "]";
    }
    return out;
  }
  size_t checks() const { return checks_; }

 private:
  size_t checks_ = 0;
  size_t failures_ = 0;
  std::vector<std::string> failed_;
};

Relation Profiled(Relation r, const ProfileAttrs &p) {
  r.profile = p;
  return r;
}

Outcome SampleExtraction() {
  Checker c;
  const Resources &pt = Language("pt");
  Extractor extractor(pt.rules, pt.registry, pt.negation);
  std::vector<std::string> got;
  for (const Relation &r : extractor.ExtractCorpus(ReadLines(DataPath("fixtures/sample-export.txt")))) {
    got.push_back(SerializeRelation(r, LineFormat::kExtracted));
  }
  std::vector<std::string> want = ReadLines(DataPath("fixtures/sample-extracted.txt"));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  c.Expect(got.size() == 4, "four relations");
  c.Expect(got == want, "serialized lines equal the expected ones");
  return c.Finish(std::to_string(got.size()) + "/4 lines byte-equal");
}

Outcome NegationGolden() {
  Checker c;
  const Resources &pt = Language("pt");
  Extractor extractor(pt.rules, pt.registry, pt.negation);
  std::vector<Relation> rels = extractor.ExtractLine(
      "Você quase nunca encontra um(a) mesa de escritório em um(a) rua"
      "$$M$$18_29$$mestrado$$Clementina$$SP$$1");
  c.Expect(rels.size() == 1, "one relation");
  if (!rels.empty()) {
    c.Expect(rels[0].Key() == RelationKey{"NotLocationOf", "mesa de escritório", "rua"},
             "NotLocationOf(mesa de escritório, rua)");
  }
  return c.Finish("NotLocationOf(\"mesa de escritório\",\"rua\")");
}

Outcome RelaxationGoldens() {
  Checker c;
  ProfileAttrs young = Profile("M", "13_17", "2_incompleto", "São Carlos", "SP");
  ProfileAttrs adult = Profile("M", "18_29", "2_completo", "São Carlos", "SP");
  std::vector<Relation> grouped =
      SeedAndGroup({Profiled(Rel("UsedFor", "computador/SUBST", "jogar/VERB", 1, 0, {25}), young),
                    Profiled(Rel("UsedFor", "computador/SUBST", "jogar/VERB", 1, 0, {387}),
                             young)});
  c.Expect(grouped.size() == 1 && grouped[0].f == 2 && grouped[0].i == 0 &&
               grouped[0].ids == std::vector<StatementId>{25, 387},
           "(a) f=2 ids 25;387");

  std::vector<Relation> derived = InferPropertyOf(
      {Profiled(Rel("IsA", "computador/SUBST pessoal/ADJ", "caro/ADJ", 1, 0, {284}), adult)});
  const Relation *prop = nullptr;
  for (const Relation &r : derived) {
    if (r.type == "PropertyOf") prop = &r;
  }
  c.Expect(prop != nullptr && prop->f == 0 && prop->i == 1 &&
               prop->ids == std::vector<StatementId>{284},
           "(b) PropertyOf f=0;i=1");

  std::vector<Relation> merged = InferPropertyOf(
      {Profiled(Rel("PropertyOf", "computador/SUBST pessoal/ADJ", "caro/ADJ", 3, 0,
                    {45, 78, 171}),
                adult),
       Profiled(Rel("IsA", "computador/SUBST pessoal/ADJ", "caro/ADJ", 1, 0, {284}), adult)});
  prop = nullptr;
  for (const Relation &r : merged) {
    if (r.type == "PropertyOf") prop = &r;
  }
  c.Expect(prop != nullptr &&
               SerializeRelation(*prop, LineFormat::kWeighted).find(
                   "\"45;78;171;284\" \"f=3;i=1\"") != std::string::npos,
           "(c) f=3;i=1 ids 45;78;171;284");
  return c.Finish("(a) f=2 \"25;387\", (b) f=0;i=1, (c) f=3;i=1 \"45;78;171;284\"");
}

Outcome NormalizationSuite() {
  Checker c;
  const MorphologyProvider &pt = *Language("pt").morphology;
  const MorphologyProvider &en = *Language("en").morphology;
  auto norm = [](std::string_view text, const MorphologyProvider &m) {
    return FormatTagged(NormalizePhrase(text, m));
  };
  c.Expect(norm("compraria cadernos novos", pt) == "comprar/VERB caderno/SUBST novo/ADJ",
           "compraria cadernos novos");
  c.Expect(norm("comprou um caderno novo", pt) == "comprar/VERB caderno/SUBST novo/ADJ",
           "comprou um caderno novo");

  std::vector<std::string> lines = ReadLines(DataPath("fixtures/variants-en.txt"));
  std::vector<std::string> phrases = {"observá-la na rua", "Maria comprou um caderno em São Carlos",
                                      "usam um computador pessoal"};
  for (const std::string &p : phrases) {
    std::string once = norm(p, pt);
    c.Expect(norm(once, pt) == once, "idempotent: " + p);
    for (const TaggedToken &t : NormalizePhrase(p, pt)) {
      c.Expect(t.tag != Tag::kArt, "article removed: " + p);
      if (t.tag == Tag::kPropn) c.Expect(t.lemma == t.surface, "PROPN kept: " + t.surface);
    }
  }
  for (const std::string &line : lines) {
    std::string text = ParseExportLine(line).text;
    std::string once = norm(text, en);
    c.Expect(norm(once, en) == once, "idempotent: " + text);
    for (const TaggedToken &t : NormalizePhrase(text, en)) {
      c.Expect(t.tag != Tag::kArt, "article removed: " + text);
    }
  }

  const Resources &res = Language("en");
  ConceptNet raw = ConceptNet::Build(RunPipeline(lines, res, {}, false).relaxed);
  ConceptNet normalized = ConceptNet::Build(RunPipeline(lines, res, {}, true).relaxed);
  NetworkMetrics before = ComputeDensity(raw);
  NetworkMetrics after = ComputeDensity(normalized);
  c.Expect(after.nodes < before.nodes, "nodes decrease");
  c.Expect(after.relations < before.relations, "relations decrease");
  std::ostringstream summary;
  summary << lines.size() << " statements: nodes " << before.nodes << "->" << after.nodes
          << ", relations " << before.relations << "->" << after.relations
          << " (strict decrease)";
  return c.Finish(summary.str());
}

Outcome FilteringOracle() {
  Checker c;
  const Resources &pt = Language("pt");
  std::mt19937_64 rng(20080101);
  size_t comparisons = 0;
  for (int corpus = 0; corpus < 100; ++corpus) {
    std::vector<std::string> lines = RandomCorpus(rng, 1 + rng() % 100);
    std::vector<Relation> relaxed = RunPipeline(lines, pt).relaxed;
    for (int q = 0; q < 20; ++q) {
      ProfileQuery::Lists lists = RandomQuery(rng);
      ConceptNet net = BuildConceptNet(ProfileQuery::Parse(lists), relaxed);
      c.Expect(AsOracle(net) == FilterOracle(lines, lists, pt),
               "corpus " + std::to_string(corpus) + " query " + std::to_string(q));
      ++comparisons;
    }
  }
  return c.Finish(std::to_string(comparisons) + " corpus/query pairs equal the oracle exactly");
}

Outcome ContextOracleEquivalence() {
  Checker c;
  std::mt19937_64 rng(1983);
  double worst = 0;
  size_t nets = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    ConceptNet net = RandomNet(rng, 2 + rng() % 12, 30, 3);
    std::vector<std::string> concepts = net.Concepts();
    std::vector<std::string> seeds{concepts[rng() % concepts.size()]};
    if (rng() % 3 == 0) seeds.push_back(concepts[rng() % concepts.size()]);
    if (seeds.size() == 2 && seeds[0] == seeds[1]) seeds.pop_back();
    int depth = 1 + static_cast<int>(rng() % 3);
    double decay = 0.25 * static_cast<double>(1 + rng() % 4);
    std::vector<ScoredConcept> got = GetContext(seeds, net, {depth, decay});
    std::map<std::string, double> want = ContextOracle(seeds, net, depth, decay);
    c.Expect(got.size() == want.size(), "same concepts, net " + std::to_string(trial));
    for (const ScoredConcept &s : got) {
      auto it = want.find(s.name);
      double diff = it == want.end() ? INFINITY : std::abs(it->second - s.score);
      worst = std::max(worst, diff);
      c.Expect(diff <= 1e-9, "score of " + s.name);
    }
    ++nets;
  }
  std::ostringstream summary;
  summary << nets << " nets (<=30 relations, depth 1-3), max |diff| " << worst
          << " (tolerance 1e-9)";
  return c.Finish(summary.str());
}

Outcome AnalogyQuality() {
  Checker c;
  std::mt19937_64 rng(1983);
  for (int trial = 0; trial < 50; ++trial) {
    ConceptNet net = RandomNet(rng, 2 + rng() % 7, 12, 3);
    std::set<std::string> bases;
    bool identity = true;
    for (const Correspondence &k : GetAnalogy(net, net)) {
      identity = identity && k.base == k.target && bases.insert(k.base).second;
    }
    c.Expect(identity && bases.size() == net.node_count(), "identity net " + std::to_string(trial));
  }
  int greedy_total = 0;
  int best_total = 0;
  int instances = 0;
  int below = 0;
  while (instances < 200) {
    ConceptNet base = RandomNet(rng, 3 + rng() % 6, 10, 2);
    ConceptNet target = RandomNet(rng, 3 + rng() % 6, 10, 2);
    if (base.node_count() > 8 || target.node_count() > 8) continue;
    std::map<std::string, std::string> mapping;
    std::set<std::string> targets;
    for (const Correspondence &k : GetAnalogy(base, target)) {
      c.Expect(!mapping.count(k.base) && targets.insert(k.target).second, "one-to-one");
      mapping[k.base] = k.target;
    }
    int greedy = MappingScore(base, target, mapping);
    int best = ExhaustiveAnalogy(base, target);
    c.Expect(greedy <= best, "greedy never beats the optimum");
    if (greedy * 10 < best * 9) ++below;
    greedy_total += greedy;
    best_total += best;
    ++instances;
  }
  double ratio = best_total == 0 ? 1.0 : static_cast<double>(greedy_total) / best_total;
  c.Expect(ratio >= 0.9, "aggregate systematicity >= 90% of optimum");
  std::ostringstream summary;
  summary << "identity on 50 nets; " << instances << " pairs (<=8 concepts): greedy "
          << greedy_total << "/" << best_total << " = " << 100.0 * ratio
          << "% of optimum (bound 90%, aggregate), " << below << " single pairs below 90%";
  return c.Finish(summary.str());
}

Outcome RenderRoundTrip() {
  Checker c;
  size_t types = 0;
  for (const char *lang : {"pt", "en"}) {
    const Resources &res = Language(lang);
    Extractor extractor(res.rules, res.registry, res.negation);
    for (const auto &[type, pattern] : res.render.patterns()) {
      Relation r = Rel(type, std::string(lang) == "pt" ? "caderno" : "notebook",
                       std::string(lang) == "pt" ? "escola" : "school");
      std::string sentence = RenderSentence(r, res.render, res.registry);
      bool hit = false;
      for (const Relation &g :
           extractor.ExtractLine(sentence + "$$M$$18_29$$mestrado$$Recife$$PE$$1")) {
        hit = hit || g.Key() == r.Key();
      }
      c.Expect(hit, std::string(lang) + " " + type);
      ++types;
    }
  }
  return c.Finish(std::to_string(types) + " affirmative templated types (pt+en) recovered");
}

Outcome ServerContract() {
  Checker c;
  const Resources &pt = Language("pt");
  std::mt19937_64 rng(51);
  Materializer mat(RunPipeline(RandomCorpus(rng, 100), pt).relaxed, {});
  InferenceResources resources{pt.registry, pt.render, pt.morphology, {}};
  ServerOptions options;
  options.management_port = 0;
  options.port_min = 23000;
  options.port_max = 23099;
  ManagementServer server(mat, resources, options);
  int management = server.Start();

  ProfileQuery query = ProfileQuery::Parse({{{"F"}, {}, {}, {}, {}}});
  std::vector<std::future<Acquisition>> futures;
  for (int k = 0; k < 50; ++k) {
    futures.push_back(std::async(std::launch::async, [&] { return server.AcquireApi(query); }));
  }
  std::set<int> ports;
  for (auto &f : futures) ports.insert(f.get().port);
  c.Expect(mat.build_count() == 1, "one build for 50 acquires");
  c.Expect(ports.size() == 1, "one port for 50 acquires");
  int port = *ports.begin();
  for (int k = 0; k < 5; ++k) c.Expect(server.AcquireApi(query).port == port, "port stable");

  ConceptNetHandle net = mat.Materialize(query);
  std::vector<std::pair<std::string, std::vector<Value>>> calls = {
      {"get_context", {Value(Value::Array{Value("computador")})}},
      {"display_node", {Value("flor/SUBST")}},
      {"get_analogy", {Value(static_cast<int64_t>(port))}},
      {"expand_query", {Value("livros")}},
      {"decompose_phrases", {Value("prevenir acidentes no ambiente de trabalho")}},
  };
  nlohmann::json expected = nlohmann::json::array();
  for (const auto &[method, params] : calls) {
    Value direct = CallInference(*net, method, params, resources,
                                 [&](const Value &) { return net; });
    c.Expect(server.Dispatch(port, method, params) == direct, "dispatch " + method);
    expected.push_back(ToJson(direct));
  }

  std::string script =
      "import json, sys, xmlrpc.client as x\n"
      "m = x.ServerProxy('http://127.0.0.1:" + std::to_string(management) + "')\n"
      "api = m.getApi(['F'], [], [], [], [])\n"
      "p = x.ServerProxy('http://127.0.0.1:%d' % api['port'])\n"
      "out = [p.get_context(['computador']), p.display_node('flor/SUBST'),\n"
      "       p.get_analogy(api['port']), p.expand_query('livros'),\n"
      "       p.decompose_phrases('prevenir acidentes no ambiente de trabalho')]\n"
      "print(json.dumps({'port': api['port'], 'results': out}))\n";
  nlohmann::json remote = nlohmann::json::parse(RunPython(script));
  c.Expect(remote["port"] == port, "independent client gets the same port");
  c.Expect(remote["results"] == expected, "independent client results equal in-process");
  c.Expect(mat.build_count() == 1, "still one build");
  server.Stop();
  return c.Finish("50 acquires -> 1 build on port " + std::to_string(port) +
                  "; 5 methods equal in-process and via python xmlrpc.client");
}

Outcome GameContract() {
  Checker c;
  const Resources &en = Language("en");
  StatementStore store(en.templates, {});
  std::vector<std::string> corpus = {
      "Aids is a(n) sexually transmitted disease$$F$$30_45$$mestrado$$Recife$$PE$$1"};
  Materializer mat(RunPipeline(corpus, en).relaxed, {});
  GameService service(store, mat, en.morphology, en.registry, en.render);

  std::vector<std::string> pool = {"s1", "s2", "s3", "s4", "s5"};
  for (size_t n = 1; n <= 5; ++n) {
    std::vector<std::string> synonyms(pool.begin(), pool.begin() + n);
    c.Expect(service.RecordSynonyms("aids", synonyms, Profile()).size() == n + n * (n - 1) / 2,
             "synonym count n=" + std::to_string(n));
  }

  std::vector<std::string> topics = {"A", "B", "C", "D", "E", "F"};
  GameInstance g = service.CreateGame(Profile());
  service.SetProfile(g.id, ProfileQuery::MatchAll());
  service.SetTheme(g.id, "sexual education");
  service.SetTopics(g.id, topics);
  std::vector<CardDraft> drafts;
  for (const std::string &t : topics) drafts.push_back({t, "aids", {"sida"}});
  service.SetSecretWords(g.id, drafts);
  for (size_t k = 0; k < topics.size(); ++k) {
    std::vector<Clue> clues;
    for (int n = 1; n <= 10; ++n) clues.push_back({"Clue " + std::to_string(n), ClueSource::kAuthored});
    service.SetClues(g.id, k, clues);
  }
  service.Review(g.id);
  service.Publish(g.id);

  auto play_records = [&] {
    size_t n = 0;
    for (const Statement &s : store.Snapshot()) n += s.activity == kPlayActivity;
    return n;
  };
  std::mt19937_64 rng(9);
  size_t expected = 0;
  const std::vector<std::string> guesses = {"aids", "AIDS", "sida", "Sida", "hiv", "flu"};
  for (int session = 0; session < 20; ++session) {
    PlaySession s = service.StartSession(g.id, Profile());
    service.Roll(s.id);
    std::vector<int> order = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t k = 0; k < order.size(); ++k) {
      service.RevealClue(s.id, order[k]);
      if (rng() % 2) continue;
      const std::string &text = guesses[rng() % guesses.size()];
      Guess guess = service.SubmitGuess(s.id, text);
      bool should_match = text != "hiv" && text != "flu";
      c.Expect((guess.outcome == GuessOutcome::kCorrect) == should_match, "match " + text);
      c.Expect(GuessOutcomeName(guess.outcome) == "correct" ||
                   GuessOutcomeName(guess.outcome) == "open",
               "never incorrect");
      expected += k + 1;
    }
  }
  c.Expect(play_records() == expected, "records equal revealed-at-guess sum");

  std::map<std::string, int> counts;
  for (int k = 0; k < 6000; ++k) ++counts[service.RollDice(g.id)];
  double chi = 0;
  for (const std::string &t : topics) chi += (counts[t] - 1000.0) * (counts[t] - 1000.0) / 1000.0;
  c.Expect(chi < 20.515, "chi-square below the p=0.001 critical value");
  std::ostringstream summary;
  summary << "synonyms n+n(n-1)/2 for n=1..5; " << expected
          << " records = revealed sum; dice chi2=" << chi << " < 20.515 (df 5, p>0.001)";
  return c.Finish(summary.str());
}

struct Criterion {
  const char *name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"extraction-golden", 1, SampleExtraction},
      {"negation-golden", 1, NegationGolden},
      {"relaxation-goldens", 1, RelaxationGoldens},
      {"normalization-properties", 5, NormalizationSuite},
      {"filtering-oracle", 60, FilteringOracle},
      {"context-oracle", 30, ContextOracleEquivalence},
      {"analogy-bound", 60, AnalogyQuality},
      {"render-roundtrip", 1, RenderRoundTrip},
      {"server-contract", 30, ServerContract},
      {"game-service", 30, GameContract},
  };
  // Load resources before timing.
  Language("pt");
  Language("en");
  int failed = 0;
  for (const Criterion &criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception &e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = seconds < criterion.limit_seconds;
    bool pass = outcome.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %-26s %.3f s (limit %.0f s) %s%s\n", pass ? "PASS" : "FAIL", criterion.name,
                seconds, criterion.limit_seconds, outcome.detail.c_str(),
                in_time ? "" : " [over time limit]");
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
