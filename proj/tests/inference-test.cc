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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cskb/errors.h"
#include "cskb/extraction.h"
#include "cskb/inference.h"
#include "cskb/normalization.h"
#include "cskb/pipeline.h"
#include "cskb/profile-filter.h"
#include "cskb/render.h"
#include "oracles.h"
#include "test-support.h"

namespace fs = std::filesystem;
using namespace cskb;
using namespace cskb::testing;

namespace {

std::map<std::string, std::string> MappingOf(const std::vector<Correspondence> &result) {
  std::map<std::string, std::string> mapping;
  for (const Correspondence &c : result) mapping[c.base] = c.target;
  return mapping;
}

bool OneToOne(const std::vector<Correspondence> &result) {
  std::set<std::string> bases;
  std::set<std::string> targets;
  for (const Correspondence &c : result) {
    if (!bases.insert(c.base).second || !targets.insert(c.target).second) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("context scores match exhaustive path enumeration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    ConceptNet net = RandomNet(rng, 2 + rng() % 10, 30, 3);
    std::vector<std::string> concepts = net.Concepts();
    std::vector<std::string> seeds{concepts[rng() % concepts.size()]};
    if (rng() % 3 == 0) seeds.push_back(concepts[rng() % concepts.size()]);
    if (seeds.size() == 2 && seeds[0] == seeds[1]) seeds.pop_back();
    int depth = 1 + static_cast<int>(rng() % 3);
    double decay = 0.25 + 0.25 * static_cast<double>(rng() % 3);
    std::vector<ScoredConcept> got = GetContext(seeds, net, {depth, decay});
    std::map<std::string, double> expected = ContextOracle(seeds, net, depth, decay);
    REQUIRE(got.size() == expected.size());
    for (size_t k = 0; k < got.size(); ++k) {
      REQUIRE(expected.count(got[k].name) == 1);
      CHECK(std::abs(got[k].score - expected[got[k].name]) <= 1e-9);
      for (const std::string &s : seeds) CHECK(got[k].name != s);
      if (k > 0) CHECK(got[k - 1].score >= got[k].score);
    }
  }
}

TEST_CASE("context resolves tag-free seeds and rejects bad depth") {
  ConceptNet net = ConceptNet::Build({Rel("UsedFor", "computador/SUBST", "estudar/VERB"),
                                      Rel("LocationOf", "computador/SUBST", "mesa/SUBST", 3),
                                      Rel("IsA", "solo/SUBST", "solo/SUBST")});
  std::vector<std::string> seeds{"computador"};
  std::vector<ScoredConcept> got = GetContext(seeds, net);
  REQUIRE(got.size() == 2);
  CHECK(got[0].name == "mesa/SUBST");
  CHECK(got[0].score == doctest::Approx(std::log(4.0)));
  std::vector<std::string> lonely{"solo/SUBST"};
  CHECK(GetContext(lonely, net).empty());
  std::vector<std::string> missing{"nada"};
  CHECK(GetContext(missing, net).empty());
  CHECK_THROWS_AS(GetContext(seeds, net, {0, 0.5}), ValidationError);
}

TEST_CASE("display node renders each incident relation") {
  const Resources &en = Language("en");
  ConceptNet net = ConceptNet::Build(
      {Rel("UsedFor", "computer/SUBST", "study/VERB", 1, 0, {4, 9}),
       Rel("LocationOf", "computer/SUBST", "desk/SUBST", 2, 0, {5})});
  std::vector<NodeEntry> entries = DisplayNode("computer/SUBST", net, en.render, en.registry);
  REQUIRE(entries.size() == 2);
  bool found = false;
  for (const NodeEntry &e : entries) {
    if (e.relation.type == "UsedFor") {
      CHECK(e.sentence == "A computer is used for study");
      CHECK(e.ids == std::vector<StatementId>{4, 9});
      found = true;
    }
  }
  CHECK(found);
  CHECK(DisplayNode("keyboard", net, en.render, en.registry).empty());
}

TEST_CASE("display node count equals the degree in the persisted file") {
  std::mt19937_64 rng(21);
  const Resources &pt = Language("pt");
  std::vector<std::string> lines = RandomCorpus(rng, 100);
  fs::path dir = fs::temp_directory_path() /
                 ("cskb-display-" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  MaterializerOptions options;
  options.output_dir = dir.string();
  Materializer mat(RunPipeline(lines, pt).relaxed, options);
  ConceptNetHandle net = mat.Materialize(ProfileQuery::MatchAll());
  std::vector<std::string> file_lines = ReadLines(mat.NetworkPath(ProfileQuery::MatchAll()));
  for (const std::string &label : net->Concepts()) {
    std::string quoted = " \"" + label + "\" ";
    size_t degree = 0;
    for (const std::string &line : file_lines) {
      size_t first = line.find(' ');
      std::string rest = line.substr(first);
      if (rest.find(quoted) == std::string::npos) continue;
      ++degree;
    }
    std::vector<NodeEntry> entries = DisplayNode(label, *net, pt.render, pt.registry);
    CHECK(entries.size() == degree);
  }
  fs::remove_all(dir);
}

TEST_CASE("sun maps onto moon through the shared location") {
  ConceptNet base = ConceptNet::Build(
      {Rel("IsA", "sun", "star"), Rel("LocationOf", "sun", "sky")});
  ConceptNet target = ConceptNet::Build(
      {Rel("IsA", "moon", "satellite"), Rel("LocationOf", "moon", "sky")});
  std::vector<Correspondence> result = GetAnalogy(base, target);
  std::map<std::string, std::string> mapping = MappingOf(result);
  REQUIRE(mapping.count("sun") == 1);
  CHECK(mapping["sun"] == "moon");
  for (const Correspondence &c : result) {
    if (c.base == "sun") CHECK(c.systematicity == 1);
  }
  CHECK(MappingScore(base, target, mapping) == ExhaustiveAnalogy(base, target));
  CHECK(OneToOne(result));
}

TEST_CASE("identity analogy pairs each concept with itself") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    ConceptNet net = RandomNet(rng, 2 + rng() % 7, 12, 3);
    std::vector<Correspondence> result = GetAnalogy(net, net);
    CHECK(OneToOne(result));
    for (const Correspondence &c : result) {
      CHECK(c.base == c.target);
      CHECK(c.literal);
    }
    std::set<std::string> mapped;
    for (const Correspondence &c : result) mapped.insert(c.base);
    for (const Relation &r : net.relations()) {
      CHECK(mapped.count(r.param1) == 1);
      CHECK(mapped.count(r.param2) == 1);
    }
    CHECK(MappingScore(net, net, MappingOf(result)) ==
          static_cast<int>(net.relation_count()));
  }
}

TEST_CASE("disjoint relation types give no analogy and empty nets throw") {
  ConceptNet base = ConceptNet::Build({Rel("IsA", "a", "b")});
  ConceptNet target = ConceptNet::Build({Rel("UsedFor", "a", "b")});
  CHECK(GetAnalogy(base, target).empty());
  CHECK_THROWS_AS(GetAnalogy(base, ConceptNet()), ValidationError);
}

TEST_CASE("greedy analogy stays close to the exhaustive optimum") {
  std::mt19937_64 rng(17);
  int greedy_total = 0;
  int best_total = 0;
  int below = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ConceptNet base = RandomNet(rng, 3 + rng() % 6, 10, 2);
    ConceptNet target = RandomNet(rng, 3 + rng() % 6, 10, 2);
    REQUIRE(base.node_count() <= 8);
    REQUIRE(target.node_count() <= 8);
    std::vector<Correspondence> result = GetAnalogy(base, target);
    CHECK(OneToOne(result));
    int greedy = MappingScore(base, target, MappingOf(result));
    int best = ExhaustiveAnalogy(base, target);
    CHECK(greedy <= best);
    if (greedy * 10 < best * 9) ++below;
    greedy_total += greedy;
    best_total += best;
  }
  MESSAGE("greedy " << greedy_total << " of optimum " << best_total << ", " << below
                    << " instances below 90%");
  CHECK(greedy_total * 10 >= best_total * 9);
}

TEST_CASE("query expansion finds compounds containing the lemma") {
  const Resources &pt = Language("pt");
  ConceptNet net = ConceptNet::Build(
      {Rel("UsedFor", "alarme/SUBST de/PREP fogo/SUBST", "avisar/VERB"),
       Rel("LocationOf", "porta/SUBST corta-fogo/ADJ", "escola/SUBST"),
       Rel("LocationOf", "fogo/SUBST", "lareira/SUBST", 2)});
  std::vector<std::string> got = ExpandQuery("fogo", net, *pt.morphology);
  auto has = [&](const std::string &s) {
    return std::find(got.begin(), got.end(), s) != got.end();
  };
  CHECK(has("alarme/SUBST de/PREP fogo/SUBST"));
  CHECK(has("porta/SUBST corta-fogo/ADJ"));
  CHECK(has("lareira/SUBST"));
  CHECK(ExpandQuery("xilofone", net, *pt.morphology).empty());
}

TEST_CASE("substring hits equal a linear scan of the labels") {
  std::mt19937_64 rng(23);
  const Resources &pt = Language("pt");
  ConceptNet net = BuildConceptNet(ProfileQuery::MatchAll(),
                                   RunPipeline(RandomCorpus(rng, 100), pt).relaxed);
  for (const char *expr : {"computador", "livros", "flor", "ler", "rosa", "mesa"}) {
    std::vector<TaggedToken> tokens = NormalizePhrase(expr, *pt.morphology);
    std::string lemma = FormatLemmas(tokens);
    std::vector<std::string> scan;
    for (const std::string &label : net.Concepts()) {
      if (StripTags(label).find(lemma) != std::string::npos) scan.push_back(label);
    }
    std::vector<std::string> got = ExpandQuery(expr, net, *pt.morphology);
    REQUIRE(got.size() >= scan.size());
    CHECK(std::vector<std::string>(got.begin(), got.begin() + scan.size()) == scan);
  }
}

TEST_CASE("phrases decompose into contiguous noun and verb phrases") {
  const Resources &pt = Language("pt");
  std::string text = "prevenir acidentes no ambiente de trabalho";
  std::vector<std::string> got = DecomposePhrases(text, *pt.morphology);
  for (const char *want : {"acidentes", "ambiente de trabalho", "prevenir acidentes",
                           "acidentes no ambiente de trabalho", text.c_str()}) {
    CHECK(std::find(got.begin(), got.end(), want) != got.end());
  }
  std::set<std::string> unique(got.begin(), got.end());
  CHECK(unique.size() == got.size());
  for (size_t k = 0; k < got.size(); ++k) {
    CHECK(text.find(got[k]) != std::string::npos);
    if (k > 0) CHECK(got[k - 1].size() >= got[k].size());
  }
  CHECK(DecomposePhrases("caderno", *pt.morphology) == std::vector<std::string>{"caderno"});
}

TEST_CASE("render fills templates and falls back for untemplated types") {
  const Resources &en = Language("en");
  CHECK(RenderSentence(Rel("IsA", "aids/SUBST", "sexually/ADV transmitted/ADJ disease/SUBST"),
                       en.render, en.registry) ==
        "Aids is a(n) sexually transmitted disease");
  CHECK(RenderSentence(Rel("NotUsedFor", "car", "swim"), en.render, en.registry) ==
        "A car is not used for swim");
  std::string fallback = RenderSentence(Rel("EffectOf", "rain", "flood"), en.render, en.registry);
  CHECK(fallback == "rain \xE2\x80\x94 EffectOf \xE2\x80\x94 flood");
}

TEST_CASE("extracting a rendered sentence recovers the relation key") {
  for (const char *lang : {"pt", "en"}) {
    const Resources &res = Language(lang);
    Extractor extractor(res.rules, res.registry, res.negation);
    std::string a = std::string(lang) == "pt" ? "caderno" : "notebook";
    std::string b = std::string(lang) == "pt" ? "escola" : "school";
    size_t checked = 0;
    for (const auto &[type, pattern] : res.render.patterns()) {
      std::vector<std::string> types{type};
      if (!pattern.negative.empty()) {
        std::optional<std::string> negative = res.registry.NegativeOf(type);
        REQUIRE(negative.has_value());
        types.push_back(*negative);
      }
      for (const std::string &ty : types) {
        Relation r = Rel(ty, a, b);
        std::string sentence = RenderSentence(r, res.render, res.registry);
        std::vector<Relation> got =
            extractor.ExtractLine(sentence + "$$M$$18_29$$mestrado$$Recife$$PE$$1");
        bool hit = false;
        for (const Relation &g : got) hit |= g.Key() == r.Key();
        INFO(lang << " " << sentence);
        CHECK(hit);
        ++checked;
      }
    }
    CHECK(checked >= 6);
  }
}
