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

#include <map>
#include <set>
#include <sstream>

#include "cskb/conceptnet.h"
#include "cskb/extraction.h"
#include "cskb/morphology.h"
#include "cskb/normalization.h"
#include "cskb/pipeline.h"
#include "cskb/profile-filter.h"
#include "test-support.h"

using namespace cskb;

namespace {

const MorphologyProvider &Pt() { return *testing::Language("pt").morphology; }
const MorphologyProvider &En() { return *testing::Language("en").morphology; }

std::string Norm(std::string_view text, const MorphologyProvider &m) {
  return FormatTagged(NormalizePhrase(text, m));
}

// Lemma table written by hand for the English variant corpus.
const std::map<std::string, std::string> &HandLemmas() {
  static const std::map<std::string, std::string> table = {
      {"computers", "computer"}, {"studying", "study"},  {"games", "game"},
      {"playing", "play"},       {"desks", "desk"},      {"books", "book"},
      {"reading", "read"},       {"libraries", "library"}, {"dogs", "dog"},
      {"animals", "animal"},     {"cats", "cat"},        {"trees", "tree"},
      {"houses", "house"},       {"pens", "pen"},        {"writing", "write"},
      {"letters", "letter"},     {"tables", "table"},    {"cars", "car"},
      {"driving", "drive"},      {"garages", "garage"},  {"birds", "bird"},
      {"knives", "knife"},       {"cutting", "cut"},     {"breads", "bread"},
      {"kitchens", "kitchen"},   {"notebooks", "notebook"}, {"flowers", "flower"},
      {"plants", "plant"},       {"roses", "rose"},      {"children", "child"},
      {"teachers", "teacher"},   {"schools", "school"},
  };
  return table;
}

std::string HandKey(const std::string &phrase) {
  std::istringstream in(phrase);
  std::string word, out;
  while (in >> word) {
    if (word == "a" || word == "an" || word == "the") continue;
    auto it = HandLemmas().find(word);
    if (!out.empty()) out += ' ';
    out += it == HandLemmas().end() ? word : it->second;
  }
  return out;
}

}  // namespace

TEST_CASE("enclitic verb forms become infinitives") {
  CHECK(Norm("observá-la", Pt()) == "observar/VERB");
  NormalizationStats stats;
  NormalizePhrase("observá-los", Pt(), &stats);
  CHECK(stats.clitics_rewritten == 1);
}

TEST_CASE("morphological variants reconcile") {
  CHECK(Norm("compraria cadernos novos", Pt()) == "comprar/VERB caderno/SUBST novo/ADJ");
  CHECK(Norm("comprou um caderno novo", Pt()) == "comprar/VERB caderno/SUBST novo/ADJ");
  CHECK(Norm("comprar caderno novo", Pt()) == "comprar/VERB caderno/SUBST novo/ADJ");
}

TEST_CASE("relation parameters are normalized in place") {
  Relation r = testing::Rel("MotivationOf", "usam cadernos novos", "começam a estudar",
                            1, 0, {265});
  r.profile = testing::Profile("M", "13_17", "2_incompleto", "São Carlos", "SP");
  Relation n = NormalizeRelation(r, Pt());
  CHECK(n.param1 == "usar/VERB caderno/SUBST novo/ADJ");
  CHECK(n.param2 == "começar/VERB a/PREP estudar/VERB");
  CHECK(n.profile == r.profile);
  CHECK(n.ids == r.ids);
  CHECK(NormalizeRelation(n, Pt()) == n);
}

TEST_CASE("normalization is idempotent") {
  const char *phrases[] = {"compraria cadernos novos", "mesa de escritório",
                           "usam um computador pessoal", "Maria compra livros em Campinas",
                           "observá-la na rua", "palavra desconhecida"};
  for (const char *p : phrases) {
    std::string once = Norm(p, Pt());
    CHECK(Norm(once, Pt()) == once);
  }
  std::vector<std::string> lines = ReadLines(testing::DataPath("fixtures/variants-en.txt"));
  for (const std::string &line : lines) {
    std::string text = ParseExportLine(line).text;
    std::string once = Norm(text, En());
    CHECK(Norm(once, En()) == once);
  }
}

TEST_CASE("proper names keep their surface and articles disappear") {
  std::vector<TaggedToken> tokens =
      NormalizePhrase("Maria comprou um caderno em São Carlos", Pt());
  for (const TaggedToken &t : tokens) {
    CHECK(t.tag != Tag::kArt);
    if (t.tag == Tag::kPropn) CHECK(t.lemma == t.surface);
  }
  CHECK(FormatLemmas(tokens) == "Maria comprar caderno em São Carlos");
  NormalizationStats stats;
  NormalizePhrase("o livro e a mesa", Pt(), &stats);
  CHECK(stats.articles_removed >= 1);
}

TEST_CASE("unknown tokens pass through and are counted") {
  NormalizationStats stats;
  std::vector<TaggedToken> tokens = NormalizePhrase("xyzzy", Pt(), &stats);
  REQUIRE(tokens.size() == 1);
  CHECK(tokens[0].lemma == "xyzzy");
  CHECK(tokens[0].tag == Tag::kOther);
  CHECK(stats.misses == 1);
}

TEST_CASE("ambiguous surfaces resolve by tag priority") {
  LexiconMorphology lex = LexiconMorphology::Parse("a\to\tART\na\ta\tPREP\nplay\tplay\tSUBST\nplay\tplay\tVERB\n");
  CHECK(lex.TagText("a")[0].tag == Tag::kPrep);
  CHECK(lex.TagText("play")[0].tag == Tag::kVerb);
  lex.set_priority({Tag::kSubst, Tag::kArt, Tag::kVerb, Tag::kPrep});
  CHECK(lex.TagText("play")[0].tag == Tag::kSubst);
  CHECK(lex.TagText("a")[0].tag == Tag::kArt);
}

TEST_CASE("variant parameters collapse exactly as the hand table predicts") {
  const Resources &res = testing::Language("en");
  Extractor ex(res.rules, res.registry, res.negation);
  std::vector<Relation> raw =
      ex.ExtractCorpus(ReadLines(testing::DataPath("fixtures/variants-en.txt")));
  std::map<std::string, std::set<std::string>> by_hand;
  std::set<std::string> raw_params;
  for (const Relation &r : raw) {
    for (const std::string *p : {&r.param1, &r.param2}) {
      raw_params.insert(*p);
      by_hand[HandKey(*p)].insert(StripTags(Norm(*p, En())));
    }
  }
  for (const auto &[key, normalized] : by_hand) {
    CHECK_MESSAGE(normalized.size() == 1, key);
    CHECK(*normalized.begin() == key);
  }
  CHECK(by_hand.size() < raw_params.size());
}

TEST_CASE("normalization never adds nodes or relations") {
  const Resources &res = testing::Language("en");
  std::vector<std::string> lines = ReadLines(testing::DataPath("fixtures/variants-en.txt"));
  NetworkMetrics plain = ComputeDensity(
      BuildConceptNet(ProfileQuery::MatchAll(), RunPipeline(lines, res, {}, false).relaxed));
  NetworkMetrics norm = ComputeDensity(
      BuildConceptNet(ProfileQuery::MatchAll(), RunPipeline(lines, res, {}, true).relaxed));
  CHECK(norm.nodes < plain.nodes);
  CHECK(norm.relations < plain.relations);
}

TEST_CASE("lemma keys fold case and inflection") {
  CHECK(LemmaKey("Cadernos", Pt()) == LemmaKey("caderno", Pt()));
  CHECK(LemmaKey("AIDS", En()) == "aids");
}
