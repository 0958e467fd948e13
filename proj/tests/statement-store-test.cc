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
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "cskb/errors.h"
#include "cskb/extraction.h"
#include "cskb/statement-store.h"
#include "test-support.h"

namespace fs = std::filesystem;
using namespace cskb;
using namespace cskb::testing;

namespace {

StoreOptions EnglishOptions(std::vector<std::string> seeds = {"chair"}) {
  StoreOptions options;
  options.seed_words = std::move(seeds);
  options.morphology = Language("en").morphology.get();
  return options;
}

Template Find(const std::vector<Template> &templates, const std::string &text) {
  for (const Template &t : templates) {
    if (t.text == text) return t;
  }
  FAIL("missing template " << text);
  return {};
}

}  // namespace

TEST_CASE("a filler completes the screw example") {
  const std::vector<Template> &templates = Language("en").templates;
  StatementStore store(templates, EnglishOptions());
  RenderedTemplate rendered = store.NextTemplate("Location");
  CHECK(rendered.source == FillerSource::kSeed);
  CHECK(rendered.dynamic_filler == "chair");
  CHECK(rendered.text == "You usually find a ___ in a chair");
  Statement s = store.Submit(rendered, "screw", Profile());
  CHECK(s.text == "You usually find a screw in a chair");
  CHECK(s.review == ReviewStatus::kPending);
  CHECK(s.id == 1);

  store.Review(s.id, ReviewDecision::kApprove);
  CHECK(store.Get(s.id)->review == ReviewStatus::kApproved);
  RenderedTemplate uses = store.NextTemplate("Uses");
  CHECK(uses.text == "A screw is used for ___");
  CHECK(uses.source == FillerSource::kStatement);
  CHECK(uses.source_statement_id == s.id);
}

TEST_CASE("submission validates its inputs") {
  const std::vector<Template> &templates = Language("en").templates;
  StatementStore store(templates, EnglishOptions());
  Template location = Find(templates, "You usually find a ___ in a {dyn}");
  CHECK_THROWS_AS(store.Submit(location, "", Profile(), "chair"), ValidationError);
  CHECK_THROWS_AS(store.Submit(location, "  ", Profile(), "chair"), ValidationError);
  CHECK_THROWS_AS(store.Submit(location, "a$$b", Profile(), "chair"), ValidationError);
  CHECK_THROWS_AS(store.Submit(location, "screw", Profile("M", "18_29", "mestrado", "", "SP"),
                               "chair"),
                  ValidationError);
  Template stray = location;
  stray.activity = "Nowhere";
  CHECK_THROWS_AS(store.Submit(stray, "screw", Profile(), "chair"), NotFoundError);
  CHECK_THROWS_AS(store.NextTemplate("Nowhere"), NotFoundError);
  CHECK_THROWS_AS(store.SubmitText("Nowhere", "text", Profile()), NotFoundError);
  CHECK(store.size() == 0);
}

TEST_CASE("templates need one blank and at most one dynamic slot") {
  CHECK_NOTHROW(ValidateTemplate({"A", "A ___ is {dyn}", "", ""}));
  CHECK_NOTHROW(ValidateTemplate({"A", "A ___ is red", "", ""}));
  CHECK_THROWS_AS(ValidateTemplate({"A", "A thing is {dyn}", "", ""}), ValidationError);
  CHECK_THROWS_AS(ValidateTemplate({"A", "A ___ is ___", "", ""}), ValidationError);
  CHECK_THROWS_AS(ValidateTemplate({"A", "A ___ {dyn} {dyn}", "", ""}), ValidationError);
  std::vector<Template> parsed = ParseTemplates("Health\tA ___ prevents {dyn}\tUsedFor\thealth\n");
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].domain == "health");
  CHECK(parsed[0].relation_hint == "UsedFor");
}

TEST_CASE("identical submissions get distinct increasing ids") {
  const std::vector<Template> &templates = Language("en").templates;
  StatementStore store(templates, EnglishOptions());
  Template location = Find(templates, "You usually find a ___ in a {dyn}");
  std::vector<std::thread> writers;
  for (int t = 0; t < 4; ++t) {
    writers.emplace_back([&, t] {
      const char *genders[] = {"M", "F"};
      for (int k = 0; k < 50; ++k) {
        store.Submit(location, "screw", Profile(genders[t % 2]), "chair");
      }
    });
  }
  for (std::thread &w : writers) w.join();
  std::vector<Statement> all = store.Snapshot();
  REQUIRE(all.size() == 200);
  std::set<StatementId> ids;
  for (const Statement &s : all) ids.insert(s.id);
  CHECK(ids.size() == 200);
  CHECK(*ids.begin() == 1);
  CHECK(*ids.rbegin() == 200);
}

TEST_CASE("1000 draws over 10 approved fillers reach every filler") {
  std::vector<Template> templates = {{"Uses", "A {dyn} is used for ___", "UsedFor", ""},
                                     {"Location", "You usually find a ___ in a {dyn}",
                                      "LocationOf", ""}};
  StoreOptions options;
  options.rng_seed = 99;
  StatementStore store(templates, options);
  std::vector<std::string> fillers = {"screw", "chair", "book", "pen",   "cup",
                                      "lamp",  "desk",  "door", "phone", "key"};
  for (const std::string &f : fillers) {
    Statement s = store.Submit(templates[1], f, Profile(), "room");
    store.Review(s.id, ReviewDecision::kApprove);
  }
  std::map<std::string, int> counts;
  for (int k = 0; k < 1000; ++k) {
    RenderedTemplate r = store.NextTemplate("Uses");
    REQUIRE(r.source == FillerSource::kStatement);
    REQUIRE(r.source_statement_id.has_value());
    CHECK(store.Get(*r.source_statement_id)->filler == r.dynamic_filler);
    ++counts[r.dynamic_filler];
  }
  CHECK(counts.size() == fillers.size());
  int low = 1000;
  int high = 0;
  for (const auto &[f, c] : counts) {
    low = std::min(low, c);
    high = std::max(high, c);
  }
  CHECK(high - low <= 30);
}

TEST_CASE("only approved fillers feed templates") {
  std::vector<Template> templates = {{"Uses", "A {dyn} is used for ___", "UsedFor", ""}};
  StatementStore store(templates, EnglishOptions({"chair"}));
  Statement pending = store.Submit(templates[0], "sitting", Profile(), "table");
  (void)pending;
  for (int k = 0; k < 20; ++k) {
    RenderedTemplate r = store.NextTemplate("Uses");
    CHECK(r.source == FillerSource::kSeed);
    CHECK(r.dynamic_filler == "chair");
  }
  StatementStore bare(templates, {});
  CHECK_THROWS_AS(bare.NextTemplate("Uses"), StateError);
}

TEST_CASE("rejection needs spelling evidence") {
  StatementStore store(Language("en").templates, EnglishOptions());
  store.RegisterActivity("free");
  Statement good = store.SubmitText("free", "You usually find a screw in a chair", Profile());
  Statement bad = store.SubmitText("free", "You usually find a komputer in a desk", Profile());
  Statement odd = store.SubmitText("free", "You usually find a chair in a screw", Profile());
  Statement named = store.SubmitText("free", "You usually find a chair in Clementina", Profile());

  CHECK(store.CheckSpelling(good.id).empty());
  CHECK(store.CheckSpelling(bad.id) == std::vector<std::string>{"komputer"});
  CHECK(store.CheckSpelling(named.id).empty());

  CHECK_THROWS_AS(store.Review(odd.id, ReviewDecision::kRejectMisspelled), ValidationError);
  CHECK_THROWS_AS(store.Review(odd.id, ReviewDecision::kRejectMisspelled, {"chair"}),
                  ValidationError);
  CHECK_THROWS_AS(store.Review(bad.id, ReviewDecision::kRejectMisspelled, {"banana"}),
                  ValidationError);
  CHECK(store.Get(odd.id)->review == ReviewStatus::kPending);

  Statement rejected = store.Review(bad.id, ReviewDecision::kRejectMisspelled, {"komputer"});
  CHECK(rejected.review == ReviewStatus::kRejectedMisspelled);
  CHECK(rejected.spelling_failures == std::vector<std::string>{"komputer"});
  CHECK_THROWS_AS(store.Review(bad.id, ReviewDecision::kApprove), StateError);

  std::vector<std::string> lines = store.ExportCorpus();
  CHECK(lines.size() == 3);
  for (const std::string &line : lines) CHECK(line.find("komputer") == std::string::npos);

  StatementStore blind({}, {});
  blind.RegisterActivity("free");
  Statement s = blind.SubmitText("free", "anything", Profile());
  CHECK_THROWS_AS(blind.CheckSpelling(s.id), StateError);
}

TEST_CASE("export uses the seven-slot format") {
  StatementStore empty({}, {});
  CHECK(empty.ExportCorpus().empty());

  StatementStore store({}, {});
  store.RegisterActivity("free");
  store.SubmitText("free", "Um(a) computador é usado(a) para estudar", Profile());
  std::vector<std::string> lines = store.ExportCorpus();
  REQUIRE(lines.size() == 1);
  CHECK(lines[0] == "Um(a) computador é usado(a) para estudar$$M$$18_29$$mestrado$$Clementina$$SP$$1");
}

TEST_CASE("export then import reproduces the store") {
  std::mt19937_64 rng(31);
  std::vector<std::string> corpus = RandomCorpus(rng, 120);
  StatementStore store({}, {});
  CHECK(store.Import(corpus) == corpus.size());
  CHECK_THROWS_AS(store.Import({corpus[0]}), ValidationError);
  std::vector<std::string> exported = store.ExportCorpus();
  CHECK(exported == corpus);
  for (const std::string &line : exported) {
    size_t separators = 0;
    for (size_t pos = line.find("$$"); pos != std::string::npos; pos = line.find("$$", pos + 2)) {
      ++separators;
    }
    CHECK(separators == 6);
  }

  StatementStore copy({}, {});
  copy.Import(exported);
  std::vector<Statement> a = store.Snapshot();
  std::vector<Statement> b = copy.Snapshot();
  REQUIRE(a.size() == b.size());
  for (size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].id == b[k].id);
    CHECK(a[k].text == b[k].text);
    CHECK(a[k].profile == b[k].profile);
  }

  fs::path file = fs::temp_directory_path() /
                  ("cskb-store-" + std::to_string(std::random_device{}()) + ".jsonl");
  store.Review(5, ReviewDecision::kApprove);
  store.Save(file.string());
  StatementStore loaded({}, {});
  loaded.Load(file.string());
  CHECK(loaded.Snapshot() == store.Snapshot());
  fs::remove(file);
}

TEST_CASE("domain templates are ordinary templates") {
  const std::vector<Template> &templates = Language("pt").templates;
  std::set<std::string> domains;
  for (const Template &t : templates) {
    if (!t.domain.empty()) domains.insert(t.domain);
  }
  CHECK(domains == std::set<std::string>{"cores", "educação sexual", "saúde"});
  StatementStore store(templates, {});
  for (const Template &t : templates) CHECK(store.HasActivity(t.activity));
}
