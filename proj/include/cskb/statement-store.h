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

// Collected statements, templates and the feedback/review workflow.

#ifndef CSKB_STATEMENT_STORE_H_
#define CSKB_STATEMENT_STORE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "cskb/morphology.h"
#include "cskb/profile.h"
#include "cskb/relation.h"

namespace cskb {

inline constexpr std::string_view kBlank = "___";
inline constexpr std::string_view kDynamicSlot = "{dyn}";

struct Template {
  std::string activity;
  std::string text;           // one "___", at most one "{dyn}"
  std::string relation_hint;  // relation type name, may be empty
  std::string domain;         // e.g. "health"; empty for general templates

  bool has_dynamic_slot() const;

  bool operator==(const Template &) const = default;
};

// Throws ValidationError unless the text has exactly one blank and at most
// one dynamic slot.
void ValidateTemplate(const Template &tmpl);

// `activity<TAB>text<TAB>relation_hint[<TAB>domain]` per line.
std::vector<Template> ParseTemplates(std::string_view text);
std::vector<Template> LoadTemplates(const std::string &path);

enum class ReviewStatus { kPending, kApproved, kRejectedMisspelled };

std::string_view ReviewStatusName(ReviewStatus status);
ReviewStatus ParseReviewStatus(std::string_view name);

enum class ReviewDecision { kApprove, kRejectMisspelled };

struct Statement {
  StatementId id = 0;
  std::string text;
  std::string filler;   // what the contributor typed into the blank
  std::string dynamic;  // dynamic-slot filler of the rendered template
  ProfileAttrs profile;
  std::string activity;
  ReviewStatus review = ReviewStatus::kPending;
  std::vector<std::string> spelling_failures;  // evidence for a rejection

  bool operator==(const Statement &) const = default;
};

enum class FillerSource { kNone, kStatement, kSeed };

struct RenderedTemplate {
  Template tmpl;
  std::string dynamic_filler;
  FillerSource source = FillerSource::kNone;
  std::optional<StatementId> source_statement_id;
  std::string text;  // dynamic slot substituted, blank still open
};

struct StoreOptions {
  std::vector<std::string> seed_words;
  uint64_t rng_seed = 20080101;
  // Enables spelling validation for reviews; not owned.
  const MorphologyProvider *morphology = nullptr;
  EducationVocabulary education;
};

// Thread-safe: writes are serialized, reads share the lock.
class StatementStore {
 public:
  explicit StatementStore(std::vector<Template> templates = {},
                          StoreOptions options = {});

  StatementStore(const StatementStore &) = delete;
  StatementStore &operator=(const StatementStore &) = delete;

  // Activities that accept raw statements without a template (game
  // collection, synonyms).
  void RegisterActivity(std::string activity);
  bool HasActivity(std::string_view activity) const;
  std::vector<std::string> Activities() const;
  std::vector<Template> TemplatesFor(std::string_view activity) const;

  // Picks a template of the activity and fills its dynamic slot from an
  // approved statement's filler, each filler weighted by 1 / (1 + times
  // already used). Falls back to the seed words. Throws NotFoundError for an
  // unknown activity.
  RenderedTemplate NextTemplate(std::string_view activity);

  // Substitutes the blank with `filler`. Throws ValidationError on an empty
  // filler, an incomplete profile or a "$$" in the text, NotFoundError on an
  // unknown activity.
  Statement Submit(const RenderedTemplate &rendered, std::string_view filler,
                   const ProfileAttrs &profile);
  Statement Submit(const Template &tmpl, std::string_view filler,
                   const ProfileAttrs &profile, std::string_view dynamic = "");

  // Stores a complete sentence under a registered activity.
  Statement SubmitText(std::string_view activity, std::string_view text,
                       const ProfileAttrs &profile);

  // Tokens of the statement that fail spelling validation: not known to the
  // morphology provider and not capitalized. Throws StateError without a
  // provider.
  std::vector<std::string> CheckSpelling(StatementId id) const;

  // Approve, or reject with spelling evidence. Every evidence token must
  // occur in the statement and fail spelling validation; anything else is
  // refused with ValidationError. Only pending statements can be reviewed.
  Statement Review(StatementId id, ReviewDecision decision,
                   std::vector<std::string> evidence = {});

  std::optional<Statement> Get(StatementId id) const;
  std::vector<Statement> Snapshot() const;
  size_t size() const;

  // text$$gender$$age$$education$$city$$state$$id, ascending id, rejected
  // statements left out.
  std::vector<std::string> ExportCorpus() const;

  // Adds export lines as pending statements keeping their ids. Throws
  // ValidationError on an id that is already present.
  size_t Import(const std::vector<std::string> &lines,
                std::string_view activity = "imported");

  // JSON lines, one statement per line.
  void Save(const std::string &path) const;
  void Load(const std::string &path);

 private:
  Statement Insert(Statement statement);
  void ValidateProfile(const ProfileAttrs &profile) const;
  std::vector<std::string> Misspelled(std::string_view text) const;

  mutable std::shared_mutex mu_;
  std::vector<Template> templates_;
  std::set<std::string, std::less<>> activities_;
  StoreOptions options_;
  std::map<StatementId, Statement> statements_;
  std::map<std::string, uint64_t> filler_usage_;
  std::map<std::string, uint64_t> template_usage_;
  StatementId next_id_ = 1;
  std::mt19937_64 rng_;
};

}  // namespace cskb

#endif  // CSKB_STATEMENT_STORE_H_
