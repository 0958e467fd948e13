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

#include "cskb/statement-store.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <mutex>
#include <sstream>

#include "json.hpp"

#include "cskb/errors.h"
#include "cskb/extraction.h"
#include "cskb/text.h"

namespace cskb {

namespace {

size_t CountOccurrences(std::string_view text, std::string_view needle) {
  size_t count = 0;
  for (size_t pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

std::string ReplaceFirst(std::string text, std::string_view needle,
                         std::string_view replacement) {
  size_t pos = text.find(needle);
  if (pos != std::string::npos) text.replace(pos, needle.size(), replacement);
  return text;
}

bool IsNumber(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

nlohmann::json ToJson(const Statement &s) {
  auto slots = ProfileSlots(s.profile);
  return {{"id", s.id},
          {"text", s.text},
          {"filler", s.filler},
          {"dynamic", s.dynamic},
          {"profile", slots},
          {"activity", s.activity},
          {"review", ReviewStatusName(s.review)},
          {"spelling_failures", s.spelling_failures}};
}

Statement FromJson(const nlohmann::json &j) {
  Statement s;
  s.id = j.at("id").get<StatementId>();
  s.text = j.at("text").get<std::string>();
  s.filler = j.value("filler", "");
  s.dynamic = j.value("dynamic", "");
  auto slots = j.at("profile").get<std::vector<std::string>>();
  if (slots.size() != 5) throw ParseError("profile needs five slots");
  s.profile = MakeProfile(slots[0], slots[1], slots[2], slots[3], slots[4],
                          EducationVocabulary(std::set<std::string>{slots[2]}));
  s.activity = j.at("activity").get<std::string>();
  s.review = ParseReviewStatus(j.at("review").get<std::string>());
  s.spelling_failures =
      j.value("spelling_failures", std::vector<std::string>{});
  return s;
}

}  // namespace

bool Template::has_dynamic_slot() const {
  return text.find(kDynamicSlot) != std::string::npos;
}

void ValidateTemplate(const Template &tmpl) {
  if (Trim(tmpl.activity).empty()) {
    throw ValidationError("template without activity: " + tmpl.text);
  }
  if (CountOccurrences(tmpl.text, kBlank) != 1) {
    throw ValidationError("template needs exactly one ___: " + tmpl.text);
  }
  if (CountOccurrences(tmpl.text, kDynamicSlot) > 1) {
    throw ValidationError("template has more than one {dyn}: " + tmpl.text);
  }
}

std::vector<Template> ParseTemplates(std::string_view text) {
  std::vector<Template> out;
  int lineno = 0;
  for (const std::string &raw : Split(text, "\n")) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line)[0] == '#') continue;
    std::vector<std::string> fields = Split(line, "\t");
    if (fields.size() < 3 || fields.size() > 4) {
      throw ParseError("template line " + std::to_string(lineno) +
                       ": expected activity<TAB>text<TAB>relation[<TAB>domain]");
    }
    Template t{std::string(Trim(fields[0])), std::string(Trim(fields[1])),
               std::string(Trim(fields[2])),
               fields.size() == 4 ? std::string(Trim(fields[3])) : ""};
    ValidateTemplate(t);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Template> LoadTemplates(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open templates: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseTemplates(buffer.str());
}

std::string_view ReviewStatusName(ReviewStatus status) {
  switch (status) {
    case ReviewStatus::kPending:
      return "pending";
    case ReviewStatus::kApproved:
      return "approved_for_feedback";
    case ReviewStatus::kRejectedMisspelled:
      return "rejected_misspelled";
  }
  return "pending";
}

ReviewStatus ParseReviewStatus(std::string_view name) {
  if (name == "pending") return ReviewStatus::kPending;
  if (name == "approved_for_feedback") return ReviewStatus::kApproved;
  if (name == "rejected_misspelled") return ReviewStatus::kRejectedMisspelled;
  throw ParseError("unknown review status: " + std::string(name));
}

StatementStore::StatementStore(std::vector<Template> templates,
                               StoreOptions options)
    : templates_(std::move(templates)),
      options_(std::move(options)),
      rng_(options_.rng_seed) {
  for (const Template &t : templates_) {
    ValidateTemplate(t);
    activities_.insert(t.activity);
  }
}

void StatementStore::RegisterActivity(std::string activity) {
  if (Trim(activity).empty()) throw ValidationError("empty activity name");
  std::unique_lock lock(mu_);
  activities_.insert(std::move(activity));
}

bool StatementStore::HasActivity(std::string_view activity) const {
  std::shared_lock lock(mu_);
  return activities_.count(activity) > 0;
}

std::vector<std::string> StatementStore::Activities() const {
  std::shared_lock lock(mu_);
  return {activities_.begin(), activities_.end()};
}

std::vector<Template> StatementStore::TemplatesFor(std::string_view activity) const {
  std::shared_lock lock(mu_);
  std::vector<Template> out;
  for (const Template &t : templates_) {
    if (t.activity == activity) out.push_back(t);
  }
  return out;
}

RenderedTemplate StatementStore::NextTemplate(std::string_view activity) {
  std::unique_lock lock(mu_);
  std::vector<size_t> candidates;
  for (size_t k = 0; k < templates_.size(); ++k) {
    if (templates_[k].activity == activity) candidates.push_back(k);
  }
  if (candidates.empty()) {
    throw NotFoundError("unknown activity: " + std::string(activity));
  }

  // Least used template first; file order breaks ties.
  size_t chosen = candidates.front();
  for (size_t k : candidates) {
    if (template_usage_[templates_[k].text] <
        template_usage_[templates_[chosen].text]) {
      chosen = k;
    }
  }
  ++template_usage_[templates_[chosen].text];

  RenderedTemplate out;
  out.tmpl = templates_[chosen];
  out.text = out.tmpl.text;
  if (!out.tmpl.has_dynamic_slot()) return out;

  // Distinct approved fillers, remembering the first statement of each.
  std::map<std::string, StatementId> fillers;
  for (const auto &[id, s] : statements_) {
    if (s.review != ReviewStatus::kApproved) continue;
    std::string filler(Trim(s.filler));
    if (!filler.empty()) fillers.emplace(filler, id);
  }

  if (!fillers.empty()) {
    std::vector<std::string> names;
    std::vector<double> weights;
    for (const auto &entry : fillers) {
      names.push_back(entry.first);
      weights.push_back(1.0 / (1.0 + static_cast<double>(filler_usage_[entry.first])));
    }
    std::discrete_distribution<size_t> pick(weights.begin(), weights.end());
    const std::string &filler = names[pick(rng_)];
    ++filler_usage_[filler];
    out.dynamic_filler = filler;
    out.source = FillerSource::kStatement;
    out.source_statement_id = fillers[filler];
  } else if (!options_.seed_words.empty()) {
    std::uniform_int_distribution<size_t> pick(0, options_.seed_words.size() - 1);
    out.dynamic_filler = options_.seed_words[pick(rng_)];
    out.source = FillerSource::kSeed;
  } else {
    throw StateError("no approved statement or seed word for activity " +
                     std::string(activity));
  }
  out.text = ReplaceFirst(out.text, kDynamicSlot, out.dynamic_filler);
  return out;
}

void StatementStore::ValidateProfile(const ProfileAttrs &profile) const {
  if (Trim(profile.education).empty() || Trim(profile.city).empty() ||
      Trim(profile.state).empty()) {
    throw ValidationError("incomplete contributor profile");
  }
  if (!options_.education.Contains(profile.education)) {
    throw ValidationError("unknown education code: " + profile.education);
  }
}

Statement StatementStore::Insert(Statement statement) {
  if (statement.text.find("$$") != std::string::npos) {
    throw ValidationError("statement contains the reserved \"$$\"");
  }
  if (statement.text.find('\n') != std::string::npos) {
    throw ValidationError("statement spans several lines");
  }
  ValidateProfile(statement.profile);
  std::unique_lock lock(mu_);
  if (!activities_.count(statement.activity)) {
    throw NotFoundError("unknown activity: " + statement.activity);
  }
  statement.id = next_id_++;
  statement.review = ReviewStatus::kPending;
  statements_.emplace(statement.id, statement);
  return statement;
}

Statement StatementStore::Submit(const RenderedTemplate &rendered,
                                 std::string_view filler,
                                 const ProfileAttrs &profile) {
  std::string typed(Trim(filler));
  if (typed.empty()) throw ValidationError("empty filler");
  Statement s;
  s.text = ReplaceFirst(rendered.text, kBlank, typed);
  s.filler = typed;
  s.dynamic = rendered.dynamic_filler;
  s.profile = profile;
  s.activity = rendered.tmpl.activity;
  return Insert(std::move(s));
}

Statement StatementStore::Submit(const Template &tmpl, std::string_view filler,
                                 const ProfileAttrs &profile,
                                 std::string_view dynamic) {
  RenderedTemplate rendered;
  rendered.tmpl = tmpl;
  rendered.dynamic_filler = std::string(dynamic);
  rendered.text = tmpl.has_dynamic_slot()
                      ? ReplaceFirst(tmpl.text, kDynamicSlot, dynamic)
                      : tmpl.text;
  if (tmpl.has_dynamic_slot() && Trim(dynamic).empty()) {
    throw ValidationError("template needs a dynamic filler: " + tmpl.text);
  }
  return Submit(rendered, filler, profile);
}

Statement StatementStore::SubmitText(std::string_view activity,
                                     std::string_view text,
                                     const ProfileAttrs &profile) {
  std::string sentence(Trim(text));
  if (sentence.empty()) throw ValidationError("empty statement");
  Statement s;
  s.text = sentence;
  s.profile = profile;
  s.activity = std::string(activity);
  return Insert(std::move(s));
}

std::vector<std::string> StatementStore::Misspelled(std::string_view text) const {
  if (options_.morphology == nullptr) {
    throw StateError("spelling validation needs a morphology provider");
  }
  const MorphologyProvider &m = *options_.morphology;
  std::vector<std::string> out;
  for (const std::string &token : Tokenize(text)) {
    if (StartsWithUpper(token) || IsNumber(token)) continue;
    if (m.Knows(token) || m.Knows(ToLower(token))) continue;
    bool clitic = std::any_of(
        m.clitic_rules().begin(), m.clitic_rules().end(),
        [&](const CliticRule &rule) { return EndsWith(ToLower(token), rule.suffix); });
    if (clitic) continue;
    out.push_back(token);
  }
  return out;
}

std::vector<std::string> StatementStore::CheckSpelling(StatementId id) const {
  std::shared_lock lock(mu_);
  auto it = statements_.find(id);
  if (it == statements_.end()) {
    throw NotFoundError("no statement " + std::to_string(id));
  }
  return Misspelled(it->second.text);
}

Statement StatementStore::Review(StatementId id, ReviewDecision decision,
                                 std::vector<std::string> evidence) {
  std::unique_lock lock(mu_);
  auto it = statements_.find(id);
  if (it == statements_.end()) {
    throw NotFoundError("no statement " + std::to_string(id));
  }
  Statement &s = it->second;
  if (s.review != ReviewStatus::kPending) {
    throw StateError("statement " + std::to_string(id) + " already reviewed");
  }
  if (decision == ReviewDecision::kApprove) {
    s.review = ReviewStatus::kApproved;
    return s;
  }

  if (evidence.empty()) {
    throw ValidationError("rejection needs spelling-failure evidence");
  }
  std::vector<std::string> failing = Misspelled(s.text);
  for (const std::string &token : evidence) {
    if (std::find(failing.begin(), failing.end(), token) == failing.end()) {
      throw ValidationError("'" + token +
                            "' is not a spelling failure of statement " +
                            std::to_string(id));
    }
  }
  s.review = ReviewStatus::kRejectedMisspelled;
  s.spelling_failures = std::move(evidence);
  return s;
}

std::optional<Statement> StatementStore::Get(StatementId id) const {
  std::shared_lock lock(mu_);
  auto it = statements_.find(id);
  if (it == statements_.end()) return std::nullopt;
  return it->second;
}

std::vector<Statement> StatementStore::Snapshot() const {
  std::shared_lock lock(mu_);
  std::vector<Statement> out;
  out.reserve(statements_.size());
  for (const auto &entry : statements_) out.push_back(entry.second);
  return out;
}

size_t StatementStore::size() const {
  std::shared_lock lock(mu_);
  return statements_.size();
}

std::vector<std::string> StatementStore::ExportCorpus() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto &[id, s] : statements_) {
    if (s.review == ReviewStatus::kRejectedMisspelled) continue;
    out.push_back(FormatExportLine({s.text, s.profile, id}));
  }
  return out;
}

size_t StatementStore::Import(const std::vector<std::string> &lines,
                              std::string_view activity) {
  std::vector<ExportLine> parsed;
  for (const std::string &line : lines) {
    if (Trim(line).empty()) continue;
    parsed.push_back(ParseExportLine(line));
  }
  std::unique_lock lock(mu_);
  for (const ExportLine &line : parsed) {
    if (statements_.count(line.id)) {
      throw ValidationError("statement id " + std::to_string(line.id) +
                            " already present");
    }
  }
  activities_.insert(std::string(activity));
  for (ExportLine &line : parsed) {
    Statement s;
    s.id = line.id;
    s.text = std::move(line.text);
    s.profile = std::move(line.profile);
    s.activity = std::string(activity);
    next_id_ = std::max(next_id_, s.id + 1);
    statements_.emplace(s.id, std::move(s));
  }
  return parsed.size();
}

void StatementStore::Save(const std::string &path) const {
  std::shared_lock lock(mu_);
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw StorageError("cannot write " + path);
  for (const auto &entry : statements_) out << ToJson(entry.second).dump() << "\n";
  if (!out) throw StorageError("cannot write " + path);
}

void StatementStore::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open " + path);
  std::map<StatementId, Statement> loaded;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      Statement s = FromJson(nlohmann::json::parse(line));
      loaded.emplace(s.id, std::move(s));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  std::unique_lock lock(mu_);
  statements_ = std::move(loaded);
  next_id_ = statements_.empty() ? 1 : statements_.rbegin()->first + 1;
  for (const auto &entry : statements_) activities_.insert(entry.second.activity);
}

}  // namespace cskb
