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

#include "cskb/profile.h"

#include <algorithm>

#include "cskb/errors.h"
#include "cskb/text.h"

namespace cskb {

namespace {

constexpr std::array<std::string_view, 6> kAgeCodes = {
    "lt_12", "13_17", "18_29", "30_45", "46_65", "gt_65"};

constexpr std::array<std::string_view, 5> kPositionNames = {
    "gender", "age group", "education", "city", "state"};

void CheckFreeText(std::string_view value, std::string_view what) {
  if (Trim(value).empty()) {
    throw ValidationError(std::string(what) + " must not be empty");
  }
  if (value.find("$$") != std::string_view::npos ||
      value.find('"') != std::string_view::npos ||
      value.find('\n') != std::string_view::npos) {
    throw ValidationError(std::string(what) + " contains a reserved character: " +
                          std::string(value));
  }
}

}  // namespace

std::string_view GenderCode(Gender gender) {
  return gender == Gender::kMale ? "M" : "F";
}

std::string_view AgeGroupCode(AgeGroup age_group) {
  return kAgeCodes[static_cast<size_t>(age_group)];
}

Gender ParseGender(std::string_view code) {
  if (code == "M") return Gender::kMale;
  if (code == "F") return Gender::kFemale;
  throw ValidationError("unknown gender code: " + std::string(code));
}

AgeGroup ParseAgeGroup(std::string_view code) {
  for (size_t i = 0; i < kAgeCodes.size(); ++i) {
    if (kAgeCodes[i] == code) return static_cast<AgeGroup>(i);
  }
  throw ValidationError("unknown age group code: " + std::string(code));
}

EducationVocabulary::EducationVocabulary()
    : codes_{"1_incompleto", "1_completo",  "2_incompleto",
             "2_completo",   "3_incompleto", "3_completo",
             "especializacao", "mestrado",  "doutorado"} {}

EducationVocabulary::EducationVocabulary(std::set<std::string> codes)
    : codes_(codes.begin(), codes.end()) {}

bool EducationVocabulary::Contains(std::string_view code) const {
  return codes_.find(code) != codes_.end();
}

ProfileAttrs MakeProfile(std::string_view gender, std::string_view age_group,
                         std::string_view education, std::string_view city,
                         std::string_view state,
                         const EducationVocabulary &vocabulary) {
  ProfileAttrs profile;
  profile.gender = ParseGender(gender);
  profile.age_group = ParseAgeGroup(age_group);
  if (!vocabulary.Contains(education)) {
    throw ValidationError("unknown education code: " + std::string(education));
  }
  profile.education = std::string(education);
  CheckFreeText(city, "city");
  CheckFreeText(state, "state");
  profile.city = std::string(city);
  profile.state = std::string(state);
  return profile;
}

std::array<std::string, 5> ProfileSlots(const ProfileAttrs &profile) {
  return {std::string(GenderCode(profile.gender)),
          std::string(AgeGroupCode(profile.age_group)), profile.education,
          profile.city, profile.state};
}

ProfileQuery ProfileQuery::Parse(const Lists &lists,
                                 const EducationVocabulary &vocabulary) {
  ProfileQuery query;
  for (size_t pos = 0; pos < lists.size(); ++pos) {
    std::vector<std::string> values;
    for (const std::string &raw : lists[pos]) {
      std::string value(Trim(raw));
      switch (pos) {
        case 0:
          ParseGender(value);
          break;
        case 1:
          ParseAgeGroup(value);
          break;
        case 2:
          if (!vocabulary.Contains(value)) {
            throw ValidationError("unknown education code: " + value);
          }
          break;
        default:
          CheckFreeText(value, kPositionNames[pos]);
      }
      values.push_back(std::move(value));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    query.lists_[pos] = std::move(values);
  }
  return query;
}

ProfileQuery ProfileQuery::ParseText(std::string_view text,
                                     const EducationVocabulary &vocabulary) {
  std::string_view s = Trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ValidationError("profile query must be a bracketed list of lists");
  }
  s = s.substr(1, s.size() - 2);
  Lists lists;
  size_t pos = 0;
  size_t count = 0;
  while (true) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == ',')) ++pos;
    if (pos >= s.size()) break;
    if (s[pos] != '[') throw ValidationError("expected '[' in profile query");
    size_t close = s.find(']', pos);
    if (close == std::string_view::npos) {
      throw ValidationError("unbalanced brackets in profile query");
    }
    if (count == lists.size()) {
      throw ValidationError("profile query has more than five lists");
    }
    std::string_view inner = s.substr(pos + 1, close - pos - 1);
    for (const std::string &item : Split(inner, ",")) {
      std::string_view value = Trim(item);
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
        value = value.substr(1, value.size() - 2);
      }
      if (value.empty()) continue;
      lists[count].emplace_back(value);
    }
    ++count;
    pos = close + 1;
  }
  if (count != lists.size()) {
    throw ValidationError("profile query must have exactly five lists");
  }
  return Parse(lists, vocabulary);
}

bool ProfileQuery::Matches(const ProfileAttrs &profile) const {
  std::array<std::string, 5> slots = ProfileSlots(profile);
  for (size_t pos = 0; pos < lists_.size(); ++pos) {
    const auto &allowed = lists_[pos];
    if (allowed.empty()) continue;
    if (!std::binary_search(allowed.begin(), allowed.end(), slots[pos])) {
      return false;
    }
  }
  return true;
}

bool ProfileQuery::IsMatchAll() const {
  return std::all_of(lists_.begin(), lists_.end(),
                     [](const auto &list) { return list.empty(); });
}

std::string ProfileQuery::CanonicalKey() const {
  std::string key = "[";
  for (size_t pos = 0; pos < lists_.size(); ++pos) {
    if (pos > 0) key += ",";
    key += "[";
    key += Join(lists_[pos], ",");
    key += "]";
  }
  key += "]";
  return key;
}

}  // namespace cskb
