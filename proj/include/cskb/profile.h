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

// Contributor profiles and the five-list profile queries that select which
// contributions a network is built from.

#ifndef CSKB_PROFILE_H_
#define CSKB_PROFILE_H_

#include <array>
#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cskb {

enum class Gender { kMale, kFemale };

enum class AgeGroup { kUnder12, k13To17, k18To29, k30To45, k46To65, kOver65 };

std::string_view GenderCode(Gender gender);         // "M" / "F"
std::string_view AgeGroupCode(AgeGroup age_group);  // "lt_12" ... "gt_65"

// Throw ValidationError on unknown codes.
Gender ParseGender(std::string_view code);
AgeGroup ParseAgeGroup(std::string_view code);

// Closed vocabulary of education codes. The default set covers the codes
// used by the Brazilian collection site ("2_incompleto", "mestrado", ...).
class EducationVocabulary {
 public:
  EducationVocabulary();
  explicit EducationVocabulary(std::set<std::string> codes);

  bool Contains(std::string_view code) const;
  const std::set<std::string, std::less<>> &codes() const { return codes_; }

 private:
  std::set<std::string, std::less<>> codes_;
};

struct ProfileAttrs {
  Gender gender = Gender::kMale;
  AgeGroup age_group = AgeGroup::k18To29;
  std::string education;
  std::string city;
  std::string state;

  auto operator<=>(const ProfileAttrs &) const = default;
  bool operator==(const ProfileAttrs &) const = default;
};

// Builds a profile from its five slot codes, validating each one.
ProfileAttrs MakeProfile(std::string_view gender, std::string_view age_group,
                         std::string_view education, std::string_view city,
                         std::string_view state,
                         const EducationVocabulary &vocabulary = {});

// Slot codes in export order: gender, age group, education, city, state.
std::array<std::string, 5> ProfileSlots(const ProfileAttrs &profile);

// Five ordered lists of accepted values: genders, age groups, educations,
// cities, states. An empty list accepts every value at that position.
class ProfileQuery {
 public:
  using Lists = std::array<std::vector<std::string>, 5>;

  ProfileQuery() = default;

  // Validates every value against the closed vocabularies and canonicalizes
  // (each list sorted and deduplicated). Throws ValidationError.
  static ProfileQuery Parse(const Lists &lists,
                            const EducationVocabulary &vocabulary = {});

  // Parses the bracketed text form, e.g. "[[], [13_17, 18_29], [2_completo],
  // [], [SP, MG]]". Values may optionally be double-quoted.
  static ProfileQuery ParseText(std::string_view text,
                                const EducationVocabulary &vocabulary = {});

  static ProfileQuery MatchAll() { return ProfileQuery(); }

  bool Matches(const ProfileAttrs &profile) const;
  bool IsMatchAll() const;

  // Canonical serialization; identical for queries that differ only in list
  // order or duplicates. Used as the cache key.
  std::string CanonicalKey() const;

  const Lists &lists() const { return lists_; }

  bool operator==(const ProfileQuery &other) const {
    return lists_ == other.lists_;
  }

 private:
  Lists lists_;
};

}  // namespace cskb

#endif  // CSKB_PROFILE_H_
