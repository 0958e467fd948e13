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

#include "cskb/relation.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cskb/errors.h"
#include "cskb/text.h"

namespace cskb {

namespace {

void AppendQuoted(std::string &out, std::string_view value) {
  out += " \"";
  for (char c : value) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

std::string CountsSlot(const Relation &r) {
  return "f=" + std::to_string(r.f) + ";i=" + std::to_string(r.i);
}

std::string IdsSlot(const Relation &r) {
  std::string out;
  for (size_t k = 0; k < r.ids.size(); ++k) {
    if (k > 0) out += ';';
    out += std::to_string(r.ids[k]);
  }
  return out;
}

int64_t ParseNonNegative(std::string_view text, std::string_view what) {
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad " + std::string(what) + ": '" + std::string(text) + "'");
  }
  if (value < 0) throw ParseError("negative " + std::string(what));
  return value;
}

std::vector<StatementId> ParseIds(std::string_view slot) {
  std::vector<StatementId> ids;
  for (const std::string &part : Split(slot, ";")) {
    StatementId id = ParseNonNegative(Trim(part), "statement id");
    if (id == 0) throw ParseError("statement ids must be positive");
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
      throw ParseError("duplicate statement id " + std::to_string(id));
    }
    ids.push_back(id);
  }
  if (ids.empty()) throw ParseError("relation without statement ids");
  return ids;
}

void ParseCounts(std::string_view slot, Relation &r) {
  // "f=F;i=I"
  std::vector<std::string> parts = Split(slot, ";");
  if (parts.size() != 2 || !StartsWith(Trim(parts[0]), "f=") ||
      !StartsWith(Trim(parts[1]), "i=")) {
    throw ParseError("bad f/i slot: '" + std::string(slot) + "'");
  }
  std::string_view f = Trim(parts[0]).substr(2);
  std::string_view i = Trim(parts[1]).substr(2);
  if (StartsWith(f, "-") || StartsWith(i, "-")) {
    throw ParseError("negative f/i counter in '" + std::string(slot) + "'");
  }
  r.f = ParseNonNegative(f, "f counter");
  r.i = ParseNonNegative(i, "i counter");
}

}  // namespace

ProfiledKey Relation::KeyWithProfile() const {
  return {Key(), profile.value_or(ProfileAttrs{})};
}

std::string SerializeRelation(const Relation &r, LineFormat format) {
  std::string out = "(";
  out += r.type;
  AppendQuoted(out, r.param1);
  AppendQuoted(out, r.param2);
  if (format == LineFormat::kFinal) {
    AppendQuoted(out, CountsSlot(r));
    AppendQuoted(out, IdsSlot(r));
  } else {
    if (!r.profile) {
      throw ValidationError("profiled line format needs a profile: " + r.type);
    }
    for (const std::string &slot : ProfileSlots(*r.profile)) {
      AppendQuoted(out, slot);
    }
    AppendQuoted(out, IdsSlot(r));
    if (format == LineFormat::kWeighted) AppendQuoted(out, CountsSlot(r));
  }
  out += ")";
  return out;
}

Relation ParseRelationLine(std::string_view line, const TypeRegistry *registry,
                           LineFormat *detected) {
  std::string_view s = Trim(line);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw ParseError("relation line must be parenthesized: " + std::string(s));
  }
  s = s.substr(1, s.size() - 2);
  size_t pos = 0;
  while (pos < s.size() && s[pos] != ' ' && s[pos] != '"') ++pos;
  Relation r;
  r.type = std::string(s.substr(0, pos));
  if (r.type.empty()) throw ParseError("relation line without a type");
  if (registry != nullptr && !registry->Contains(r.type)) {
    throw ParseError("unknown relation type: " + r.type);
  }

  std::vector<std::string> slots;
  while (true) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos >= s.size()) break;
    if (s[pos] != '"') {
      throw ParseError("expected '\"' at column " + std::to_string(pos + 2) +
                       ": " + std::string(line));
    }
    ++pos;
    std::string value;
    bool closed = false;
    while (pos < s.size()) {
      char c = s[pos++];
      if (c == '\\' && pos < s.size()) {
        value += s[pos++];
      } else if (c == '"') {
        closed = true;
        break;
      } else {
        value += c;
      }
    }
    if (!closed) throw ParseError("unterminated quote: " + std::string(line));
    slots.push_back(std::move(value));
  }

  LineFormat format;
  switch (slots.size()) {
    case 4:
      format = LineFormat::kFinal;
      break;
    case 8:
      format = LineFormat::kExtracted;
      break;
    case 9:
      format = LineFormat::kWeighted;
      break;
    default:
      throw ParseError("relation line has " + std::to_string(slots.size()) +
                       " quoted slots: " + std::string(line));
  }
  r.param1 = slots[0];
  r.param2 = slots[1];
  if (format == LineFormat::kFinal) {
    ParseCounts(slots[2], r);
    r.ids = ParseIds(slots[3]);
  } else {
    try {
      r.profile = MakeProfile(slots[2], slots[3], slots[4], slots[5], slots[6],
                              EducationVocabulary(std::set<std::string>{slots[4]}));
    } catch (const ValidationError &e) {
      throw ParseError(std::string("bad profile slots: ") + e.what());
    }
    r.ids = ParseIds(slots[7]);
    if (format == LineFormat::kWeighted) {
      ParseCounts(slots[8], r);
    } else {
      r.f = 1;
      r.i = 0;
    }
  }
  if (detected != nullptr) *detected = format;
  return r;
}

std::vector<Relation> ParseRelationLines(std::string_view text,
                                         const TypeRegistry *registry) {
  std::vector<Relation> out;
  int lineno = 0;
  for (const std::string &line : Split(text, "\n")) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(ParseRelationLine(line, registry));
    } catch (const ParseError &e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Relation> ReadRelationFile(const std::string &path,
                                       const TypeRegistry *registry) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open relation file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseRelationLines(buffer.str(), registry);
}

std::string SerializeRelations(const std::vector<Relation> &relations,
                               LineFormat format) {
  std::string out;
  for (const Relation &r : relations) {
    out += SerializeRelation(r, format);
    out += '\n';
  }
  return out;
}

void WriteRelationFile(const std::string &path,
                       const std::vector<Relation> &relations,
                       LineFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write relation file: " + path);
  out << SerializeRelations(relations, format);
  if (!out) throw StorageError("write failed: " + path);
}

void MergeRelation(Relation &into, const Relation &from) {
  for (StatementId id : from.ids) {
    if (std::find(into.ids.begin(), into.ids.end(), id) == into.ids.end()) {
      into.ids.push_back(id);
    }
  }
  std::sort(into.ids.begin(), into.ids.end());
  into.f += from.f;
  into.i += from.i;
}

}  // namespace cskb
