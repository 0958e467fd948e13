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

#include "cskb/render.h"

#include <fstream>
#include <sstream>

#include "cskb/errors.h"
#include "cskb/morphology.h"
#include "cskb/text.h"

namespace cskb {

namespace {

std::string Fill(std::string_view pattern, const std::string &first,
                 const std::string &second) {
  std::string out;
  for (size_t k = 0; k < pattern.size(); ++k) {
    if (pattern[k] == '{' && k + 2 < pattern.size() && pattern[k + 2] == '}') {
      if (pattern[k + 1] == '1') {
        out += first;
        k += 2;
        continue;
      }
      if (pattern[k + 1] == '2') {
        out += second;
        k += 2;
        continue;
      }
    }
    out += pattern[k];
  }
  return out;
}

}  // namespace

RenderTemplates RenderTemplates::Parse(std::string_view text) {
  RenderTemplates templates;
  int lineno = 0;
  for (const std::string &raw : Split(text, "\n")) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line)[0] == '#') continue;
    std::vector<std::string> fields = Split(line, "\t");
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError("render template line " + std::to_string(lineno) +
                       ": expected TYPE<TAB>pattern[<TAB>negative]");
    }
    RenderPattern pattern{std::string(Trim(fields[1])),
                          fields.size() == 3 ? std::string(Trim(fields[2])) : ""};
    templates.Add(std::string(Trim(fields[0])), std::move(pattern));
  }
  return templates;
}

RenderTemplates RenderTemplates::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open render templates: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

void RenderTemplates::Add(std::string type, RenderPattern pattern) {
  patterns_[std::move(type)] = std::move(pattern);
}

const RenderPattern *RenderTemplates::Find(std::string_view type) const {
  auto it = patterns_.find(type);
  return it == patterns_.end() ? nullptr : &it->second;
}

std::string RenderSentence(const Relation &relation,
                           const RenderTemplates &templates,
                           const TypeRegistry &registry) {
  std::string first = StripTags(relation.param1);
  std::string second = StripTags(relation.param2);

  const std::string *pattern = nullptr;
  const RelationType *type = registry.Find(relation.type);
  if (type != nullptr && type->negative()) {
    const RenderPattern *base = templates.Find(type->affirmative_counterpart);
    if (base != nullptr && !base->negative.empty()) pattern = &base->negative;
  } else if (const RenderPattern *own = templates.Find(relation.type)) {
    pattern = &own->affirmative;
  }
  if (pattern == nullptr) {
    return first + " — " + relation.type + " — " + second;
  }
  return UpperFirst(Fill(*pattern, first, second));
}

}  // namespace cskb
