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

#ifndef CSKB_RENDER_H_
#define CSKB_RENDER_H_

#include <map>
#include <string>
#include <string_view>

#include "cskb/relation-type.h"
#include "cskb/relation.h"

namespace cskb {

struct RenderPattern {
  std::string affirmative;  // e.g. "A {1} is used for {2}"
  std::string negative;     // may be empty
};

// Sentence patterns per affirmative relation type. File records are
// `TYPE<TAB>pattern[<TAB>negative pattern]`.
class RenderTemplates {
 public:
  static RenderTemplates Parse(std::string_view text);
  static RenderTemplates Load(const std::string &path);

  void Add(std::string type, RenderPattern pattern);
  const RenderPattern *Find(std::string_view type) const;
  const std::map<std::string, RenderPattern, std::less<>> &patterns() const {
    return patterns_;
  }

 private:
  std::map<std::string, RenderPattern, std::less<>> patterns_;
};

// Instantiates the type's pattern with tag-free parameters and capitalizes the
// sentence. Negative types use their counterpart's negative pattern. Types
// without a pattern fall back to `param1 <em dash> TYPE <em dash> param2`,
// left uncapitalized.
std::string RenderSentence(const Relation &relation,
                           const RenderTemplates &templates,
                           const TypeRegistry &registry);

}  // namespace cskb

#endif  // CSKB_RENDER_H_
