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

#include "cskb/pipeline.h"

#include <filesystem>
#include <fstream>

#include "cskb/errors.h"
#include "cskb/text.h"

namespace cskb {

namespace fs = std::filesystem;

ResourcePaths ResourcePaths::ForLanguage(const std::string &data_dir,
                                         const std::string &language) {
  fs::path root(data_dir);
  fs::path lang = root / language;
  return {(root / "relation-types.tsv").string(), (lang / "rules.tsv").string(),
          (lang / "negation.txt").string(),       (lang / "lexicon.tsv").string(),
          (lang / "render.tsv").string(),         (lang / "templates.tsv").string()};
}

Resources Resources::Load(const ResourcePaths &paths) {
  Resources r;
  r.registry = TypeRegistry::Load(paths.types);
  r.rules = RuleSet::Load(paths.rules);
  r.negation = NegationLexicon::Load(paths.negation);
  r.morphology = std::make_shared<LexiconMorphology>(LexiconMorphology::Load(paths.lexicon));
  r.render = RenderTemplates::Load(paths.render);
  if (!paths.templates.empty() && fs::exists(paths.templates)) {
    r.templates = LoadTemplates(paths.templates);
  }
  for (const ExtractionRule &rule : r.rules.rules()) {
    if (!r.registry.Contains(rule.type)) {
      throw ValidationError("rule for unregistered relation type " + rule.type);
    }
  }
  return r;
}

PipelineOutput RunPipeline(std::span<const std::string> export_lines,
                           const Resources &resources, const RelaxationFlags &flags,
                           bool normalize) {
  PipelineOutput out;
  Extractor extractor(resources.rules, resources.registry, resources.negation);
  out.extracted = extractor.ExtractCorpus(export_lines, &out.extraction);
  out.normalized = normalize ? NormalizeRelations(out.extracted, *resources.morphology,
                                                  &out.normalization)
                             : out.extracted;
  out.relaxed = Relax(out.normalized, flags, &out.relaxation);
  return out;
}

std::vector<std::string> ReadLines(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!Trim(line).empty()) lines.push_back(line);
  }
  return lines;
}

void WriteLines(const std::string &path, const std::vector<std::string> &lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StorageError("cannot write " + path);
  for (const std::string &line : lines) out << line << '\n';
  if (!out) throw StorageError("cannot write " + path);
}

}  // namespace cskb
