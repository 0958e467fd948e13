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

// Loads the per-language configuration files and chains extraction,
// normalization and relaxation.

#ifndef CSKB_PIPELINE_H_
#define CSKB_PIPELINE_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cskb/extraction.h"
#include "cskb/morphology.h"
#include "cskb/normalization.h"
#include "cskb/relation-type.h"
#include "cskb/relaxation.h"
#include "cskb/render.h"
#include "cskb/statement-store.h"

namespace cskb {

struct ResourcePaths {
  std::string types;
  std::string rules;
  std::string negation;
  std::string lexicon;
  std::string render;
  std::string templates;

  // <data_dir>/relation-types.tsv plus <data_dir>/<language>/{rules.tsv,
  // negation.txt, lexicon.tsv, render.tsv, templates.tsv}.
  static ResourcePaths ForLanguage(const std::string &data_dir,
                                   const std::string &language);
};

struct Resources {
  TypeRegistry registry;
  RuleSet rules;
  NegationLexicon negation;
  std::shared_ptr<LexiconMorphology> morphology;
  RenderTemplates render;
  std::vector<Template> templates;

  // Throws StorageError / ParseError when a file is missing or malformed.
  static Resources Load(const ResourcePaths &paths);
};

struct PipelineOutput {
  std::vector<Relation> extracted;
  std::vector<Relation> normalized;
  std::vector<Relation> relaxed;
  ExtractionStats extraction;
  NormalizationStats normalization;
  RelaxationReport relaxation;
};

PipelineOutput RunPipeline(std::span<const std::string> export_lines,
                           const Resources &resources,
                           const RelaxationFlags &flags = {},
                           bool normalize = true);

// Non-empty lines of a UTF-8 text file.
std::vector<std::string> ReadLines(const std::string &path);
void WriteLines(const std::string &path, const std::vector<std::string> &lines);

}  // namespace cskb

#endif  // CSKB_PIPELINE_H_
