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

// Filtering phase and on-demand network materialization.

#ifndef CSKB_PROFILE_FILTER_H_
#define CSKB_PROFILE_FILTER_H_

#include <atomic>
#include <future>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "cskb/conceptnet.h"
#include "cskb/profile.h"
#include "cskb/relation.h"
#include "cskb/relaxation.h"

namespace cskb {

struct FilterOptions {
  // IsA(a, b) + PropertyOf(b, c) -> PropertyOf(a, c), run after profiles are
  // merged so both sides come from the selected population only.
  bool post_filter_property = true;
};

// Selects relaxed relations whose profile matches `query`, merges equal keys
// across profiles (f and i summed, ids unioned), drops profiles and runs the
// post-filter heuristic.
ConceptNet BuildConceptNet(const ProfileQuery &query,
                           const std::vector<Relation> &relaxed,
                           const FilterOptions &options = {},
                           PassReport *report = nullptr);

// One join pass over a profile-free network.
ConceptNet PostFilterPropertyHeuristic(const ConceptNet &net,
                                       PassReport *report = nullptr);

struct MaterializerOptions {
  // Where network files and metadata sidecars go. Empty keeps everything in
  // memory.
  std::string output_dir;
  FilterOptions filter;
};

// Builds networks on demand, persists them, and caches handles by canonical
// query. Concurrent requests for the same query share one build.
class Materializer {
 public:
  Materializer(std::vector<Relation> relaxed, MaterializerOptions options);

  Materializer(const Materializer &) = delete;
  Materializer &operator=(const Materializer &) = delete;

  // Returns the cached handle, or loads the persisted network, or builds,
  // persists and caches it. Throws StorageError when persisting fails.
  ConceptNetHandle Materialize(const ProfileQuery &query);

  // Forgets the in-memory handle; the persisted file stays and is reloaded by
  // the next Materialize without rebuilding.
  bool Drop(const ProfileQuery &query);

  // Deletes persisted files (and cached handles). Empty query list = all.
  size_t RemovePersisted(const std::vector<ProfileQuery> &queries = {});

  bool IsCached(const ProfileQuery &query) const;
  bool IsPersisted(const ProfileQuery &query) const;

  std::string NetworkPath(const ProfileQuery &query) const;
  std::string MetadataPath(const ProfileQuery &query) const;

  size_t build_count() const { return builds_.load(); }
  size_t load_count() const { return loads_.load(); }
  const std::string &corpus_digest() const { return corpus_digest_; }
  const std::vector<Relation> &relaxed() const { return relaxed_; }

 private:
  ConceptNetHandle Produce(const ProfileQuery &query);
  std::string FileStem(const ProfileQuery &query) const;

  std::vector<Relation> relaxed_;
  MaterializerOptions options_;
  std::string corpus_digest_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_future<ConceptNetHandle>> cache_;
  std::atomic<size_t> builds_{0};
  std::atomic<size_t> loads_{0};
};

}  // namespace cskb

#endif  // CSKB_PROFILE_FILTER_H_
