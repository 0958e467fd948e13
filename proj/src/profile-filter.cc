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

#include "cskb/profile-filter.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cskb/errors.h"
#include "cskb/text.h"

namespace cskb {

namespace fs = std::filesystem;

namespace {

std::string UtcTimestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ConceptNet PostFilterPropertyHeuristic(const ConceptNet &net, PassReport *report) {
  PassReport local{"PostFilterPropertyOf"};
  std::map<ProfiledKey, Relation> store;
  for (const Relation &r : net.relations()) store.emplace(r.KeyWithProfile(), r);

  std::vector<Relation> derived;
  for (const Relation &isa : net.relations()) {
    if (isa.type != "IsA" || isa.param1 == isa.param2) continue;
    for (size_t index : net.Incident(isa.param2)) {
      const Relation &property = net.relations()[index];
      if (property.type != "PropertyOf" || property.param1 != isa.param2) continue;
      Relation d;
      d.type = "PropertyOf";
      d.param1 = isa.param1;
      d.param2 = property.param2;
      d.ids = isa.ids;
      derived.push_back(std::move(d));
    }
  }
  for (const Relation &d : derived) MergeDerived(store, d, &local);

  std::vector<Relation> relations;
  relations.reserve(store.size());
  for (auto &entry : store) relations.push_back(std::move(entry.second));
  if (report != nullptr) *report = local;
  return ConceptNet::Build(std::move(relations), net.query());
}

ConceptNet BuildConceptNet(const ProfileQuery &query,
                           const std::vector<Relation> &relaxed,
                           const FilterOptions &options, PassReport *report) {
  std::vector<Relation> selected;
  for (const Relation &r : relaxed) {
    if (!r.profile || query.Matches(*r.profile)) selected.push_back(r);
  }
  ConceptNet net = ConceptNet::Build(std::move(selected), query);
  if (!options.post_filter_property) return net;
  return PostFilterPropertyHeuristic(net, report);
}

Materializer::Materializer(std::vector<Relation> relaxed,
                           MaterializerOptions options)
    : relaxed_(std::move(relaxed)), options_(std::move(options)) {
  corpus_digest_ =
      HexDigest(Fnv1a64(SerializeRelations(relaxed_, LineFormat::kWeighted)));
  if (!options_.output_dir.empty()) {
    std::error_code ec;
    fs::create_directories(options_.output_dir, ec);
    if (ec) {
      throw StorageError("cannot create " + options_.output_dir + ": " +
                         ec.message());
    }
  }
}

std::string Materializer::FileStem(const ProfileQuery &query) const {
  return "net-" + HexDigest(Fnv1a64(query.CanonicalKey()));
}

std::string Materializer::NetworkPath(const ProfileQuery &query) const {
  if (options_.output_dir.empty()) return "";
  return (fs::path(options_.output_dir) / (FileStem(query) + ".txt")).string();
}

std::string Materializer::MetadataPath(const ProfileQuery &query) const {
  if (options_.output_dir.empty()) return "";
  return (fs::path(options_.output_dir) / (FileStem(query) + ".meta.json"))
      .string();
}

bool Materializer::IsPersisted(const ProfileQuery &query) const {
  if (options_.output_dir.empty()) return false;
  std::ifstream meta(MetadataPath(query));
  if (!meta || !fs::exists(NetworkPath(query))) return false;
  try {
    nlohmann::json record = nlohmann::json::parse(meta);
    return record.value("query", "") == query.CanonicalKey() &&
           record.value("corpus_digest", "") == corpus_digest_;
  } catch (const nlohmann::json::exception &) {
    return false;
  }
}

ConceptNetHandle Materializer::Produce(const ProfileQuery &query) {
  if (IsPersisted(query)) {
    std::vector<Relation> relations = ReadRelationFile(NetworkPath(query));
    ++loads_;
    return std::make_shared<const ConceptNet>(
        ConceptNet::Build(std::move(relations), query));
  }

  auto net = std::make_shared<const ConceptNet>(
      BuildConceptNet(query, relaxed_, options_.filter));
  ++builds_;
  if (!options_.output_dir.empty()) {
    WriteRelationFile(NetworkPath(query), net->relations(), LineFormat::kFinal);
    nlohmann::json record = {
        {"query", query.CanonicalKey()},
        {"built_at", UtcTimestamp()},
        {"corpus_digest", corpus_digest_},
        {"relations", net->relation_count()},
        {"nodes", net->node_count()},
    };
    std::ofstream meta(MetadataPath(query), std::ios::trunc);
    meta << record.dump(2) << "\n";
    if (!meta) throw StorageError("cannot write " + MetadataPath(query));
  }
  return net;
}

ConceptNetHandle Materializer::Materialize(const ProfileQuery &query) {
  const std::string key = query.CanonicalKey();
  std::promise<ConceptNetHandle> promise;
  std::unique_lock<std::mutex> lock(mu_);
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    // Wait outside the lock; the producer publishes through the future.
    std::shared_future<ConceptNetHandle> pending = it->second;
    lock.unlock();
    return pending.get();
  }
  cache_.emplace(key, promise.get_future().share());
  lock.unlock();

  try {
    ConceptNetHandle handle = Produce(query);
    promise.set_value(handle);
    return handle;
  } catch (...) {
    promise.set_exception(std::current_exception());
    lock.lock();
    cache_.erase(key);
    throw;
  }
}

bool Materializer::Drop(const ProfileQuery &query) {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.erase(query.CanonicalKey()) > 0;
}

bool Materializer::IsCached(const ProfileQuery &query) const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.count(query.CanonicalKey()) > 0;
}

size_t Materializer::RemovePersisted(const std::vector<ProfileQuery> &queries) {
  if (options_.output_dir.empty()) return 0;
  size_t removed = 0;
  std::lock_guard<std::mutex> lock(mu_);
  if (queries.empty()) {
    cache_.clear();
    for (const auto &entry : fs::directory_iterator(options_.output_dir)) {
      std::string name = entry.path().filename().string();
      if (!StartsWith(name, "net-")) continue;
      if (EndsWith(name, ".txt")) ++removed;
      fs::remove(entry.path());
    }
    return removed;
  }
  for (const ProfileQuery &q : queries) {
    cache_.erase(q.CanonicalKey());
    if (fs::remove(NetworkPath(q))) ++removed;
    fs::remove(MetadataPath(q));
  }
  return removed;
}

}  // namespace cskb
