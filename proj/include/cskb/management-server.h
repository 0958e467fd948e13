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

// Access layer: one API instance per profile query, each listening on its own
// port and answering XML-RPC calls for the inference operations.

#ifndef CSKB_MANAGEMENT_SERVER_H_
#define CSKB_MANAGEMENT_SERVER_H_

#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "cskb/conceptnet.h"
#include "cskb/inference.h"
#include "cskb/morphology.h"
#include "cskb/profile-filter.h"
#include "cskb/profile.h"
#include "cskb/relation-type.h"
#include "cskb/render.h"
#include "cskb/xmlrpc.h"

namespace cskb {

enum FaultCode {
  kFaultUnknownMethod = 1,
  kFaultBadParams = 2,
  kFaultBuilding = 3,
  kFaultBuildFailed = 4,
  kFaultPoolExhausted = 5,
  kFaultNoInstance = 6,
  kFaultInternal = 7,
};

enum class InstanceState { kBuilding, kReady };

std::string_view InstanceStateName(InstanceState state);

// Everything the inference methods need besides the network.
struct InferenceResources {
  TypeRegistry registry;
  RenderTemplates templates;
  std::shared_ptr<const MorphologyProvider> morphology;
  ContextOptions context;
};

// Executes one inference method against `net`. get_analogy resolves its
// target through `resolve_target`. Throws xmlrpc::FaultError.
using TargetResolver =
    std::function<ConceptNetHandle(const xmlrpc::Value &target_spec)>;

xmlrpc::Value CallInference(const ConceptNet &net, std::string_view method,
                            const std::vector<xmlrpc::Value> &params,
                            const InferenceResources &resources,
                            const TargetResolver &resolve_target);

// Wire encodings shared by the server and its clients.
xmlrpc::Value EncodeScored(const std::vector<ScoredConcept> &scored);
xmlrpc::Value EncodeNodeEntries(const std::vector<NodeEntry> &entries);
xmlrpc::Value EncodeCorrespondences(const std::vector<Correspondence> &analogy);
xmlrpc::Value EncodeStrings(const std::vector<std::string> &strings);
xmlrpc::Value EncodeQuery(const ProfileQuery &query);
ProfileQuery DecodeQuery(const std::vector<xmlrpc::Value> &lists,
                         const EducationVocabulary &vocabulary = {});

struct ServerOptions {
  std::string host = "127.0.0.1";
  int management_port = 8000;  // 0 picks a free port
  int port_min = 20000;
  int port_max = 20999;
};

struct Acquisition {
  int port = 0;
  InstanceState state = InstanceState::kBuilding;
};

class ManagementServer {
 public:
  ManagementServer(Materializer &materializer, InferenceResources resources,
                   ServerOptions options = {});
  ~ManagementServer();

  ManagementServer(const ManagementServer &) = delete;
  ManagementServer &operator=(const ManagementServer &) = delete;

  // Starts the management listener (method getApi). Returns its port.
  int Start();
  void Stop();
  int management_port() const { return management_port_; }

  // Returns the instance's port, creating the instance (and building its
  // network once) when needed. With wait=false the call returns while the
  // build is still running. Throws FaultError (4 build failed, 5 no free
  // port).
  Acquisition AcquireApi(const ProfileQuery &query, bool wait = true);

  // In-process equivalent of an XML-RPC call to an instance port.
  xmlrpc::Value Dispatch(int port, std::string_view method,
                         const std::vector<xmlrpc::Value> &params);

  // Handles one XML-RPC request body for an instance (port > 0) or for the
  // management endpoint (port == 0); always returns a response document.
  std::string HandleRequest(int port, std::string_view body);

  // Shuts down instances unused for longer than max_idle. Persisted network
  // files stay, so the next acquire reloads without rebuilding.
  size_t EvictIdle(std::chrono::milliseconds max_idle);

  std::vector<int> LivePorts() const;
  size_t instance_count() const;
  Materializer &materializer() { return materializer_; }
  const InferenceResources &resources() const { return resources_; }

 private:
  struct Instance;

  int BindInstancePort(Instance &instance);
  void StopInstance(Instance &instance);
  ConceptNetHandle ResolveTarget(const xmlrpc::Value &spec);
  xmlrpc::Value HandleManagement(std::string_view method,
                                 const std::vector<xmlrpc::Value> &params);

  Materializer &materializer_;
  InferenceResources resources_;
  ServerOptions options_;

  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Instance>> by_query_;
  std::map<int, std::shared_ptr<Instance>> by_port_;

  struct Listener;
  std::unique_ptr<Listener> management_;
  int management_port_ = 0;
};

// Minimal XML-RPC client over HTTP POST. Faults come back as FaultError;
// transport failures as StorageError.
class RpcClient {
 public:
  RpcClient(std::string host, int port, std::string path = "/RPC2");
  xmlrpc::Value Call(std::string_view method,
                     const std::vector<xmlrpc::Value> &params) const;

 private:
  std::string host_;
  int port_;
  std::string path_;
};

}  // namespace cskb

#endif  // CSKB_MANAGEMENT_SERVER_H_
