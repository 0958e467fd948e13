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

#include "cskb/management-server.h"

#include <sys/socket.h>

#include <atomic>
#include <set>

#include "httplib.h"

#include "cskb/errors.h"
#include "cskb/text.h"

namespace cskb {

using xmlrpc::FaultError;
using xmlrpc::Value;

namespace {

const std::set<std::string, std::less<>> kInferenceMethods = {
    "get_context", "display_node", "get_analogy", "expand_query",
    "decompose_phrases"};

void ExclusiveSocket(socket_t sock) {
  int yes = 1;
  setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
}

[[noreturn]] void BadParams(const std::string &message) {
  throw FaultError(kFaultBadParams, message);
}

const std::string &StringParam(const std::vector<Value> &params, size_t index,
                               std::string_view what) {
  if (index >= params.size() || !params[index].is_string()) {
    BadParams("parameter " + std::to_string(index + 1) + " (" + std::string(what) +
              ") must be a string");
  }
  return params[index].AsString();
}

std::vector<std::string> SeedsParam(const Value &value) {
  if (value.is_string()) return {value.AsString()};
  if (!value.is_array()) BadParams("seeds must be a string or an array of strings");
  std::vector<std::string> seeds;
  for (const Value &item : value.AsArray()) {
    if (!item.is_string()) BadParams("seeds must be strings");
    seeds.push_back(item.AsString());
  }
  return seeds;
}

Value EncodeKey(const RelationKey &key) {
  return Value(Value::Array{Value(key.type), Value(key.param1), Value(key.param2)});
}

void Touch(std::chrono::steady_clock::time_point &stamp) {
  stamp = std::chrono::steady_clock::now();
}

}  // namespace

std::string_view InstanceStateName(InstanceState state) {
  return state == InstanceState::kReady ? "ready" : "building";
}

Value EncodeScored(const std::vector<ScoredConcept> &scored) {
  Value::Array out;
  for (const ScoredConcept &s : scored) {
    out.push_back(Value(Value::Struct{{"concept", Value(s.name)},
                                      {"score", Value(s.score)}}));
  }
  return Value(std::move(out));
}

Value EncodeNodeEntries(const std::vector<NodeEntry> &entries) {
  Value::Array out;
  for (const NodeEntry &e : entries) {
    Value::Array ids;
    for (StatementId id : e.ids) ids.push_back(Value(static_cast<int64_t>(id)));
    out.push_back(Value(Value::Struct{
        {"type", Value(e.relation.type)},
        {"param1", Value(e.relation.param1)},
        {"param2", Value(e.relation.param2)},
        {"f", Value(static_cast<int64_t>(e.relation.f))},
        {"i", Value(static_cast<int64_t>(e.relation.i))},
        {"ids", Value(std::move(ids))},
        {"sentence", Value(e.sentence)},
    }));
  }
  return Value(std::move(out));
}

Value EncodeCorrespondences(const std::vector<Correspondence> &analogy) {
  Value::Array out;
  for (const Correspondence &c : analogy) {
    Value::Array support;
    for (const auto &[b, t] : c.support) {
      support.push_back(Value(Value::Array{EncodeKey(b), EncodeKey(t)}));
    }
    out.push_back(Value(Value::Struct{
        {"base", Value(c.base)},
        {"target", Value(c.target)},
        {"systematicity", Value(c.systematicity)},
        {"literal", Value(c.literal)},
        {"support", Value(std::move(support))},
    }));
  }
  return Value(std::move(out));
}

Value EncodeStrings(const std::vector<std::string> &strings) {
  Value::Array out;
  for (const std::string &s : strings) out.push_back(Value(s));
  return Value(std::move(out));
}

Value EncodeQuery(const ProfileQuery &query) {
  Value::Array lists;
  for (const auto &list : query.lists()) lists.push_back(EncodeStrings(list));
  return Value(std::move(lists));
}

ProfileQuery DecodeQuery(const std::vector<Value> &lists,
                         const EducationVocabulary &vocabulary) {
  if (lists.size() != 5) BadParams("a profile query has five lists");
  ProfileQuery::Lists parsed;
  for (size_t k = 0; k < 5; ++k) {
    if (!lists[k].is_array()) BadParams("profile query lists must be arrays");
    for (const Value &v : lists[k].AsArray()) {
      if (!v.is_string()) BadParams("profile query values must be strings");
      parsed[k].push_back(v.AsString());
    }
  }
  try {
    return ProfileQuery::Parse(parsed, vocabulary);
  } catch (const ValidationError &e) {
    BadParams(e.what());
  }
}

Value CallInference(const ConceptNet &net, std::string_view method,
                    const std::vector<Value> &params,
                    const InferenceResources &resources,
                    const TargetResolver &resolve_target) {
  try {
    if (method == "get_context") {
      if (params.empty()) BadParams("get_context(seeds[, depth[, decay]])");
      ContextOptions options = resources.context;
      if (params.size() > 1) options.depth = static_cast<int>(params[1].AsInt());
      if (params.size() > 2) options.decay = params[2].AsDouble();
      if (params.size() > 3) BadParams("get_context takes at most 3 parameters");
      std::vector<std::string> seeds = SeedsParam(params[0]);
      return EncodeScored(GetContext(seeds, net, options));
    }
    if (method == "display_node") {
      if (params.size() != 1) BadParams("display_node(concept)");
      return EncodeNodeEntries(DisplayNode(StringParam(params, 0, "concept"), net,
                                           resources.templates, resources.registry));
    }
    if (method == "get_analogy") {
      if (params.size() != 1) BadParams("get_analogy(target)");
      ConceptNetHandle target = resolve_target(params[0]);
      if (net.empty() || target == nullptr || target->empty()) {
        BadParams("analogy needs two non-empty networks");
      }
      return EncodeCorrespondences(GetAnalogy(net, *target));
    }
    if (method == "expand_query") {
      if (params.size() != 1) BadParams("expand_query(expression)");
      if (!resources.morphology) BadParams("no morphology configured");
      return EncodeStrings(ExpandQuery(StringParam(params, 0, "expression"), net,
                                       *resources.morphology, resources.context));
    }
    if (method == "decompose_phrases") {
      if (params.size() != 1) BadParams("decompose_phrases(expression)");
      if (!resources.morphology) BadParams("no morphology configured");
      return EncodeStrings(
          DecomposePhrases(StringParam(params, 0, "expression"), *resources.morphology));
    }
  } catch (const std::invalid_argument &e) {
    BadParams(e.what());
  } catch (const ValidationError &e) {
    BadParams(e.what());
  } catch (const ParseError &e) {
    BadParams(e.what());
  }
  throw FaultError(kFaultUnknownMethod, "unknown method: " + std::string(method));
}

struct ManagementServer::Listener {
  httplib::Server server;
  std::thread thread;

  void Run() {
    thread = std::thread([this] { server.listen_after_bind(); });
  }
  void Shutdown() {
    server.stop();
    if (thread.joinable()) thread.join();
  }
};

struct ManagementServer::Instance {
  ProfileQuery query;
  int port = 0;
  std::atomic<InstanceState> state{InstanceState::kBuilding};
  ConceptNetHandle handle;
  std::shared_future<void> ready;
  std::chrono::steady_clock::time_point last_used;
  std::unique_ptr<Listener> listener;
};

ManagementServer::ManagementServer(Materializer &materializer,
                                   InferenceResources resources,
                                   ServerOptions options)
    : materializer_(materializer),
      resources_(std::move(resources)),
      options_(std::move(options)) {
  if (options_.port_min <= 0 || options_.port_max < options_.port_min ||
      options_.port_max > 65535) {
    throw ValidationError("bad port pool range");
  }
}

ManagementServer::~ManagementServer() { Stop(); }

int ManagementServer::Start() {
  if (management_) return management_port_;
  auto listener = std::make_unique<Listener>();
  listener->server.set_socket_options(ExclusiveSocket);
  auto handler = [this](const httplib::Request &req, httplib::Response &res) {
    res.set_content(HandleRequest(0, req.body), "text/xml");
  };
  listener->server.Post("/", handler);
  listener->server.Post("/RPC2", handler);
  if (options_.management_port == 0) {
    management_port_ = listener->server.bind_to_any_port(options_.host);
    if (management_port_ < 0) throw StorageError("cannot bind management port");
  } else {
    if (!listener->server.bind_to_port(options_.host, options_.management_port)) {
      throw StorageError("cannot bind management port " +
                         std::to_string(options_.management_port));
    }
    management_port_ = options_.management_port;
  }
  listener->Run();
  management_ = std::move(listener);
  return management_port_;
}

void ManagementServer::Stop() {
  if (management_) {
    management_->Shutdown();
    management_.reset();
  }
  std::map<std::string, std::shared_ptr<Instance>> instances;
  {
    std::lock_guard<std::mutex> lock(mu_);
    instances.swap(by_query_);
    by_port_.clear();
  }
  for (auto &entry : instances) StopInstance(*entry.second);
}

int ManagementServer::BindInstancePort(Instance &instance) {
  auto listener = std::make_unique<Listener>();
  listener->server.set_socket_options(ExclusiveSocket);
  for (int port = options_.port_min; port <= options_.port_max; ++port) {
    if (by_port_.count(port)) continue;
    if (!listener->server.bind_to_port(options_.host, port)) continue;
    auto handler = [this, port](const httplib::Request &req, httplib::Response &res) {
      res.set_content(HandleRequest(port, req.body), "text/xml");
    };
    listener->server.Post("/", handler);
    listener->server.Post("/RPC2", handler);
    listener->Run();
    instance.listener = std::move(listener);
    instance.port = port;
    return port;
  }
  throw FaultError(kFaultPoolExhausted, "no free port in the instance pool");
}

void ManagementServer::StopInstance(Instance &instance) {
  if (instance.listener) {
    instance.listener->Shutdown();
    instance.listener.reset();
  }
}

Acquisition ManagementServer::AcquireApi(const ProfileQuery &query, bool wait) {
  const std::string key = query.CanonicalKey();
  std::shared_ptr<Instance> instance;
  std::shared_ptr<Instance> failed;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = by_query_.find(key);
    if (it != by_query_.end()) {
      instance = it->second;
      bool finished = instance->ready.wait_for(std::chrono::seconds(0)) ==
                      std::future_status::ready;
      if (finished && instance->state.load() != InstanceState::kReady) {
        // The earlier build failed; start over.
        failed = instance;
        by_port_.erase(instance->port);
        by_query_.erase(it);
        instance.reset();
      }
    }
    if (instance == nullptr) {
      instance = std::make_shared<Instance>();
      instance->query = query;
      BindInstancePort(*instance);
      Instance *raw = instance.get();
      instance->ready = std::async(std::launch::async, [this, raw] {
                          ConceptNetHandle handle = materializer_.Materialize(raw->query);
                          std::lock_guard<std::mutex> guard(mu_);
                          raw->handle = std::move(handle);
                          raw->state = InstanceState::kReady;
                        }).share();
      by_query_[key] = instance;
      by_port_[instance->port] = instance;
    }
    Touch(instance->last_used);
  }
  if (failed) StopInstance(*failed);

  if (wait) {
    try {
      instance->ready.get();
    } catch (const std::exception &e) {
      throw FaultError(kFaultBuildFailed, std::string("build failed: ") + e.what());
    }
  }
  return {instance->port, instance->state.load()};
}

Value ManagementServer::Dispatch(int port, std::string_view method,
                                 const std::vector<Value> &params) {
  if (!kInferenceMethods.count(method)) {
    throw FaultError(kFaultUnknownMethod, "unknown method: " + std::string(method));
  }
  ConceptNetHandle handle;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = by_port_.find(port);
    if (it == by_port_.end()) {
      throw FaultError(kFaultNoInstance, "no instance on port " + std::to_string(port));
    }
    Instance &instance = *it->second;
    if (instance.state.load() != InstanceState::kReady) {
      throw FaultError(kFaultBuilding, "instance is still building");
    }
    handle = instance.handle;
    Touch(instance.last_used);
  }
  return CallInference(*handle, method, params, resources_,
                       [this](const Value &spec) { return ResolveTarget(spec); });
}

ConceptNetHandle ManagementServer::ResolveTarget(const Value &spec) {
  if (spec.is_int()) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = by_port_.find(static_cast<int>(spec.AsInt()));
    if (it == by_port_.end() || it->second->state.load() != InstanceState::kReady) {
      BadParams("no ready instance on port " + std::to_string(spec.AsInt()));
    }
    return it->second->handle;
  }
  if (spec.is_array()) {
    return materializer_.Materialize(DecodeQuery(spec.AsArray()));
  }
  if (spec.is_string()) {
    // Inline network text in the final relation grammar.
    return std::make_shared<const ConceptNet>(
        ConceptNet::Build(ParseRelationLines(spec.AsString())));
  }
  BadParams("analogy target must be a port, a profile query or network text");
}

Value ManagementServer::HandleManagement(std::string_view method,
                                         const std::vector<Value> &params) {
  if (method == "getApi") {
    std::vector<Value> lists = params;
    bool wait = true;
    if (lists.size() == 6) {
      if (!lists.back().is_bool()) BadParams("getApi's sixth parameter is a boolean");
      wait = lists.back().AsBool();
      lists.pop_back();
    }
    if (lists.size() == 1 && lists[0].is_array()) lists = lists[0].AsArray();
    Acquisition acquired = AcquireApi(DecodeQuery(lists), wait);
    return Value(Value::Struct{
        {"port", Value(acquired.port)},
        {"state", Value(InstanceStateName(acquired.state))},
    });
  }
  if (method == "evictIdle") {
    if (params.size() != 1) BadParams("evictIdle(seconds)");
    double seconds = 0;
    try {
      seconds = params[0].AsDouble();
    } catch (const std::invalid_argument &e) {
      BadParams(e.what());
    }
    auto idle = std::chrono::milliseconds(static_cast<int64_t>(seconds * 1000));
    return Value(static_cast<int64_t>(EvictIdle(idle)));
  }
  if (method == "listInstances") {
    Value::Array out;
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto &[port, instance] : by_port_) {
      out.push_back(Value(Value::Struct{
          {"port", Value(port)},
          {"query", Value(instance->query.CanonicalKey())},
          {"state", Value(InstanceStateName(instance->state.load()))},
      }));
    }
    return Value(std::move(out));
  }
  throw FaultError(kFaultUnknownMethod, "unknown method: " + std::string(method));
}

std::string ManagementServer::HandleRequest(int port, std::string_view body) {
  try {
    xmlrpc::MethodCall call = xmlrpc::DecodeCall(body);
    Value result = port == 0 ? HandleManagement(call.method, call.params)
                             : Dispatch(port, call.method, call.params);
    return xmlrpc::EncodeResponse(result);
  } catch (const FaultError &e) {
    return xmlrpc::EncodeFault({e.code(), e.what()});
  } catch (const ParseError &e) {
    return xmlrpc::EncodeFault({kFaultBadParams, e.what()});
  } catch (const std::exception &e) {
    return xmlrpc::EncodeFault({kFaultInternal, e.what()});
  }
}

size_t ManagementServer::EvictIdle(std::chrono::milliseconds max_idle) {
  auto now = std::chrono::steady_clock::now();
  std::vector<std::shared_ptr<Instance>> evicted;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto it = by_query_.begin(); it != by_query_.end();) {
      Instance &instance = *it->second;
      if (instance.state.load() == InstanceState::kReady &&
          now - instance.last_used > max_idle) {
        evicted.push_back(it->second);
        by_port_.erase(instance.port);
        it = by_query_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (auto &instance : evicted) {
    StopInstance(*instance);
    materializer_.Drop(instance->query);
  }
  return evicted.size();
}

std::vector<int> ManagementServer::LivePorts() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<int> ports;
  for (const auto &entry : by_port_) ports.push_back(entry.first);
  return ports;
}

size_t ManagementServer::instance_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return by_query_.size();
}

RpcClient::RpcClient(std::string host, int port, std::string path)
    : host_(std::move(host)), port_(port), path_(std::move(path)) {}

Value RpcClient::Call(std::string_view method, const std::vector<Value> &params) const {
  httplib::Client client(host_, port_);
  client.set_connection_timeout(std::chrono::seconds(5));
  client.set_read_timeout(std::chrono::seconds(60));
  std::string body = xmlrpc::EncodeCall({std::string(method), params});
  auto res = client.Post(path_, body, "text/xml");
  if (!res) {
    throw StorageError("rpc transport error talking to " + host_ + ":" +
                       std::to_string(port_) + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw StorageError("rpc http status " + std::to_string(res->status));
  }
  xmlrpc::Response response = xmlrpc::DecodeResponse(res->body);
  if (response.fault) throw FaultError(response.fault->code, response.fault->message);
  return *response.value;
}

}  // namespace cskb
