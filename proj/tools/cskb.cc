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


// Command-line driver for the generation pipeline, the servers and queries.

#include <signal.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cskb/conceptnet.h"
#include "cskb/errors.h"
#include "cskb/game-http.h"
#include "cskb/game-service.h"
#include "cskb/management-server.h"
#include "cskb/pipeline.h"
#include "cskb/profile-filter.h"
#include "cskb/relation.h"
#include "cskb/statement-store.h"
#include "cskb/text.h"
#include "cskb/xmlrpc.h"

#ifndef CSKB_DATA_DIR
#define CSKB_DATA_DIR "data"
#endif

namespace {

using cskb::xmlrpc::Value;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Common {
  std::string data_dir = CSKB_DATA_DIR;
  std::string lang = "pt";
};

void Emit(const std::optional<std::string> &out, const std::vector<std::string> &lines) {
  if (out && !out->empty()) {
    cskb::WriteLines(*out, lines);
    return;
  }
  for (const std::string &line : lines) std::cout << line << "\n";
}

std::vector<std::string> Serialize(const std::vector<cskb::Relation> &rels,
                                   cskb::LineFormat format) {
  std::vector<std::string> out;
  out.reserve(rels.size());
  for (const cskb::Relation &r : rels) out.push_back(cskb::SerializeRelation(r, format));
  return out;
}

cskb::RelaxationFlags Flags(const std::vector<std::string> &enable,
                            const std::vector<std::string> &disable) {
  cskb::RelaxationFlags flags;
  auto set = [&](const std::string &name, bool value) {
    if (name == "PropertyOf") {
      flags.property_of = value;
    } else if (name == "ThematicKLine") {
      flags.thematic_kline = value;
    } else if (name == "CapableOf") {
      flags.capable_of = value;
    } else if (name == "CapableOfReceivingAction") {
      flags.capable_of_receiving_action = value;
    } else if (name == "SuperThematicKLine") {
      flags.super_thematic_kline = value;
    } else {
      throw cskb::ValidationError("unknown heuristic: " + name);
    }
  };
  for (const std::string &name : enable) set(name, true);
  for (const std::string &name : disable) set(name, false);
  return flags;
}

Value FromJson(const json &j) {
  switch (j.type()) {
    case json::value_t::null:
      return Value();
    case json::value_t::boolean:
      return Value(j.get<bool>());
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
      return Value(j.get<int64_t>());
    case json::value_t::number_float:
      return Value(j.get<double>());
    case json::value_t::string:
      return Value(j.get<std::string>());
    case json::value_t::array: {
      Value::Array a;
      for (const json &e : j) a.push_back(FromJson(e));
      return Value(std::move(a));
    }
    case json::value_t::object: {
      Value::Struct s;
      for (const auto &[k, v] : j.items()) s.emplace(k, FromJson(v));
      return Value(std::move(s));
    }
    default:
      return Value();
  }
}

json ToJson(const Value &v) {
  switch (v.kind()) {
    case Value::Kind::kNil:
      return nullptr;
    case Value::Kind::kBool:
      return v.AsBool();
    case Value::Kind::kInt:
      return v.AsInt();
    case Value::Kind::kDouble:
      return v.AsDouble();
    case Value::Kind::kString:
      return v.AsString();
    case Value::Kind::kArray: {
      json a = json::array();
      for (const Value &e : v.AsArray()) a.push_back(ToJson(e));
      return a;
    }
    case Value::Kind::kStruct: {
      json o = json::object();
      for (const auto &[k, e] : v.AsStruct()) o[k] = ToJson(e);
      return o;
    }
  }
  return nullptr;
}

// Arguments that parse as JSON are sent typed; anything else as a string.
Value ParseArgument(const std::string &arg) {
  json j = json::parse(arg, nullptr, false);
  if (j.is_discarded()) return Value(arg);
  return FromJson(j);
}

std::pair<int, int> PoolFromEnv(int lo, int hi) {
  const char *env = std::getenv("CSKB_PORT_POOL");
  if (env == nullptr) return {lo, hi};
  std::vector<std::string> parts = cskb::Split(env, "-");
  if (parts.size() != 2) throw cskb::ValidationError("CSKB_PORT_POOL must be MIN-MAX");
  return {std::stoi(parts[0]), std::stoi(parts[1])};
}

struct Metrics {
  cskb::NetworkMetrics plain;
  cskb::NetworkMetrics normalized;
};

cskb::NetworkMetrics MeasureCorpus(const std::vector<std::string> &lines,
                                   const cskb::Resources &resources,
                                   bool normalize) {
  cskb::PipelineOutput out = cskb::RunPipeline(lines, resources, {}, normalize);
  return cskb::ComputeDensity(
      cskb::BuildConceptNet(cskb::ProfileQuery::MatchAll(), out.relaxed));
}

std::string Percent(double before, double after) {
  if (before == 0) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%+.2f %%", 100.0 * (after - before) / before);
  return buf;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"cskb: common-sense knowledge base tools"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--data-dir", common.data_dir, "Directory with language resources");
  app.add_option("--lang", common.lang, "Resource language (pt, en)");

  std::optional<std::string> out;
  std::string input;

  auto *exp = app.add_subcommand("export", "Export a statement store as seven-slot lines");
  std::string store_path;
  exp->add_option("--store", store_path, "Statement store (JSONL)")->required();
  exp->add_option("--out", out);

  auto *ext = app.add_subcommand("extract", "Extract profiled relations from export lines");
  ext->add_option("--corpus", input, "Export file")->required();
  ext->add_option("--out", out);

  auto *norm = app.add_subcommand("normalize", "Tag and lemmatize extracted relations");
  norm->add_option("--in", input, "Extracted relation file")->required();
  norm->add_option("--out", out);

  std::vector<std::string> enable, disable;
  auto *rel = app.add_subcommand("relax", "Group relations and run inference heuristics");
  rel->add_option("--in", input, "Normalized relation file")->required();
  rel->add_option("--out", out);
  rel->add_option("--enable", enable, "Heuristics to switch on");
  rel->add_option("--disable", disable, "Heuristics to switch off");

  std::string profile = "[[], [], [], [], []]";
  bool no_post_filter = false;
  auto *flt = app.add_subcommand("filter", "Build the network for a profile query");
  flt->add_option("--in", input, "Relaxed relation file")->required();
  flt->add_option("--profile", profile, "Five lists, e.g. [[F], [], [], [], [SP]]");
  flt->add_option("--out", out);
  flt->add_flag("--no-post-filter", no_post_filter);

  std::string out_dir = "out";
  bool no_normalize = false;
  auto *pipe = app.add_subcommand("pipeline", "Run every generation phase");
  pipe->add_option("--corpus", input, "Export file")->required();
  pipe->add_option("--out-dir", out_dir);
  pipe->add_option("--profile", profile);
  pipe->add_option("--enable", enable);
  pipe->add_option("--disable", disable);
  pipe->add_flag("--no-normalize", no_normalize);
  pipe->add_flag("--no-post-filter", no_post_filter);

  std::string host = "127.0.0.1";
  int port = 8000;
  int game_port = 8080;
  int pool_min = 20000, pool_max = 20999;
  auto *srv = app.add_subcommand("serve", "Run the management server and the game service");
  srv->add_option("--corpus", input, "Export file to seed the statement store");
  srv->add_option("--store", store_path, "Statement store (JSONL), saved on exit");
  srv->add_option("--out-dir", out_dir, "Where materialized networks are kept");
  srv->add_option("--host", host);
  srv->add_option("--port", port, "Management port");
  srv->add_option("--game-port", game_port, "HTTP port of the game service");
  srv->add_option("--pool-min", pool_min);
  srv->add_option("--pool-max", pool_max);

  std::string method;
  auto *qry = app.add_subcommand("query", "Call a server method and print the result as JSON");
  qry->add_option("--host", host);
  qry->add_option("--port", port);
  qry->add_option("method", method)->required();
  qry->allow_extras();
  qry->footer("Arguments after the method are JSON values; other text is sent as a string.");

  bool before = false, after = false;
  auto *met = app.add_subcommand("metrics", "Node, relation and density report");
  met->add_option("--corpus", input, "Export file")->required();
  met->add_flag("--before", before, "Without normalization");
  met->add_flag("--after", after, "With normalization");

  int idle_seconds = 0;
  auto *evi = app.add_subcommand("evict", "Shut down idle API instances");
  evi->add_option("--host", host);
  evi->add_option("--port", port);
  evi->add_option("--idle", idle_seconds, "Seconds without calls");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  // Bad flag values are usage errors, not data errors.
  cskb::ProfileQuery query;
  cskb::RelaxationFlags flags;
  try {
    query = cskb::ProfileQuery::ParseText(profile);
    flags = Flags(enable, disable);
  } catch (const cskb::ValidationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  auto resources = [&] {
    return cskb::Resources::Load(
        cskb::ResourcePaths::ForLanguage(common.data_dir, common.lang));
  };

  try {
    if (*exp) {
      cskb::StatementStore store;
      store.Load(store_path);
      Emit(out, store.ExportCorpus());
    } else if (*ext) {
      cskb::Resources res = resources();
      cskb::Extractor extractor(res.rules, res.registry, res.negation);
      cskb::ExtractionStats stats;
      std::vector<std::string> lines = cskb::ReadLines(input);
      Emit(out, Serialize(extractor.ExtractCorpus(lines, &stats),
                          cskb::LineFormat::kExtracted));
      std::cerr << "lines=" << stats.lines << " unmatched=" << stats.unmatched
                << " relations=" << stats.relations << "\n";
    } else if (*norm) {
      cskb::Resources res = resources();
      cskb::NormalizationStats stats;
      std::vector<cskb::Relation> rels =
          cskb::ReadRelationFile(input, &res.registry);
      Emit(out, Serialize(cskb::NormalizeRelations(rels, *res.morphology, &stats),
                          cskb::LineFormat::kExtracted));
      std::cerr << stats.Report() << "\n";
    } else if (*rel) {
      cskb::Resources res = resources();
      cskb::RelaxationReport report;
      std::vector<cskb::Relation> rels =
          cskb::ReadRelationFile(input, &res.registry);
      Emit(out, Serialize(cskb::Relax(rels, flags, &report),
                          cskb::LineFormat::kWeighted));
      std::cerr << report.Format();
    } else if (*flt) {
      cskb::Resources res = resources();
      cskb::FilterOptions options;
      options.post_filter_property = !no_post_filter;
      cskb::ConceptNet net = cskb::BuildConceptNet(
          query, cskb::ReadRelationFile(input, &res.registry), options);
      Emit(out, Serialize(net.relations(), cskb::LineFormat::kFinal));
    } else if (*pipe) {
      cskb::Resources res = resources();
      std::vector<std::string> lines = cskb::ReadLines(input);
      cskb::PipelineOutput result =
          cskb::RunPipeline(lines, res, flags, !no_normalize);
      cskb::MaterializerOptions options;
      options.output_dir = out_dir;
      options.filter.post_filter_property = !no_post_filter;
      std::filesystem::create_directories(out_dir);
      cskb::WriteLines(out_dir + "/extracted.txt",
                       Serialize(result.extracted, cskb::LineFormat::kExtracted));
      cskb::WriteLines(out_dir + "/normalized.txt",
                       Serialize(result.normalized, cskb::LineFormat::kExtracted));
      cskb::WriteLines(out_dir + "/relaxed.txt",
                       Serialize(result.relaxed, cskb::LineFormat::kWeighted));
      cskb::Materializer materializer(result.relaxed, options);
      cskb::ConceptNetHandle net = materializer.Materialize(query);
      cskb::NetworkMetrics m = cskb::ComputeDensity(*net);
      std::cout << "network: " << materializer.NetworkPath(query) << "\n"
                << "extraction: lines=" << result.extraction.lines
                << " unmatched=" << result.extraction.unmatched
                << " relations=" << result.extraction.relations << "\n"
                << "normalization: " << result.normalization.Report() << "\n"
                << result.relaxation.Format() << "nodes=" << m.nodes
                << " relations=" << m.relations << " density=" << m.density << "\n";
    } else if (*srv) {
      cskb::Resources res = resources();
      auto [lo, hi] = PoolFromEnv(pool_min, pool_max);
      cskb::StoreOptions store_options;
      store_options.morphology = res.morphology.get();
      cskb::StatementStore store(res.templates, store_options);
      if (!store_path.empty() && std::filesystem::exists(store_path)) {
        store.Load(store_path);
      }
      if (!input.empty()) store.Import(cskb::ReadLines(input));
      cskb::PipelineOutput result = cskb::RunPipeline(store.ExportCorpus(), res);
      cskb::MaterializerOptions mopts;
      mopts.output_dir = out_dir;
      std::filesystem::create_directories(out_dir);
      cskb::Materializer materializer(result.relaxed, mopts);

      // Block the shutdown signals before any server thread starts.
      sigset_t signals;
      sigemptyset(&signals);
      sigaddset(&signals, SIGINT);
      sigaddset(&signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);

      cskb::ServerOptions sopts;
      sopts.host = host;
      sopts.management_port = port;
      sopts.port_min = lo;
      sopts.port_max = hi;
      cskb::ManagementServer server(
          materializer, {res.registry, res.render, res.morphology, {}}, sopts);
      int bound = server.Start();
      cskb::GameService game(store, materializer, res.morphology, res.registry,
                             res.render);
      cskb::GameHttpServer http(game);
      int game_bound = http.Start(host, game_port);
      std::cout << "management " << host << ":" << bound << " game " << host << ":"
                << game_bound << std::endl;
      int sig = 0;
      sigwait(&signals, &sig);
      http.Stop();
      server.Stop();
      if (!store_path.empty()) store.Save(store_path);
    } else if (*qry) {
      std::vector<Value> params;
      for (const std::string &a : qry->remaining()) params.push_back(ParseArgument(a));
      cskb::RpcClient client(host, port);
      std::cout << ToJson(client.Call(method, params)).dump(2) << "\n";
    } else if (*met) {
      cskb::Resources res = resources();
      std::vector<std::string> lines = cskb::ReadLines(input);
      if (!before && !after) before = after = true;
      std::optional<cskb::NetworkMetrics> b, a;
      if (before) b = MeasureCorpus(lines, res, false);
      if (after) a = MeasureCorpus(lines, res, true);
      std::printf("%-10s %14s %14s %10s\n", "", "non-normalized", "normalized", "change");
      auto row = [&](const char *name, double x, double y, bool have_x, bool have_y,
                     const char *format) {
        auto text = [&](double v, bool have) {
          if (!have) return std::string("-");
          char buffer[32];
          std::snprintf(buffer, sizeof buffer, format, v);
          return std::string(buffer);
        };
        std::string sx = text(x, have_x);
        std::string sy = text(y, have_y);
        std::printf("%-10s %14s %14s %10s\n", name, sx.c_str(), sy.c_str(),
                    have_x && have_y ? Percent(x, y).c_str() : "");
      };
      cskb::NetworkMetrics zero;
      const cskb::NetworkMetrics &x = b ? *b : zero;
      const cskb::NetworkMetrics &y = a ? *a : zero;
      row("nodes", x.nodes, y.nodes, b.has_value(), a.has_value(), "%.0f");
      row("relations", x.relations, y.relations, b.has_value(), a.has_value(), "%.0f");
      row("density", x.density, y.density, b.has_value(), a.has_value(), "%.3f");
    } else if (*evi) {
      cskb::RpcClient client(host, port);
      Value n = client.Call("evictIdle", {Value(static_cast<int64_t>(idle_seconds))});
      std::cout << n.AsInt() << "\n";
    }
  } catch (const cskb::xmlrpc::FaultError &e) {
    std::cerr << "fault " << e.code() << ": " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
