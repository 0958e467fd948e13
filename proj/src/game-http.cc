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

#include "cskb/game-http.h"

#include <sys/socket.h>

#include <charconv>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "cskb/errors.h"
#include "cskb/text.h"

namespace cskb {

using nlohmann::json;

namespace {

json ProfileJson(const ProfileAttrs &p) {
  auto slots = ProfileSlots(p);
  return {{"gender", slots[0]},
          {"age_group", slots[1]},
          {"education", slots[2]},
          {"city", slots[3]},
          {"state", slots[4]}};
}

ProfileAttrs ProfileFrom(const json &j, const EducationVocabulary &vocabulary) {
  if (!j.is_object()) throw ValidationError("profile must be an object");
  return MakeProfile(j.at("gender").get<std::string>(),
                     j.at("age_group").get<std::string>(),
                     j.at("education").get<std::string>(),
                     j.at("city").get<std::string>(), j.at("state").get<std::string>(),
                     vocabulary);
}

json GameJson(const GameInstance &g) {
  json cards = json::array();
  for (const Card &c : g.cards) {
    json clues = json::array();
    for (const Clue &clue : c.clues) {
      clues.push_back({{"text", clue.text}, {"source", ClueSourceName(clue.source)}});
    }
    cards.push_back({{"topic", c.topic},
                     {"secret_word", c.secret_word},
                     {"synonyms", c.synonyms},
                     {"clues", clues}});
  }
  return {{"id", g.id},
          {"editor", ProfileJson(g.editor)},
          {"profile_query", g.query.lists()},
          {"theme", g.theme},
          {"topics", g.topics},
          {"cards", cards},
          {"step", g.step},
          {"state", g.state == GameState::kPublished ? "published" : "draft"}};
}

json GuessJson(const Guess &g) {
  return {{"guess", g.text},
          {"revealed", g.revealed},
          {"outcome", GuessOutcomeName(g.outcome)},
          {"records", g.records}};
}

json SessionJson(const PlaySession &s, const GameService &service) {
  json out = {{"id", s.id},
              {"game_id", s.game_id},
              {"player", ProfileJson(s.player)},
              {"topic", s.topic},
              {"revealed", s.revealed}};
  json guesses = json::array();
  for (const Guess &g : s.guesses) guesses.push_back(GuessJson(g));
  out["guesses"] = guesses;
  if (s.card) {
    GameInstance game = service.GetGame(s.game_id);
    out["card"] = *s.card;
    out["clue_count"] = game.cards[*s.card].clues.size();
  } else {
    out["card"] = nullptr;
    out["clue_count"] = 0;
  }
  return out;
}

json ParseBody(std::string_view body) {
  if (Trim(body).empty()) return json::object();
  json j = json::parse(body);
  if (!j.is_object()) throw ValidationError("request body must be a JSON object");
  return j;
}

size_t ParseIndex(std::string_view text) {
  size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("bad number: " + std::string(text));
  }
  return value;
}

GameHttpServer::Reply Json(int status, const json &body) {
  return {status, body.dump()};
}

}  // namespace

struct GameHttpServer::Listener {
  httplib::Server server;
  std::thread thread;
};

GameHttpServer::GameHttpServer(GameService &service, EducationVocabulary vocabulary)
    : service_(service), vocabulary_(std::move(vocabulary)) {}

GameHttpServer::~GameHttpServer() { Stop(); }

int GameHttpServer::Start(const std::string &host, int port) {
  if (listener_) throw StateError("game server already running");
  auto listener = std::make_unique<Listener>();
  listener->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  auto route = [this](const httplib::Request &req, httplib::Response &res) {
    std::string target = req.path;
    if (!req.params.empty()) {
      std::string query;
      for (const auto &[key, value] : req.params) {
        query += (query.empty() ? "?" : "&") + key + "=" + value;
      }
      target += query;
    }
    Reply reply = Handle(req.method, target, req.body);
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  };
  listener->server.Get(R"(/.*)", route);
  listener->server.Post(R"(/.*)", route);
  int bound = port;
  if (port == 0) {
    bound = listener->server.bind_to_any_port(host);
    if (bound < 0) throw StorageError("cannot bind game server");
  } else if (!listener->server.bind_to_port(host, port)) {
    throw StorageError("cannot bind game server port " + std::to_string(port));
  }
  Listener *raw = listener.get();
  listener->thread = std::thread([raw] { raw->server.listen_after_bind(); });
  listener_ = std::move(listener);
  return bound;
}

void GameHttpServer::Stop() {
  if (!listener_) return;
  listener_->server.stop();
  if (listener_->thread.joinable()) listener_->thread.join();
  listener_.reset();
}

GameHttpServer::Reply GameHttpServer::Handle(std::string_view method,
                                             std::string_view target,
                                             std::string_view body) {
  std::string_view path = target;
  std::string_view query;
  if (size_t q = target.find('?'); q != std::string_view::npos) {
    path = target.substr(0, q);
    query = target.substr(q + 1);
  }
  std::vector<std::string> parts;
  for (const std::string &p : Split(path, "/")) {
    if (!p.empty()) parts.push_back(p);
  }
  auto is = [&](std::initializer_list<std::string_view> shape) {
    if (parts.size() != shape.size()) return false;
    size_t k = 0;
    for (std::string_view s : shape) {
      if (s != "*" && parts[k] != s) return false;
      ++k;
    }
    return true;
  };

  try {
    json in = ParseBody(body);
    if (method == "POST" && is({"games"})) {
      ProfileAttrs editor = ProfileFrom(in.at("editor"), vocabulary_);
      return Json(201, GameJson(service_.CreateGame(editor)));
    }
    if (method == "GET" && is({"games", "*"})) {
      return Json(200, GameJson(service_.GetGame(parts[1])));
    }
    if (method == "POST" && is({"games", "*", "steps", "*"})) {
      const std::string &id = parts[1];
      size_t step = ParseIndex(parts[3]);
      GameInstance game;
      switch (step) {
        case 1: {
          auto lists = in.at("profile_query").get<std::vector<std::vector<std::string>>>();
          if (lists.size() != 5) throw ValidationError("profile_query needs five lists");
          ProfileQuery::Lists parsed;
          for (size_t k = 0; k < 5; ++k) parsed[k] = lists[k];
          game = service_.SetProfile(id, ProfileQuery::Parse(parsed, vocabulary_));
          break;
        }
        case 2:
          game = service_.SetTheme(id, in.at("theme").get<std::string>());
          break;
        case 3:
          game = service_.SetTopics(id, in.at("topics").get<std::vector<std::string>>());
          break;
        case 4: {
          std::vector<CardDraft> drafts;
          for (const json &c : in.at("cards")) {
            drafts.push_back({c.at("topic").get<std::string>(),
                              c.at("secret_word").get<std::string>(),
                              c.value("synonyms", std::vector<std::string>{})});
          }
          game = service_.SetSecretWords(id, drafts);
          break;
        }
        case 5: {
          std::vector<Clue> clues;
          for (const json &c : in.at("clues")) {
            clues.push_back({c.at("text").get<std::string>(),
                             ParseClueSource(c.value("source", "authored"))});
          }
          game = service_.SetClues(id, in.at("card").get<size_t>(), clues);
          break;
        }
        case 6:
          game = service_.Review(id);
          break;
        case 7:
          game = service_.Publish(id);
          break;
        default:
          throw ValidationError("wizard steps are 1 to 7");
      }
      return Json(200, GameJson(game));
    }
    if (method == "GET" && is({"games", "*", "suggestions"})) {
      size_t card = 0;
      for (const std::string &kv : Split(query, "&")) {
        if (StartsWith(kv, "card=")) card = ParseIndex(std::string_view(kv).substr(5));
      }
      json out = json::array();
      for (const Suggestion &s : service_.SuggestClues(parts[1], card)) {
        out.push_back({{"sentence", s.sentence},
                       {"relation", {s.relation.type, s.relation.param1, s.relation.param2}},
                       {"weight", s.weight}});
      }
      return Json(200, out);
    }
    if (method == "POST" && is({"games", "*", "publish"})) {
      return Json(200, GameJson(service_.Publish(parts[1])));
    }
    if (method == "POST" && is({"games", "*", "sessions"})) {
      ProfileAttrs player = ProfileFrom(in.at("player"), vocabulary_);
      return Json(201, SessionJson(service_.StartSession(parts[1], player), service_));
    }
    if (method == "GET" && is({"sessions", "*"})) {
      return Json(200, SessionJson(service_.GetSession(parts[1]), service_));
    }
    if (method == "POST" && is({"sessions", "*", "roll"})) {
      return Json(200, SessionJson(service_.Roll(parts[1]), service_));
    }
    if (method == "POST" && is({"sessions", "*", "reveal"})) {
      int index = in.at("index").get<int>();
      std::string clue = service_.RevealClue(parts[1], index);
      return Json(200, {{"index", index}, {"clue", clue}});
    }
    if (method == "POST" && is({"sessions", "*", "guess"})) {
      return Json(200, GuessJson(service_.SubmitGuess(parts[1],
                                                      in.at("guess").get<std::string>())));
    }
    return Json(404, {{"error", "no route " + std::string(method) + " " +
                                    std::string(path)}});
  } catch (const NotFoundError &e) {
    return Json(404, {{"error", e.what()}});
  } catch (const StateError &e) {
    return Json(409, {{"error", e.what()}});
  } catch (const ValidationError &e) {
    return Json(400, {{"error", e.what()}});
  } catch (const json::exception &e) {
    return Json(400, {{"error", e.what()}});
  } catch (const ParseError &e) {
    return Json(400, {{"error", e.what()}});
  } catch (const std::exception &e) {
    return Json(500, {{"error", e.what()}});
  }
}

}  // namespace cskb
