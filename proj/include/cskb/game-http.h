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

// HTTP+JSON endpoints of the game service.
//
//   POST /games                       {"editor": profile}
//   GET  /games/{id}
//   POST /games/{id}/steps/{1..7}     step payload
//   GET  /games/{id}/suggestions?card=K
//   POST /games/{id}/publish
//   POST /games/{id}/sessions         {"player": profile}
//   GET  /sessions/{id}
//   POST /sessions/{id}/roll
//   POST /sessions/{id}/reveal        {"index": N}
//   POST /sessions/{id}/guess         {"guess": "..."}
//
// A profile is {"gender", "age_group", "education", "city", "state"}.
// Errors come back as {"error": message} with status 400 (bad input),
// 404 (unknown id) or 409 (wrong state).

#ifndef CSKB_GAME_HTTP_H_
#define CSKB_GAME_HTTP_H_

#include <memory>
#include <string>
#include <string_view>

#include "cskb/game-service.h"
#include "cskb/profile.h"

namespace cskb {

class GameHttpServer {
 public:
  struct Reply {
    int status = 200;
    std::string body;
  };

  explicit GameHttpServer(GameService &service, EducationVocabulary vocabulary = {});
  ~GameHttpServer();

  GameHttpServer(const GameHttpServer &) = delete;
  GameHttpServer &operator=(const GameHttpServer &) = delete;

  // Port 0 picks a free port. Returns the bound port.
  int Start(const std::string &host, int port);
  void Stop();

  // Routing without the transport.
  Reply Handle(std::string_view method, std::string_view target,
               std::string_view body);

 private:
  struct Listener;

  GameService &service_;
  EducationVocabulary vocabulary_;
  std::unique_ptr<Listener> listener_;
};

}  // namespace cskb

#endif  // CSKB_GAME_HTTP_H_
