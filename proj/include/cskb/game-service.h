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

// Backend of the "What is it?" quiz: the editor wizard and the player loop.

#ifndef CSKB_GAME_SERVICE_H_
#define CSKB_GAME_SERVICE_H_

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cskb/conceptnet.h"
#include "cskb/morphology.h"
#include "cskb/profile-filter.h"
#include "cskb/profile.h"
#include "cskb/relation-type.h"
#include "cskb/render.h"
#include "cskb/statement-store.h"

namespace cskb {

inline constexpr std::array<std::string_view, 6> kThemes = {
    "sexual education", "ethics",         "healthcare",
    "environment",      "cultural plurality", "market and consumers"};

inline constexpr size_t kMaxClues = 10;
inline constexpr size_t kMaxTopics = 6;

// Activities the service writes into the statement store.
inline constexpr std::string_view kSynonymActivity = "synonyms";
inline constexpr std::string_view kClueActivity = "game_clue";
inline constexpr std::string_view kPlayActivity = "game_play";

enum class ClueSource { kSuggested, kEdited, kAuthored };

std::string_view ClueSourceName(ClueSource source);
ClueSource ParseClueSource(std::string_view name);

struct Clue {
  std::string text;
  ClueSource source = ClueSource::kAuthored;

  bool operator==(const Clue &) const = default;
};

struct Card {
  std::string topic;
  std::string secret_word;
  std::vector<std::string> synonyms;
  std::vector<Clue> clues;
};

enum class GameState { kDraft, kPublished };

struct GameInstance {
  std::string id;
  ProfileAttrs editor;
  ProfileQuery query;
  std::string theme;
  std::vector<std::string> topics;
  std::vector<Card> cards;
  int step = 0;  // last completed wizard step, 0..7
  GameState state = GameState::kDraft;
};

struct Suggestion {
  std::string sentence;
  RelationKey relation;
  int64_t weight = 0;  // f + i
};

enum class GuessOutcome { kCorrect, kOpen };

std::string_view GuessOutcomeName(GuessOutcome outcome);

struct Guess {
  std::string text;
  std::vector<int> revealed;  // 1-based clue numbers shown at guess time
  GuessOutcome outcome = GuessOutcome::kOpen;
  std::vector<StatementId> records;
};

struct PlaySession {
  std::string id;
  std::string game_id;
  ProfileAttrs player;
  std::optional<size_t> card;  // index into the game's cards
  std::string topic;
  std::vector<int> revealed;   // 1-based, in reveal order
  std::vector<Guess> guesses;
};

struct CardDraft {
  std::string topic;
  std::string secret_word;
  std::vector<std::string> synonyms;
};

struct GameOptions {
  uint64_t seed = 7;
  size_t min_revealed_for_guess = 1;
  std::string synonym_pattern = "{1} is also known as {2}";
  std::string play_separator = " — ";
};

// Thread-safe. Wizard steps run in order 1..7; the latest step may be
// resubmitted (step 5 once per card).
class GameService {
 public:
  GameService(StatementStore &store, Materializer &materializer,
              std::shared_ptr<const MorphologyProvider> morphology,
              TypeRegistry registry, RenderTemplates templates,
              GameOptions options = {});

  GameInstance CreateGame(const ProfileAttrs &editor);
  GameInstance GetGame(const std::string &game_id) const;

  // Step 1: materializes the network for the population profile.
  GameInstance SetProfile(const std::string &game_id, const ProfileQuery &query);
  // Step 2: one of kThemes.
  GameInstance SetTheme(const std::string &game_id, std::string_view theme);
  // Step 3: 1..6 distinct topics.
  GameInstance SetTopics(const std::string &game_id,
                         const std::vector<std::string> &topics);
  // Step 4: secret words and synonyms; synonym statements are recorded.
  GameInstance SetSecretWords(const std::string &game_id,
                              const std::vector<CardDraft> &cards);
  // Step 5: clues of one card. Occurrences of the secret word or a synonym
  // are masked with "___". Edited and authored clues are stored as
  // statements of the editor.
  GameInstance SetClues(const std::string &game_id, size_t card,
                        const std::vector<Clue> &clues);
  // Step 6: checks every card invariant.
  GameInstance Review(const std::string &game_id);
  // Step 7.
  GameInstance Publish(const std::string &game_id);

  // Relations incident to the secret word or a synonym, rendered,
  // deduplicated, by weight (then context score, then text).
  std::vector<Suggestion> SuggestClues(const std::string &game_id,
                                       size_t card) const;
  std::vector<Suggestion> SuggestClues(std::string_view secret_word,
                                       const std::vector<std::string> &synonyms,
                                       const ConceptNet &net) const;

  // n + n(n-1)/2 statements for n synonyms. Throws ValidationError on an
  // empty list, a duplicate or a synonym equal to the secret word.
  std::vector<Statement> RecordSynonyms(std::string_view secret_word,
                                        const std::vector<std::string> &synonyms,
                                        const ProfileAttrs &editor);

  std::string RollDice(const std::string &game_id);

  PlaySession StartSession(const std::string &game_id, const ProfileAttrs &player);
  PlaySession GetSession(const std::string &session_id) const;
  // Rolls the dice and draws a card of that topic.
  PlaySession Roll(const std::string &session_id);
  std::string RevealClue(const std::string &session_id, int index);
  Guess SubmitGuess(const std::string &session_id, std::string_view guess);

  // Matching used for guesses: lowercase and lemmatized.
  std::string GuessKey(std::string_view text) const;

  size_t game_count() const;

 private:
  GameInstance &Find(const std::string &game_id);
  const GameInstance &Find(const std::string &game_id) const;
  PlaySession &FindSession(const std::string &session_id);
  void BeginStep(const GameInstance &game, int step) const;
  void ValidateCards(const GameInstance &game, bool require_clues) const;
  std::vector<std::string> ResolveWord(const ConceptNet &net,
                                       std::string_view word) const;

  StatementStore &store_;
  Materializer &materializer_;
  std::shared_ptr<const MorphologyProvider> morphology_;
  TypeRegistry registry_;
  RenderTemplates templates_;
  GameOptions options_;

  mutable std::mutex mu_;
  std::map<std::string, GameInstance> games_;
  std::map<std::string, ConceptNetHandle> networks_;
  std::map<std::string, PlaySession> sessions_;
  uint64_t next_game_ = 1;
  uint64_t next_session_ = 1;
  std::mt19937_64 rng_;
};

}  // namespace cskb

#endif  // CSKB_GAME_SERVICE_H_
