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

#include "cskb/game-service.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "cskb/errors.h"
#include "cskb/inference.h"
#include "cskb/normalization.h"
#include "cskb/text.h"

namespace cskb {

namespace {

bool WordByte(unsigned char c) { return std::isalnum(c) || c >= 0x80 || c == '_'; }

// Replaces case-insensitive whole-word occurrences of `word` with "___".
std::string MaskWord(const std::string &text, std::string_view word) {
  std::string needle = ToLower(Trim(word));
  if (needle.empty()) return text;
  std::string lower = ToLower(text);
  if (lower.size() != text.size()) return text;
  std::string out;
  size_t last = 0;
  for (size_t pos = lower.find(needle); pos != std::string::npos;
       pos = lower.find(needle, pos + 1)) {
    if (pos < last) continue;
    size_t end = pos + needle.size();
    bool left = pos == 0 || !WordByte(static_cast<unsigned char>(lower[pos - 1]));
    bool right = end == lower.size() || !WordByte(static_cast<unsigned char>(lower[end]));
    if (!left || !right) continue;
    out.append(text, last, pos - last);
    out += kBlank;
    last = end;
  }
  out.append(text, last, std::string::npos);
  return out;
}

std::string FillPattern(std::string_view pattern, std::string_view first,
                        std::string_view second) {
  std::string out(pattern);
  size_t pos = out.find("{1}");
  if (pos != std::string::npos) out.replace(pos, 3, first);
  pos = out.find("{2}");
  if (pos != std::string::npos) out.replace(pos, 3, second);
  return out;
}

}  // namespace

std::string_view ClueSourceName(ClueSource source) {
  switch (source) {
    case ClueSource::kSuggested:
      return "suggested";
    case ClueSource::kEdited:
      return "edited";
    case ClueSource::kAuthored:
      return "authored";
  }
  return "authored";
}

ClueSource ParseClueSource(std::string_view name) {
  if (name == "suggested") return ClueSource::kSuggested;
  if (name == "edited") return ClueSource::kEdited;
  if (name == "authored") return ClueSource::kAuthored;
  throw ValidationError("unknown clue source: " + std::string(name));
}

std::string_view GuessOutcomeName(GuessOutcome outcome) {
  return outcome == GuessOutcome::kCorrect ? "correct" : "open";
}

GameService::GameService(StatementStore &store, Materializer &materializer,
                         std::shared_ptr<const MorphologyProvider> morphology,
                         TypeRegistry registry, RenderTemplates templates,
                         GameOptions options)
    : store_(store),
      materializer_(materializer),
      morphology_(std::move(morphology)),
      registry_(std::move(registry)),
      templates_(std::move(templates)),
      options_(std::move(options)),
      rng_(options_.seed) {
  if (!morphology_) throw ValidationError("game service needs a morphology provider");
  store_.RegisterActivity(std::string(kSynonymActivity));
  store_.RegisterActivity(std::string(kClueActivity));
  store_.RegisterActivity(std::string(kPlayActivity));
}

GameInstance &GameService::Find(const std::string &game_id) {
  auto it = games_.find(game_id);
  if (it == games_.end()) throw NotFoundError("no game " + game_id);
  return it->second;
}

const GameInstance &GameService::Find(const std::string &game_id) const {
  auto it = games_.find(game_id);
  if (it == games_.end()) throw NotFoundError("no game " + game_id);
  return it->second;
}

PlaySession &GameService::FindSession(const std::string &session_id) {
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw NotFoundError("no session " + session_id);
  return it->second;
}

void GameService::BeginStep(const GameInstance &game, int step) const {
  if (game.state == GameState::kPublished) {
    throw StateError("game " + game.id + " is already published");
  }
  if (step != game.step + 1 && step != game.step) {
    throw StateError("wizard step " + std::to_string(step) + " out of order; game " +
                     game.id + " completed step " + std::to_string(game.step));
  }
}

GameInstance GameService::CreateGame(const ProfileAttrs &editor) {
  std::lock_guard<std::mutex> lock(mu_);
  GameInstance game;
  game.id = "g" + std::to_string(next_game_++);
  game.editor = editor;
  games_[game.id] = game;
  return game;
}

GameInstance GameService::GetGame(const std::string &game_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  return Find(game_id);
}

GameInstance GameService::SetProfile(const std::string &game_id,
                                     const ProfileQuery &query) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    BeginStep(Find(game_id), 1);
  }
  ConceptNetHandle net = materializer_.Materialize(query);
  std::lock_guard<std::mutex> lock(mu_);
  GameInstance &game = Find(game_id);
  BeginStep(game, 1);
  game.query = query;
  game.step = 1;
  networks_[game_id] = std::move(net);
  return game;
}

GameInstance GameService::SetTheme(const std::string &game_id, std::string_view theme) {
  std::lock_guard<std::mutex> lock(mu_);
  GameInstance &game = Find(game_id);
  BeginStep(game, 2);
  std::string wanted = ToLower(Trim(theme));
  if (std::find(kThemes.begin(), kThemes.end(), wanted) == kThemes.end()) {
    throw ValidationError("'" + std::string(theme) + "' is not a transversal theme");
  }
  game.theme = wanted;
  game.step = 2;
  return game;
}

GameInstance GameService::SetTopics(const std::string &game_id,
                                    const std::vector<std::string> &topics) {
  std::lock_guard<std::mutex> lock(mu_);
  GameInstance &game = Find(game_id);
  BeginStep(game, 3);
  if (topics.empty() || topics.size() > kMaxTopics) {
    throw ValidationError("a game has 1 to 6 topics");
  }
  std::set<std::string> seen;
  std::vector<std::string> cleaned;
  for (const std::string &t : topics) {
    std::string topic(Trim(t));
    if (topic.empty()) throw ValidationError("empty topic");
    if (!seen.insert(ToLower(topic)).second) {
      throw ValidationError("duplicate topic: " + topic);
    }
    cleaned.push_back(topic);
  }
  game.topics = std::move(cleaned);
  game.step = 3;
  return game;
}

GameInstance GameService::SetSecretWords(const std::string &game_id,
                                         const std::vector<CardDraft> &drafts) {
  ProfileAttrs editor;
  std::vector<Card> cards;
  {
    std::lock_guard<std::mutex> lock(mu_);
    GameInstance &game = Find(game_id);
    BeginStep(game, 4);
    editor = game.editor;
    if (drafts.empty()) throw ValidationError("no secret words");
    for (const CardDraft &d : drafts) {
      if (std::find(game.topics.begin(), game.topics.end(), d.topic) ==
          game.topics.end()) {
        throw ValidationError("card topic '" + d.topic + "' is not a game topic");
      }
      std::string secret(Trim(d.secret_word));
      if (secret.empty()) throw ValidationError("empty secret word");
      Card card;
      card.topic = d.topic;
      card.secret_word = secret;
      std::set<std::string> seen{ToLower(secret)};
      for (const std::string &s : d.synonyms) {
        std::string synonym(Trim(s));
        if (synonym.empty()) throw ValidationError("empty synonym");
        if (!seen.insert(ToLower(synonym)).second) {
          throw ValidationError("duplicate synonym: " + synonym);
        }
        card.synonyms.push_back(synonym);
      }
      cards.push_back(std::move(card));
    }
  }

  for (const Card &card : cards) {
    if (!card.synonyms.empty()) RecordSynonyms(card.secret_word, card.synonyms, editor);
  }

  std::lock_guard<std::mutex> lock(mu_);
  GameInstance &game = Find(game_id);
  game.cards = std::move(cards);
  game.step = 4;
  return game;
}

GameInstance GameService::SetClues(const std::string &game_id, size_t card_index,
                                   const std::vector<Clue> &clues) {
  ProfileAttrs editor;
  std::vector<Clue> masked;
  {
    std::lock_guard<std::mutex> lock(mu_);
    GameInstance &game = Find(game_id);
    BeginStep(game, 5);
    if (card_index >= game.cards.size()) {
      throw ValidationError("no card " + std::to_string(card_index));
    }
    if (clues.empty() || clues.size() > kMaxClues) {
      throw ValidationError("a card has 1 to 10 clues");
    }
    const Card &card = game.cards[card_index];
    editor = game.editor;
    for (const Clue &clue : clues) {
      std::string text(Trim(clue.text));
      if (text.empty()) throw ValidationError("empty clue");
      text = MaskWord(text, card.secret_word);
      for (const std::string &synonym : card.synonyms) text = MaskWord(text, synonym);
      masked.push_back({text, clue.source});
    }
  }

  for (const Clue &clue : clues) {
    if (clue.source == ClueSource::kSuggested) continue;
    store_.SubmitText(kClueActivity, clue.text, editor);
  }

  std::lock_guard<std::mutex> lock(mu_);
  GameInstance &game = Find(game_id);
  game.cards.at(card_index).clues = std::move(masked);
  game.step = 5;
  return game;
}

void GameService::ValidateCards(const GameInstance &game, bool require_clues) const {
  if (game.topics.empty()) throw ValidationError("game has no topics");
  for (const std::string &topic : game.topics) {
    bool has_card = std::any_of(game.cards.begin(), game.cards.end(),
                                [&](const Card &c) { return c.topic == topic; });
    if (!has_card) throw ValidationError("topic '" + topic + "' has no card");
  }
  for (const Card &card : game.cards) {
    if (!require_clues) continue;
    if (card.clues.empty() || card.clues.size() > kMaxClues) {
      throw ValidationError("card '" + card.secret_word + "' needs 1 to 10 clues");
    }
    for (const Clue &clue : card.clues) {
      if (ContainsWordIgnoreCase(clue.text, card.secret_word)) {
        throw ValidationError("a clue of card '" + card.secret_word +
                              "' gives the secret word away");
      }
    }
  }
}

GameInstance GameService::Review(const std::string &game_id) {
  std::lock_guard<std::mutex> lock(mu_);
  GameInstance &game = Find(game_id);
  BeginStep(game, 6);
  ValidateCards(game, true);
  game.step = 6;
  return game;
}

GameInstance GameService::Publish(const std::string &game_id) {
  std::lock_guard<std::mutex> lock(mu_);
  GameInstance &game = Find(game_id);
  BeginStep(game, 7);
  if (game.step != 6) throw StateError("publish needs the review step first");
  ValidateCards(game, true);
  game.step = 7;
  game.state = GameState::kPublished;
  return game;
}

std::vector<std::string> GameService::ResolveWord(const ConceptNet &net,
                                                  std::string_view word) const {
  std::set<std::string> nodes;
  for (std::string &n : ResolveConcept(net, word)) nodes.insert(std::move(n));
  std::vector<TaggedToken> normalized = NormalizePhrase(ToLower(word), *morphology_);
  if (!normalized.empty()) {
    for (std::string &n : ResolveConcept(net, FormatTagged(normalized))) {
      nodes.insert(std::move(n));
    }
    for (std::string &n : ResolveConcept(net, FormatLemmas(normalized))) {
      nodes.insert(std::move(n));
    }
  }
  return {nodes.begin(), nodes.end()};
}

std::vector<Suggestion> GameService::SuggestClues(
    std::string_view secret_word, const std::vector<std::string> &synonyms,
    const ConceptNet &net) const {
  std::vector<std::string> words{std::string(secret_word)};
  words.insert(words.end(), synonyms.begin(), synonyms.end());

  std::vector<std::string> nodes;
  for (const std::string &w : words) {
    for (std::string &n : ResolveWord(net, w)) nodes.push_back(std::move(n));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.empty()) return {};

  std::map<std::string, double> context;
  for (const ScoredConcept &s : GetContext(nodes, net)) context[s.name] = s.score;

  struct Ranked {
    Suggestion suggestion;
    double context = 0.0;
  };
  std::map<std::string, Ranked> by_sentence;
  for (const std::string &node : nodes) {
    for (const NodeEntry &entry : DisplayNode(node, net, templates_, registry_)) {
      const Relation &r = entry.relation;
      const std::string &other = r.param1 == node ? r.param2 : r.param1;
      Ranked ranked{{entry.sentence, r.Key(), r.f + r.i}, context[other]};
      auto [it, inserted] = by_sentence.emplace(entry.sentence, ranked);
      if (!inserted && ranked.suggestion.weight > it->second.suggestion.weight) {
        it->second = ranked;
      }
    }
  }
  std::vector<Ranked> ranked;
  for (auto &entry : by_sentence) ranked.push_back(std::move(entry.second));
  std::sort(ranked.begin(), ranked.end(), [](const Ranked &a, const Ranked &b) {
    if (a.suggestion.weight != b.suggestion.weight) {
      return a.suggestion.weight > b.suggestion.weight;
    }
    if (a.context != b.context) return a.context > b.context;
    return a.suggestion.sentence < b.suggestion.sentence;
  });
  std::vector<Suggestion> out;
  for (Ranked &r : ranked) out.push_back(std::move(r.suggestion));
  return out;
}

std::vector<Suggestion> GameService::SuggestClues(const std::string &game_id,
                                                  size_t card) const {
  Card chosen;
  ConceptNetHandle net;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const GameInstance &game = Find(game_id);
    if (card >= game.cards.size()) {
      throw ValidationError("no card " + std::to_string(card));
    }
    chosen = game.cards[card];
    auto it = networks_.find(game_id);
    if (it == networks_.end()) return {};
    net = it->second;
  }
  return SuggestClues(chosen.secret_word, chosen.synonyms, *net);
}

std::vector<Statement> GameService::RecordSynonyms(
    std::string_view secret_word, const std::vector<std::string> &synonyms,
    const ProfileAttrs &editor) {
  std::string secret(Trim(secret_word));
  if (secret.empty()) throw ValidationError("empty secret word");
  if (synonyms.empty()) throw ValidationError("no synonyms");
  std::set<std::string> seen{ToLower(secret)};
  std::vector<std::string> cleaned;
  for (const std::string &s : synonyms) {
    std::string synonym(Trim(s));
    if (synonym.empty()) throw ValidationError("empty synonym");
    if (!seen.insert(ToLower(synonym)).second) {
      throw ValidationError("duplicate synonym: " + synonym);
    }
    cleaned.push_back(synonym);
  }

  std::vector<Statement> out;
  for (const std::string &synonym : cleaned) {
    out.push_back(store_.SubmitText(
        kSynonymActivity, FillPattern(options_.synonym_pattern, secret, synonym),
        editor));
  }
  for (size_t a = 0; a < cleaned.size(); ++a) {
    for (size_t b = a + 1; b < cleaned.size(); ++b) {
      out.push_back(store_.SubmitText(
          kSynonymActivity,
          FillPattern(options_.synonym_pattern, cleaned[a], cleaned[b]), editor));
    }
  }
  return out;
}

std::string GameService::RollDice(const std::string &game_id) {
  std::lock_guard<std::mutex> lock(mu_);
  const GameInstance &game = Find(game_id);
  if (game.state != GameState::kPublished) {
    throw StateError("game " + game_id + " is not published");
  }
  std::uniform_int_distribution<size_t> face(0, game.topics.size() - 1);
  return game.topics[face(rng_)];
}

PlaySession GameService::StartSession(const std::string &game_id,
                                      const ProfileAttrs &player) {
  std::lock_guard<std::mutex> lock(mu_);
  const GameInstance &game = Find(game_id);
  if (game.state != GameState::kPublished) {
    throw StateError("game " + game_id + " is not published");
  }
  PlaySession session;
  session.id = "s" + std::to_string(next_session_++);
  session.game_id = game_id;
  session.player = player;
  sessions_[session.id] = session;
  return session;
}

PlaySession GameService::GetSession(const std::string &session_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw NotFoundError("no session " + session_id);
  return it->second;
}

PlaySession GameService::Roll(const std::string &session_id) {
  std::string game_id;
  {
    std::lock_guard<std::mutex> lock(mu_);
    game_id = FindSession(session_id).game_id;
  }
  std::string topic = RollDice(game_id);
  std::lock_guard<std::mutex> lock(mu_);
  const GameInstance &game = Find(game_id);
  std::vector<size_t> cards;
  for (size_t k = 0; k < game.cards.size(); ++k) {
    if (game.cards[k].topic == topic) cards.push_back(k);
  }
  std::uniform_int_distribution<size_t> pick(0, cards.size() - 1);
  PlaySession &session = FindSession(session_id);
  session.topic = topic;
  session.card = cards[pick(rng_)];
  session.revealed.clear();
  return session;
}

std::string GameService::RevealClue(const std::string &session_id, int index) {
  std::lock_guard<std::mutex> lock(mu_);
  PlaySession &session = FindSession(session_id);
  if (!session.card) throw StateError("roll the dice before revealing clues");
  const Card &card = Find(session.game_id).cards[*session.card];
  if (index < 1 || static_cast<size_t>(index) > card.clues.size()) {
    throw ValidationError("clue " + std::to_string(index) + " out of range 1.." +
                          std::to_string(card.clues.size()));
  }
  if (std::find(session.revealed.begin(), session.revealed.end(), index) !=
      session.revealed.end()) {
    throw StateError("clue " + std::to_string(index) + " already revealed");
  }
  session.revealed.push_back(index);
  return card.clues[index - 1].text;
}

std::string GameService::GuessKey(std::string_view text) const {
  return LemmaKey(Trim(text), *morphology_);
}

Guess GameService::SubmitGuess(const std::string &session_id, std::string_view text) {
  std::string guess_text(Trim(text));
  if (guess_text.empty()) throw ValidationError("empty guess");
  if (guess_text.find("$$") != std::string::npos || guess_text.find('\n') != std::string::npos) {
    throw ValidationError("guess contains reserved characters");
  }

  Guess guess;
  guess.text = guess_text;
  ProfileAttrs player;
  std::vector<std::string> clue_texts;
  {
    std::lock_guard<std::mutex> lock(mu_);
    PlaySession &session = FindSession(session_id);
    if (!session.card) throw StateError("roll the dice before guessing");
    if (session.revealed.size() < options_.min_revealed_for_guess) {
      throw StateError("reveal a clue before guessing");
    }
    const Card &card = Find(session.game_id).cards[*session.card];
    std::string key = GuessKey(guess_text);
    bool correct = key == GuessKey(card.secret_word);
    for (const std::string &s : card.synonyms) correct = correct || key == GuessKey(s);
    guess.outcome = correct ? GuessOutcome::kCorrect : GuessOutcome::kOpen;
    guess.revealed = session.revealed;
    player = session.player;
    for (int index : session.revealed) clue_texts.push_back(card.clues[index - 1].text);
  }

  for (const std::string &clue : clue_texts) {
    Statement s = store_.SubmitText(kPlayActivity,
                                    guess_text + options_.play_separator + clue, player);
    guess.records.push_back(s.id);
  }

  std::lock_guard<std::mutex> lock(mu_);
  FindSession(session_id).guesses.push_back(guess);
  return guess;
}

size_t GameService::game_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return games_.size();
}

}  // namespace cskb
