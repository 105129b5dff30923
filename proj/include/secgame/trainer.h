// Copyright 2026 The secgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Training orchestration: rollout collection, evaluation, learning against
// a static opponent, and dual learning in self-play with an opponent pool.

#ifndef SECGAME_TRAINER_H_
#define SECGAME_TRAINER_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "secgame/policies.h"
#include "secgame/rl.h"
#include "secgame/scenarios.h"

namespace secgame {

enum class StaticRole { kNone, kAttacker, kDefender };
std::string StaticRoleName(StaticRole role);
StaticRole StaticRoleFromName(const std::string& name);

enum class PermuteMode { kOff, kRun, kEpisode };
std::string PermuteModeName(PermuteMode mode);
PermuteMode PermuteModeFromName(const std::string& name);

// Archive of frozen policy snapshots used as training opponents. Snapshots
// are deep copies hashed at insertion; per-role lists keep insertion order
// and evict the oldest entry past max_size.
class OpponentPool {
 public:
  OpponentPool(std::size_t max_size, double sample_p);

  void Insert(const Policy& policy);

  // With probability sample_p returns a uniformly drawn snapshot of the
  // given role (nullptr when the coin or an empty pool says "use the
  // current opponent"). Always consumes exactly one Bernoulli draw.
  const Policy* MaybeSample(Role role, Rng& rng) const;

  std::size_t size(Role role) const;
  std::uint64_t InsertTimeHash(Role role, std::size_t index) const;
  std::uint64_t CurrentHash(Role role, std::size_t index) const;

 private:
  struct Entry {
    std::unique_ptr<Policy> policy;
    std::uint64_t hash = 0;
  };
  const std::vector<Entry>& entries(Role role) const;
  std::vector<Entry>& entries(Role role);

  std::vector<Entry> attackers_;
  std::vector<Entry> defenders_;
  std::size_t max_size_;
  double sample_p_;
};

std::uint64_t PolicyHash(const Policy& policy);

struct EvalResult {
  int attacker_wins = 0;
  int defender_wins = 0;
  int draws = 0;
  double mean_length = 0.0;
};

// Plays n_games fresh games with stochastic action sampling; every game
// owns rng streams derived from (seed, game index).
EvalResult Evaluate(const Policy& attacker, const Policy& defender,
                    const ScenarioSpec& scenario, int n_games,
                    std::uint64_t seed, int max_rounds);

struct RolloutOptions {
  int batch_size = 2000;
  int max_rounds = 100;
  bool permute_each_episode = false;
  Rng* permute_rng = nullptr;  // required when permute_each_episode
};

// Plays whole episodes until at least batch_size steps were gathered (the
// final episode always completes), recording both agents' perspectives.
// Throws if a policy returns an illegal action, naming the policy.
std::pair<RolloutBatch, RolloutBatch> CollectRollout(
    const ScenarioSpec& scenario, const Policy& attacker,
    const Policy& defender, const RolloutOptions& options, Rng& env_rng,
    Rng& attacker_rng, Rng& defender_rng);

struct TrainingRow {
  int iteration = 0;
  double attacker_win_ratio = 0.0;
  double defender_win_ratio = 0.0;
  double draw_ratio = 0.0;
  double mean_episode_len = 0.0;
  double attacker_policy_loss = 0.0;
  double attacker_value_loss = 0.0;
  double attacker_entropy = 0.0;
  double defender_policy_loss = 0.0;
  double defender_value_loss = 0.0;
  double defender_entropy = 0.0;
  double wallclock_s = 0.0;
};
using TrainingCurve = std::vector<TrainingRow>;

// Configuration of a single training run (one seed).
struct RunConfig {
  ScenarioSpec scenario;
  Algo attacker_algo = Algo::kPpoAr;
  Algo defender_algo = Algo::kPpoAr;
  StaticRole static_role = StaticRole::kNone;
  // "defend-minimal", "attack-maximal", "random", "recon-only" or a
  // checkpoint path; empty selects the default heuristic for the role.
  std::string static_policy_spec;
  int iterations = 1;
  std::uint64_t seed = 0;
  Hyperparams hp;
  int eval_games = 100;
  PermuteMode permute = PermuteMode::kRun;
  bool eval_on_permuted = false;
  int checkpoint_interval = 0;   // additionally checkpoints every K iters
  std::string checkpoint_dir;    // empty disables checkpointing
  bool record_wallclock = true;
  // Called after every iteration; used to stream curve rows to disk.
  std::function<void(const TrainingRow&)> on_row;
};

std::unique_ptr<Policy> MakePolicyFromSpec(const std::string& spec, Role role);

// Mutable learner bundle: the acting policy plus its optimizer state.
struct Learner {
  Role role = Role::kAttacker;
  Algo algo = Algo::kPpo;
  std::unique_ptr<Policy> policy;
  AdamState adam_primary;  // flat net, or the node net for ppo-ar
  AdamState adam_type;     // type net for ppo-ar

  UpdateReport Update(const RolloutBatch& batch, const Hyperparams& hp);
};

Learner MakeLearner(Role role, Algo algo, const ScenarioSpec& scenario,
                    const Hyperparams& hp, std::uint64_t init_seed);

// One agent learns against a fixed heuristic opponent: collect, update,
// evaluate, one curve row per iteration.
TrainingCurve TrainVsStatic(const RunConfig& config);

// Both agents learn; rollout opponents are drawn from the pool with
// probability pool_sample_p, snapshots are added every pool_increment_iters
// iterations, and evaluation always pits the two current policies.
TrainingCurve TrainSelfplay(const RunConfig& config);

}  // namespace secgame

#endif  // SECGAME_TRAINER_H_
