#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "padlock/core.hpp"

namespace padlock {

/// Outcome of the two-layer threshold check. Monotonicity of the circuits
/// makes layers k and k-1 sufficient, so only those are enumerated.
/// Counterexamples are the lexicographically smallest offenders.
struct VerificationReport {
  bool verdict = false;
  int k = 0;
  int n = 0;
  int padlocks = 0;
  std::optional<std::vector<Participant>> failing_open;    // size-k coalition that stays closed
  std::optional<std::vector<Participant>> failing_closed;  // size-(k-1) coalition that opens
};

VerificationReport verify_threshold(const ThresholdSystem& system, int k,
                                    int limit = kDefaultEnumerationLimit);

/// Antichain check on the key hypergraph. `offending` is the first ordered
/// pair (a, b) with keys(a) included in keys(b), if any.
struct SpernerReport {
  bool ok = true;
  std::optional<std::pair<Participant, Participant>> offending;
};

SpernerReport check_sperner(const KeyDistribution& distribution);

/// Necessary condition for k >= 3 systems with fewer padlocks than
/// participants: among participants owning only shared keys (a key is shared
/// iff owned by >= 2 participants), every ordered pair must differ in at
/// least k-1 keys and everyone must own at least k keys.
struct NecessaryConditionReport {
  bool ok = true;
  std::vector<Participant> sole_key_owners;   // own at least one unshared key
  std::vector<Participant> shared_only;       // the subgroup actually checked
  std::optional<std::pair<Participant, Participant>> small_difference;
  std::optional<Participant> too_few_keys;
};

NecessaryConditionReport check_necessary_condition(
    const KeyDistribution& distribution, int k);

/// True iff no p-subset of the ground set occurs in more than lambda blocks.
bool check_packing(const std::vector<std::vector<int>>& blocks, int p,
                   int lambda);

using Triad = std::array<int, 3>;

/// Unordered triples of triads whose union has exactly 6 distinct keys,
/// as index triples into `triads`.
std::vector<std::array<int, 3>> six_key_triples(const std::vector<Triad>& triads);
int count_six_key_triples(const std::vector<Triad>& triads);

/// Unordered pairs of triads whose union has exactly 6 distinct keys
/// (i.e. disjoint triads).
std::vector<std::array<int, 2>> six_key_pairs(const std::vector<Triad>& triads);
int count_six_key_pairs(const std::vector<Triad>& triads);

}  // namespace padlock
