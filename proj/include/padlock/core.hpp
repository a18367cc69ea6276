#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace padlock {

/// Padlocks and participants are dense 0-based indices, which keeps
/// coalition enumeration a plain bitset walk.
using PadlockId = int;
using Participant = int;

/// Enumeration over 2^n coalitions is refused above this many participants
/// unless the caller raises the limit explicitly.
inline constexpr int kDefaultEnumerationLimit = 20;

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which padlocks are currently open, over ids 0..padlocks-1.
class OpenSet {
 public:
  explicit OpenSet(int padlocks) : bits_(static_cast<size_t>(padlocks), 0) {}

  static OpenSet of(int padlocks, const std::vector<PadlockId>& ids) {
    OpenSet s(padlocks);
    for (PadlockId id : ids) s.open(id);
    return s;
  }

  void open(PadlockId id) { bits_.at(static_cast<size_t>(id)) = 1; }
  bool contains(PadlockId id) const {
    return id >= 0 && static_cast<size_t>(id) < bits_.size() &&
           bits_[static_cast<size_t>(id)] != 0;
  }
  int capacity() const { return static_cast<int>(bits_.size()); }
  void clear() { bits_.assign(bits_.size(), 0); }

 private:
  std::vector<char> bits_;
};

/// Monotone DAG of threshold gates over padlock leaves.
///
/// Nodes live in an arena; children always have smaller indices than their
/// parent, so the structure is acyclic by construction and a single forward
/// pass evaluates it. A leaf shared by several gates models one chain
/// blocking several latches.
class DeviceCircuit {
 public:
  enum class NodeKind : std::uint8_t { Lock, Threshold, WeightedThreshold };

  struct Node {
    NodeKind kind = NodeKind::Lock;
    PadlockId lock = -1;         // Lock only
    int required = 0;            // m for Threshold, W for WeightedThreshold
    std::vector<int> children;   // gates only; indices < own index
    std::vector<int> weights;    // WeightedThreshold only, aligned with children
  };

  int add_lock(PadlockId id);
  int add_threshold(int m, std::vector<int> children);
  int add_weighted(int required_weight, std::vector<int> weights,
                   std::vector<int> children);
  void set_root(int node);

  const std::vector<Node>& nodes() const { return nodes_; }
  int root() const { return root_; }
  bool empty() const { return nodes_.empty(); }

  /// Largest referenced padlock id, or -1 for an empty circuit.
  PadlockId max_lock() const;
  /// Sorted distinct padlock ids referenced by leaves.
  std::vector<PadlockId> locks() const;
  /// Largest gate fan-in, counting a weight-w child as w slots. 0 if no gate.
  long long max_fan_in() const;

 private:
  void check_children(const std::vector<int>& children) const;

  std::vector<Node> nodes_;
  int root_ = -1;
};

/// participant -> set of padlock ids; owning a padlock's key is membership,
/// duplicated keys of the same padlock are not materialized.
struct KeyDistribution {
  int participants = 0;
  std::vector<std::vector<PadlockId>> keys;  // keys[p], each sorted ascending
};

struct ThresholdSystem {
  int padlocks = 0;
  DeviceCircuit circuit;
  KeyDistribution distribution;

  int participants() const { return distribution.participants; }
  const std::vector<PadlockId>& keys_of(Participant p) const {
    return distribution.keys.at(static_cast<size_t>(p));
  }
};

/// Minimal authorized coalitions as bitmasks, an antichain under inclusion.
struct AccessStructure {
  int participants = 0;
  std::vector<std::uint32_t> minimal;  // sorted ascending
};

/// Throws CircuitError if the system violates a structural invariant
/// (ids out of range, empty key set, unowned padlock, bad distribution size).
void validate_system(const ThresholdSystem& system);

/// True iff the door opens with exactly `opened` unlocked.
/// Monotone in `opened` by construction (no negations exist).
bool evaluate(const DeviceCircuit& circuit, const OpenSet& opened);

bool coalition_open(const ThresholdSystem& system,
                    const std::vector<Participant>& coalition);
/// Coalition given as a bitmask over participants 0..n-1.
bool coalition_open_mask(const ThresholdSystem& system,
                         std::uint32_t coalition_mask);

AccessStructure realized_access_structure(
    const ThresholdSystem& system, int limit = kDefaultEnumerationLimit);

int padlock_count(const ThresholdSystem& system);
/// Total number of distributed keys, with multiplicity.
int key_count(const ThresholdSystem& system);
/// Maximal number of keys owned by any single participant.
int rank(const ThresholdSystem& system);

/// Same circuit and padlocks, first `m` participants only.
ThresholdSystem restrict_participants(const ThresholdSystem& system, int m);

namespace detail {
/// Forward evaluation with a caller-provided scratch buffer, for enumeration
/// loops. scratch is resized as needed.
bool evaluate_with_scratch(const DeviceCircuit& circuit, const OpenSet& opened,
                           std::vector<char>& scratch);
}  // namespace detail

}  // namespace padlock
