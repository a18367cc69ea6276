#include "padlock/core.hpp"

#include <algorithm>
#include <numeric>

namespace padlock {

int DeviceCircuit::add_lock(PadlockId id) {
  if (id < 0) throw CircuitError("padlock id must be non-negative");
  Node n;
  n.kind = NodeKind::Lock;
  n.lock = id;
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

void DeviceCircuit::check_children(const std::vector<int>& children) const {
  if (children.empty()) throw CircuitError("gate needs at least one child");
  const int self = static_cast<int>(nodes_.size());
  for (int c : children) {
    if (c < 0 || c >= self)
      throw CircuitError("gate child must be an already created node");
  }
}

int DeviceCircuit::add_threshold(int m, std::vector<int> children) {
  check_children(children);
  if (m < 1 || m > static_cast<int>(children.size()))
    throw CircuitError("threshold m out of range 1..children");
  Node n;
  n.kind = NodeKind::Threshold;
  n.required = m;
  n.children = std::move(children);
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

int DeviceCircuit::add_weighted(int required_weight, std::vector<int> weights,
                                std::vector<int> children) {
  check_children(children);
  if (weights.size() != children.size())
    throw CircuitError("one weight per child required");
  long long total = 0;
  for (int w : weights) {
    if (w < 1) throw CircuitError("weights must be positive");
    total += w;
  }
  if (required_weight < 1 || required_weight > total)
    throw CircuitError("required weight out of range 1..sum(weights)");
  Node n;
  n.kind = NodeKind::WeightedThreshold;
  n.required = required_weight;
  n.children = std::move(children);
  n.weights = std::move(weights);
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

void DeviceCircuit::set_root(int node) {
  if (node < 0 || node >= static_cast<int>(nodes_.size()))
    throw CircuitError("root must reference an existing node");
  root_ = node;
}

PadlockId DeviceCircuit::max_lock() const {
  PadlockId m = -1;
  for (const Node& n : nodes_)
    if (n.kind == NodeKind::Lock) m = std::max(m, n.lock);
  return m;
}

std::vector<PadlockId> DeviceCircuit::locks() const {
  std::vector<PadlockId> ids;
  for (const Node& n : nodes_)
    if (n.kind == NodeKind::Lock) ids.push_back(n.lock);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

long long DeviceCircuit::max_fan_in() const {
  long long best = 0;
  for (const Node& n : nodes_) {
    if (n.kind == NodeKind::Threshold) {
      best = std::max(best, static_cast<long long>(n.children.size()));
    } else if (n.kind == NodeKind::WeightedThreshold) {
      best = std::max(best, std::accumulate(n.weights.begin(), n.weights.end(),
                                            0LL));
    }
  }
  return best;
}

void validate_system(const ThresholdSystem& system) {
  if (system.padlocks < 1) throw CircuitError("system needs >= 1 padlock");
  if (system.circuit.root() < 0) throw CircuitError("circuit has no root");
  if (system.distribution.participants !=
      static_cast<int>(system.distribution.keys.size()))
    throw CircuitError("key distribution size does not match n");

  if (system.circuit.max_lock() >= system.padlocks)
    throw CircuitError("circuit references an undeclared padlock");

  std::vector<char> owned(static_cast<size_t>(system.padlocks), 0);
  for (const auto& ks : system.distribution.keys) {
    if (ks.empty()) throw CircuitError("every participant needs >= 1 key");
    for (PadlockId id : ks) {
      if (id < 0 || id >= system.padlocks)
        throw CircuitError("key references an undeclared padlock");
      owned[static_cast<size_t>(id)] = 1;
    }
  }
  for (char o : owned)
    if (!o) throw CircuitError("padlock owned by no participant");
}

namespace detail {

bool evaluate_with_scratch(const DeviceCircuit& circuit, const OpenSet& opened,
                           std::vector<char>& scratch) {
  const auto& nodes = circuit.nodes();
  if (circuit.root() < 0) throw CircuitError("circuit has no root");
  scratch.assign(nodes.size(), 0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    switch (n.kind) {
      case DeviceCircuit::NodeKind::Lock: {
        if (n.lock >= opened.capacity())
          throw CircuitError("circuit references an undeclared padlock");
        scratch[i] = opened.contains(n.lock) ? 1 : 0;
        break;
      }
      case DeviceCircuit::NodeKind::Threshold: {
        int open_children = 0;
        for (int c : n.children) open_children += scratch[static_cast<size_t>(c)];
        scratch[i] = open_children >= n.required ? 1 : 0;
        break;
      }
      case DeviceCircuit::NodeKind::WeightedThreshold: {
        long long open_weight = 0;
        for (size_t j = 0; j < n.children.size(); ++j)
          if (scratch[static_cast<size_t>(n.children[j])]) open_weight += n.weights[j];
        scratch[i] = open_weight >= n.required ? 1 : 0;
        break;
      }
    }
  }
  return scratch[static_cast<size_t>(circuit.root())] != 0;
}

}  // namespace detail

bool evaluate(const DeviceCircuit& circuit, const OpenSet& opened) {
  std::vector<char> scratch;
  return detail::evaluate_with_scratch(circuit, opened, scratch);
}

bool coalition_open(const ThresholdSystem& system,
                    const std::vector<Participant>& coalition) {
  OpenSet opened(system.padlocks);
  for (Participant p : coalition) {
    if (p < 0 || p >= system.participants())
      throw std::out_of_range("participant index out of range");
    for (PadlockId id : system.keys_of(p)) opened.open(id);
  }
  return evaluate(system.circuit, opened);
}

bool coalition_open_mask(const ThresholdSystem& system,
                         std::uint32_t coalition_mask) {
  OpenSet opened(system.padlocks);
  const int n = system.participants();
  for (int p = 0; p < n; ++p)
    if (coalition_mask & (std::uint32_t{1} << p))
      for (PadlockId id : system.keys_of(p)) opened.open(id);
  if (n < 32 && (coalition_mask >> n) != 0)
    throw std::out_of_range("participant index out of range");
  return evaluate(system.circuit, opened);
}

AccessStructure realized_access_structure(const ThresholdSystem& system,
                                          int limit) {
  const int n = system.participants();
  if (n > limit || n > 25)
    throw CapacityError("participant count exceeds the enumeration limit");

  std::vector<char> scratch;
  OpenSet opened(system.padlocks);
  auto open_mask = [&](std::uint32_t mask) {
    opened.clear();
    for (int p = 0; p < n; ++p)
      if (mask & (std::uint32_t{1} << p))
        for (PadlockId id : system.keys_of(p)) opened.open(id);
    return detail::evaluate_with_scratch(system.circuit, opened, scratch);
  };

  AccessStructure result;
  result.participants = n;
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t mask = 0; mask <= all; ++mask) {
    if (!open_mask(mask)) continue;
    // By monotonicity a coalition is minimal iff dropping any one member
    // closes the door.
    bool minimal = true;
    for (int p = 0; p < n && minimal; ++p) {
      const std::uint32_t bit = std::uint32_t{1} << p;
      if ((mask & bit) && open_mask(mask ^ bit)) minimal = false;
    }
    if (minimal) result.minimal.push_back(mask);
  }
  return result;
}

int padlock_count(const ThresholdSystem& system) { return system.padlocks; }

int key_count(const ThresholdSystem& system) {
  int total = 0;
  for (const auto& ks : system.distribution.keys)
    total += static_cast<int>(ks.size());
  return total;
}

int rank(const ThresholdSystem& system) {
  size_t best = 0;
  for (const auto& ks : system.distribution.keys) best = std::max(best, ks.size());
  return static_cast<int>(best);
}

ThresholdSystem restrict_participants(const ThresholdSystem& system, int m) {
  if (m < 1 || m > system.participants())
    throw std::out_of_range("cannot restrict to that many participants");
  ThresholdSystem out;
  out.padlocks = system.padlocks;
  out.circuit = system.circuit;
  out.distribution.participants = m;
  out.distribution.keys.assign(system.distribution.keys.begin(),
                               system.distribution.keys.begin() + m);
  validate_system(out);
  return out;
}

}  // namespace padlock
