#include "padlock/sharing.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace padlock {

namespace {

long long mod_pow(long long base, long long exp, long long q) {
  long long result = 1 % q;
  base %= q;
  while (exp > 0) {
    if (exp & 1) result = result * base % q;
    base = base * base % q;
    exp >>= 1;
  }
  return result;
}

long long mod_inverse(long long a, long long q) {
  // q prime and a not divisible by q.
  return mod_pow((a % q + q) % q, q - 2, q);
}

long long eval_poly(const std::vector<long long>& coeffs, long long x, long long q) {
  long long acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = (acc * x + *it) % q;
  return acc;
}

std::string child_path(const std::string& prefix, int slot) {
  if (prefix.empty()) return std::to_string(slot);
  return prefix + "." + std::to_string(slot);
}

// Gate slots after weighted expansion: slot index -> child node.
std::vector<int> expanded_slots(const DeviceCircuit::Node& gate) {
  std::vector<int> slots;
  if (gate.kind == DeviceCircuit::NodeKind::Threshold) {
    slots = gate.children;
  } else {
    for (size_t j = 0; j < gate.children.size(); ++j)
      for (int r = 0; r < gate.weights[j]; ++r) slots.push_back(gate.children[j]);
  }
  return slots;
}

struct Dealer {
  const DeviceCircuit& circuit;
  long long q;
  const std::function<long long()>& draw;
  DealResult out;

  void deal_gate(int node_idx, long long secret, const std::string& prefix) {
    const auto& node = circuit.nodes()[static_cast<size_t>(node_idx)];
    if (node.kind == DeviceCircuit::NodeKind::Lock) {
      // A bare-leaf circuit acts as a 1-of-1 gate around that padlock.
      emit_slot(node_idx, secret, prefix, 0);
      return;
    }
    const std::vector<int> slots = expanded_slots(node);
    std::vector<long long> coeffs = {secret % q};
    for (int j = 1; j < node.required; ++j) {
      long long c = draw();
      out.transcript.push_back(c);
      coeffs.push_back(c);
    }
    for (size_t s = 0; s < slots.size(); ++s) {
      const long long value = eval_poly(coeffs, static_cast<long long>(s) + 1, q);
      const int child = slots[s];
      const auto& child_node = circuit.nodes()[static_cast<size_t>(child)];
      if (child_node.kind == DeviceCircuit::NodeKind::Lock)
        out.records.push_back({child_node.lock, child_path(prefix, static_cast<int>(s)),
                               static_cast<long long>(s) + 1, value});
      else
        deal_gate(child, value, child_path(prefix, static_cast<int>(s)));
    }
  }

  void emit_slot(int leaf_idx, long long secret, const std::string& prefix, int slot) {
    const auto& leaf = circuit.nodes()[static_cast<size_t>(leaf_idx)];
    out.records.push_back({leaf.lock, child_path(prefix, slot), slot + 1, secret % q});
  }
};

long long lagrange_at_zero(const std::vector<std::pair<long long, long long>>& points,
                           long long q) {
  long long acc = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    long long num = 1, den = 1;
    for (size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      num = num * (points[j].first % q) % q;
      long long d = ((points[j].first - points[i].first) % q + q) % q;
      den = den * d % q;
    }
    long long term = points[i].second % q * num % q * mod_inverse(den, q) % q;
    acc = (acc + term) % q;
  }
  return acc;
}

}  // namespace

bool is_prime(long long q) {
  if (q < 2) return false;
  for (long long d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

long long min_field_size(const DeviceCircuit& circuit) {
  // A 1-of-m gate deals a constant polynomial, so its children need no
  // distinct evaluation points; only gates that interpolate (m >= 2) force
  // the field to cover their expanded fan-in.
  long long fan = 1;
  for (const auto& node : circuit.nodes()) {
    if (node.kind == DeviceCircuit::NodeKind::Lock || node.required < 2)
      continue;
    long long slots = 0;
    if (node.kind == DeviceCircuit::NodeKind::Threshold)
      slots = static_cast<long long>(node.children.size());
    else
      for (int w : node.weights) slots += w;
    fan = std::max(fan, slots);
  }
  long long q = fan + 1;
  while (!is_prime(q)) ++q;
  return q;
}

DealResult deal(const DeviceCircuit& circuit, long long secret, long long q,
                const std::function<long long()>& draw) {
  if (!is_prime(q)) throw std::invalid_argument("field size must be prime");
  if (q < min_field_size(circuit))
    throw CapacityError("field too small for the largest gate fan-in");
  if (secret < 0 || secret >= q)
    throw std::invalid_argument("secret must lie in [0, q)");
  if (circuit.root() < 0) throw CircuitError("circuit has no root");
  Dealer dealer{circuit, q, draw, {}};
  dealer.out.q = q;
  dealer.deal_gate(circuit.root(), secret, "");
  return std::move(dealer.out);
}

DealResult deal_seeded(const DeviceCircuit& circuit, long long secret,
                       long long q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::function<long long()> draw = [&rng, q]() {
    return static_cast<long long>(rng() % static_cast<std::uint64_t>(q));
  };
  return deal(circuit, secret, q, draw);
}

DealResult replay(const DeviceCircuit& circuit, long long secret, long long q,
                  const std::vector<long long>& transcript) {
  size_t cursor = 0;
  std::function<long long()> draw = [&]() {
    if (cursor >= transcript.size())
      throw std::invalid_argument("transcript shorter than the dealing needs");
    return transcript[cursor++];
  };
  DealResult result = deal(circuit, secret, q, draw);
  if (cursor != transcript.size())
    throw std::invalid_argument("transcript longer than the dealing needs");
  return result;
}

namespace {

struct Reconstructor {
  const DeviceCircuit& circuit;
  long long q;
  const std::map<std::string, std::pair<long long, long long>>& by_path;

  std::optional<long long> resolve(int node_idx, const std::string& prefix) {
    const auto& node = circuit.nodes()[static_cast<size_t>(node_idx)];
    if (node.kind == DeviceCircuit::NodeKind::Lock) {
      auto it = by_path.find(child_path(prefix, 0));
      if (it == by_path.end()) return std::nullopt;
      return it->second.second;
    }
    const std::vector<int> slots = expanded_slots(node);
    std::vector<std::pair<long long, long long>> points;
    for (size_t s = 0; s < slots.size() &&
                       static_cast<int>(points.size()) < node.required;
         ++s) {
      const int child = slots[s];
      const auto& child_node = circuit.nodes()[static_cast<size_t>(child)];
      std::optional<long long> value;
      if (child_node.kind == DeviceCircuit::NodeKind::Lock) {
        auto it = by_path.find(child_path(prefix, static_cast<int>(s)));
        if (it != by_path.end()) value = it->second.second;
      } else {
        value = resolve(child, child_path(prefix, static_cast<int>(s)));
      }
      if (value) points.emplace_back(static_cast<long long>(s) + 1, *value);
    }
    if (static_cast<int>(points.size()) < node.required) return std::nullopt;
    return lagrange_at_zero(points, q);
  }
};

}  // namespace

std::optional<long long> reconstruct(const DeviceCircuit& circuit,
                                     const std::vector<ShareRecord>& records,
                                     long long q) {
  if (!is_prime(q)) throw std::invalid_argument("field size must be prime");
  std::map<std::string, std::pair<long long, long long>> by_path;
  for (const ShareRecord& r : records) {
    auto [it, fresh] = by_path.emplace(r.path, std::make_pair(r.point, r.value));
    if (!fresh && it->second.second != r.value)
      throw IntegrityError("conflicting share values at path " + r.path);
  }
  // The dealt root secret lives at the root gate; a bare-leaf root is its own
  // 1-of-1 gate.
  Reconstructor rec{circuit, q, by_path};
  const auto& root = circuit.nodes()[static_cast<size_t>(circuit.root())];
  if (root.kind == DeviceCircuit::NodeKind::Lock) {
    auto it = by_path.find("0");
    if (it == by_path.end()) return std::nullopt;
    return it->second.second;
  }
  return rec.resolve(circuit.root(), "");
}

std::vector<ShareRecord> records_for_coalition(
    const ThresholdSystem& system, const DealResult& dealt,
    const std::vector<Participant>& coalition) {
  OpenSet opened(system.padlocks);
  for (Participant p : coalition) {
    if (p < 0 || p >= system.participants())
      throw std::out_of_range("participant index out of range");
    for (PadlockId id : system.keys_of(p)) opened.open(id);
  }
  std::vector<ShareRecord> out;
  for (const ShareRecord& r : dealt.records)
    if (opened.contains(r.padlock)) out.push_back(r);
  return out;
}

bool privacy_check(const DeviceCircuit& circuit, long long q,
                   const std::vector<PadlockId>& unauthorized,
                   long long budget) {
  if (!is_prime(q)) throw std::invalid_argument("field size must be prime");

  // Count the coefficients one dealing consumes.
  long long coeff_count = 0;
  {
    std::function<long long()> draw = [&]() {
      ++coeff_count;
      return 0;
    };
    deal(circuit, 0, q, draw);
  }
  long long runs = q;  // secrets
  for (long long i = 0; i < coeff_count; ++i) {
    if (runs > budget / q) throw CapacityError("privacy enumeration exceeds the budget");
    runs *= q;
  }

  std::vector<char> visible(static_cast<size_t>(circuit.max_lock()) + 1, 0);
  for (PadlockId id : unauthorized) visible.at(static_cast<size_t>(id)) = 1;

  std::map<std::vector<long long>, long long> reference;
  for (long long secret = 0; secret < q; ++secret) {
    std::map<std::vector<long long>, long long> seen;
    std::vector<long long> digits(static_cast<size_t>(coeff_count), 0);
    while (true) {
      DealResult dealt = replay(circuit, secret, q, digits);
      std::vector<long long> view;
      for (const ShareRecord& r : dealt.records)
        if (visible[static_cast<size_t>(r.padlock)]) view.push_back(r.value);
      ++seen[view];
      // Odometer over all coefficient tuples.
      size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
      if (pos == digits.size() && !digits.empty()) break;
      if (digits.empty()) break;
    }
    if (secret == 0)
      reference = std::move(seen);
    else if (seen != reference)
      return false;
  }
  return true;
}

}  // namespace padlock
