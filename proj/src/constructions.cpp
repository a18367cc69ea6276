#include "padlock/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <stdexcept>

namespace padlock {

namespace {

std::vector<int> iota_locks(DeviceCircuit& circuit, int t) {
  std::vector<int> leaves(static_cast<size_t>(t));
  for (int i = 0; i < t; ++i) leaves[static_cast<size_t>(i)] = circuit.add_lock(i);
  return leaves;
}

ThresholdSystem identity_keys_system(int padlocks, DeviceCircuit circuit) {
  ThresholdSystem sys;
  sys.padlocks = padlocks;
  sys.circuit = std::move(circuit);
  sys.distribution.participants = padlocks;
  sys.distribution.keys.resize(static_cast<size_t>(padlocks));
  for (int i = 0; i < padlocks; ++i) sys.distribution.keys[static_cast<size_t>(i)] = {i};
  validate_system(sys);
  return sys;
}

}  // namespace

Formula parse_formula(std::string_view text, Formula::Kind kind) {
  Formula f;
  f.kind = kind;
  const char clause_sep = kind == Formula::Kind::Dnf ? '+' : '*';
  const char wrong_sep = kind == Formula::Kind::Dnf ? '*' : '+';

  std::map<std::string, int> index;
  std::vector<int> clause;
  std::string name;

  auto flush_name = [&] {
    if (name.empty()) return;
    auto [it, fresh] = index.emplace(name, static_cast<int>(f.variables.size()));
    if (fresh) f.variables.push_back(name);
    clause.push_back(it->second);
    name.clear();
  };
  auto flush_clause = [&] {
    flush_name();
    if (clause.empty()) throw std::invalid_argument("formula has an empty clause");
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    f.clauses.push_back(clause);
    clause.clear();
  };

  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush_name();
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      if (name.empty() && std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("variable names must not start with a digit");
      name.push_back(c);
    } else if (c == '.') {
      flush_name();
    } else if (c == clause_sep) {
      flush_clause();
    } else if (c == wrong_sep) {
      throw std::invalid_argument(
          kind == Formula::Kind::Dnf
              ? "'*' is the CNF clause separator; DNF uses '+'"
              : "'+' is the DNF clause separator; CNF uses '*'");
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + c +
                                  "' in formula");
    }
  }
  flush_clause();
  return f;
}

namespace {

CompiledFormula compile_normal_form(const Formula& formula, bool dnf) {
  if (formula.clauses.empty()) throw std::invalid_argument("empty formula");
  CompiledFormula out;
  out.variables = formula.variables;

  DeviceCircuit& c = out.circuit;
  // One shared leaf per variable: a padlock's chain runs through every
  // latch whose clause mentions it.
  std::vector<int> leaf(formula.variables.size());
  for (size_t v = 0; v < formula.variables.size(); ++v)
    leaf[v] = c.add_lock(static_cast<int>(v));

  std::vector<int> clause_nodes;
  for (const auto& clause : formula.clauses) {
    std::vector<int> members;
    for (int v : clause) members.push_back(leaf[static_cast<size_t>(v)]);
    const int size = static_cast<int>(members.size());
    if (size == 1) {
      clause_nodes.push_back(members.front());
    } else {
      clause_nodes.push_back(c.add_threshold(dnf ? size : 1, std::move(members)));
    }
  }
  const int t = static_cast<int>(clause_nodes.size());
  c.set_root(c.add_threshold(dnf ? 1 : t, std::move(clause_nodes)));
  return out;
}

}  // namespace

CompiledFormula compile_dnf(const Formula& formula) {
  if (formula.kind != Formula::Kind::Dnf)
    throw std::invalid_argument("compile_dnf expects a DNF formula");
  return compile_normal_form(formula, true);
}

CompiledFormula compile_cnf(const Formula& formula) {
  if (formula.kind != Formula::Kind::Cnf)
    throw std::invalid_argument("compile_cnf expects a CNF formula");
  return compile_normal_form(formula, false);
}

ThresholdSystem formula_system(const CompiledFormula& compiled) {
  return identity_keys_system(static_cast<int>(compiled.variables.size()),
                              compiled.circuit);
}

ThresholdSystem build_direct(int k, int n) {
  if (k < 1 || n < k) throw std::invalid_argument("need 1 <= k <= n");
  DeviceCircuit c;
  c.set_root(c.add_threshold(k, iota_locks(c, n)));
  return identity_keys_system(n, std::move(c));
}

ThresholdSystem build_2_of_n(int n) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  const long long t64 = sperner_min_t(n);
  const int t = static_cast<int>(t64);
  if (t >= n) return build_direct(2, n);

  const int i = t / 2;
  DeviceCircuit c;
  c.set_root(c.add_threshold(i + 1, iota_locks(c, t)));

  ThresholdSystem sys;
  sys.padlocks = t;
  sys.circuit = std::move(c);
  sys.distribution.participants = n;
  // First n size-i subsets of the keys in lexicographic order: any two
  // distinct ones union to at least i+1 keys.
  std::vector<int> combo(static_cast<size_t>(i));
  for (int j = 0; j < i; ++j) combo[static_cast<size_t>(j)] = j;
  for (int p = 0; p < n; ++p) {
    sys.distribution.keys.push_back(combo);
    int j = i - 1;
    while (j >= 0 && combo[static_cast<size_t>(j)] == t - i + j) --j;
    if (j < 0) break;
    ++combo[static_cast<size_t>(j)];
    for (int l = j + 1; l < i; ++l)
      combo[static_cast<size_t>(l)] = combo[static_cast<size_t>(l - 1)] + 1;
  }
  validate_system(sys);
  return sys;
}

ThresholdSystem build_double_daisy(int n) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  int bits = 1;
  while ((1 << bits) < n) ++bits;

  DeviceCircuit c;
  std::vector<int> links;
  for (int j = 0; j < bits; ++j) {
    int white = c.add_lock(2 * j);
    int black = c.add_lock(2 * j + 1);
    links.push_back(c.add_threshold(2, {white, black}));
  }
  c.set_root(c.add_threshold(1, std::move(links)));

  ThresholdSystem sys;
  sys.padlocks = 2 * bits;
  sys.circuit = std::move(c);
  sys.distribution.participants = n;
  for (int p = 0; p < n; ++p) {
    std::vector<int> keys;
    for (int j = 0; j < bits; ++j) keys.push_back(2 * j + ((p >> j) & 1));
    sys.distribution.keys.push_back(std::move(keys));
  }
  validate_system(sys);
  return sys;
}

ThresholdSystem build_benaloh() {
  DeviceCircuit c;
  int a = c.add_lock(0), b = c.add_lock(1), cc = c.add_lock(2), d = c.add_lock(3);
  int l1 = c.add_threshold(2, {a, b});
  int l2 = c.add_threshold(2, {b, cc});
  int l3 = c.add_threshold(2, {cc, d});
  c.set_root(c.add_threshold(1, {l1, l2, l3}));
  return identity_keys_system(4, std::move(c));
}

ThresholdSystem build_weighted(const std::vector<int>& weights,
                               int required_weight) {
  if (weights.empty()) throw std::invalid_argument("need at least one weight");
  const int n = static_cast<int>(weights.size());
  DeviceCircuit c;
  c.set_root(c.add_weighted(required_weight, weights, iota_locks(c, n)));
  return identity_keys_system(n, std::move(c));
}

std::vector<Triad> bose_triples(int v) {
  if (v < 1) throw std::invalid_argument("need v >= 1");
  const int m = 2 * v + 1;
  const int inv2 = (m + 1) / 2;  // m odd, so 2 * inv2 = m + 1 = 1 (mod m)
  std::vector<Triad> triads;
  triads.reserve(static_cast<size_t>(m) * (3 * m - 1) / 2);
  for (int x = 1; x <= m; ++x) triads.push_back({x, x + m, x + 2 * m});
  for (int x = 1; x <= m; ++x) {
    for (int y = x + 1; y <= m; ++y) {
      const int c = ((x + y) % m * inv2 % m + m - 1) % m;
      for (int k = 0; k < 3; ++k) {
        const int d = (k + 1) % 3;
        triads.push_back({x + k * m, y + k * m, 1 + c + d * m});
      }
    }
  }
  return triads;
}

std::vector<Triad> skolem_triples(int mu) {
  if (mu < 1) throw std::invalid_argument("need mu >= 1");
  const int q = 2 * mu;
  // Half-idempotent commutative quasigroup on 0..2mu-1: even sums map to
  // their halves, odd sums fill the upper half.
  auto op = [&](int i, int j) {
    const int e = (i + j) % q;
    return e % 2 == 0 ? e / 2 : mu + (e - 1) / 2;
  };
  auto pt = [&](int i, int level) { return 1 + i + level * q; };
  const int infinity = 6 * mu + 1;

  std::vector<Triad> triads;
  triads.reserve(static_cast<size_t>(mu) * (6 * mu + 1));
  for (int i = 0; i < mu; ++i) triads.push_back({pt(i, 0), pt(i, 1), pt(i, 2)});
  for (int i = 0; i < mu; ++i)
    for (int k = 0; k < 3; ++k)
      triads.push_back({infinity, pt(mu + i, k), pt(i, (k + 1) % 3)});
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      for (int k = 0; k < 3; ++k)
        triads.push_back({pt(i, k), pt(j, k), pt(op(i, j), (k + 1) % 3)});
  return triads;
}

namespace {

// Point masks over up to 256 points, enough for every system this library
// plans (t grows like sqrt(n)).
struct PointMask {
  std::array<std::uint64_t, 4> w{};
  void set(int bit) { w[static_cast<size_t>(bit) >> 6] |= std::uint64_t{1} << (bit & 63); }
  PointMask operator|(const PointMask& o) const {
    PointMask r;
    for (int i = 0; i < 4; ++i) r.w[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] | o.w[static_cast<size_t>(i)];
    return r;
  }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
};

}  // namespace

ThresholdSystem steiner_3_system(int t, const std::vector<Triad>& triads, int n) {
  if (t > 256) throw CapacityError("triad system order above 256 unsupported");
  if (n < 1 || n > static_cast<int>(triads.size()))
    throw std::invalid_argument("not enough triads for that many participants");

  ThresholdSystem sys;
  sys.padlocks = t;
  sys.distribution.participants = n;
  std::vector<PointMask> masks(static_cast<size_t>(n));
  for (int p = 0; p < n; ++p) {
    const Triad& triad = triads[static_cast<size_t>(p)];
    std::vector<int> keys = {triad[0] - 1, triad[1] - 1, triad[2] - 1};
    std::sort(keys.begin(), keys.end());
    for (int id : keys) masks[static_cast<size_t>(p)].set(id);
    sys.distribution.keys.push_back(std::move(keys));
  }

  DeviceCircuit c;
  std::vector<int> leaves = iota_locks(c, t);
  std::vector<int> latches;
  latches.push_back(c.add_threshold(7, leaves));
  // One conjunctive latch for each triple of distributed triads covering
  // exactly six keys; no pair of triads can assemble such a union.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const PointMask ij = masks[static_cast<size_t>(i)] | masks[static_cast<size_t>(j)];
      for (int l = j + 1; l < n; ++l) {
        const PointMask u = ij | masks[static_cast<size_t>(l)];
        if (u.count() != 6) continue;
        std::vector<int> members;
        for (int id = 0; id < t; ++id)
          if (u.w[static_cast<size_t>(id) >> 6] & (std::uint64_t{1} << (id & 63)))
            members.push_back(leaves[static_cast<size_t>(id)]);
        latches.push_back(c.add_threshold(6, std::move(members)));
      }
    }
  }
  c.set_root(c.add_threshold(1, std::move(latches)));
  sys.circuit = std::move(c);
  validate_system(sys);
  return sys;
}

ThresholdSystem build_3_of_n(int n) {
  if (n < 3) throw std::invalid_argument("need n >= 3");
  const long long t = bose_padlocks(n);
  if (t >= n) return build_direct(3, n);
  const int v = static_cast<int>((t - 3) / 6);
  return steiner_3_system(static_cast<int>(t), bose_triples(v), n);
}

ThresholdSystem fixture_13_participants() {
  // Triads over keys 1..11 without any reused pair.
  const std::vector<Triad> triads = {
      {1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {1, 8, 9},  {1, 10, 11},
      {2, 4, 6}, {2, 5, 7}, {2, 8, 10}, {2, 9, 11},
      {3, 4, 7}, {3, 5, 6}, {3, 8, 11}, {3, 9, 10}};

  ThresholdSystem sys;
  sys.padlocks = 11;
  sys.distribution.participants = 13;
  for (const Triad& triad : triads)
    sys.distribution.keys.push_back({triad[0] - 1, triad[1] - 1, triad[2] - 1});

  DeviceCircuit c;
  std::vector<int> leaves = iota_locks(c, 11);
  int t7 = c.add_threshold(7, leaves);
  int t6 = c.add_threshold(6, leaves);
  int t3 = c.add_threshold(3, {leaves[7], leaves[8], leaves[9], leaves[10]});
  int t5 = c.add_threshold(
      5, {leaves[0], leaves[1], leaves[2], leaves[3], leaves[4], leaves[5], leaves[6]});
  int inner_or = c.add_threshold(1, {t3, t5});
  int conj = c.add_threshold(2, {t6, inner_or});
  c.set_root(c.add_threshold(1, {t7, conj}));
  sys.circuit = std::move(c);
  validate_system(sys);
  return sys;
}

namespace {

// Appends src's nodes to dst with padlock ids shifted by lock_offset;
// returns the index of src's root inside dst.
int import_circuit(DeviceCircuit& dst, const DeviceCircuit& src, int lock_offset) {
  const int base = static_cast<int>(dst.nodes().size());
  for (const auto& node : src.nodes()) {
    std::vector<int> children = node.children;
    for (int& c : children) c += base;
    switch (node.kind) {
      case DeviceCircuit::NodeKind::Lock:
        dst.add_lock(node.lock + lock_offset);
        break;
      case DeviceCircuit::NodeKind::Threshold:
        dst.add_threshold(node.required, std::move(children));
        break;
      case DeviceCircuit::NodeKind::WeightedThreshold:
        dst.add_weighted(node.required, node.weights, std::move(children));
        break;
    }
  }
  return base + src.root();
}

std::vector<int> shifted_keys(const std::vector<int>& keys, int offset) {
  std::vector<int> out = keys;
  for (int& id : out) id += offset;
  return out;
}

ThresholdSystem build_split(const RecursivePlan& plan) {
  const int n = static_cast<int>(plan.n);
  const int n0 = (n + 1) / 2;
  const int n1 = n / 2;

  ThresholdSystem top = build_from_plan(*plan.top);
  std::vector<ThresholdSystem> gs, hs;
  for (const auto& [g, h] : plan.branches) {
    gs.push_back(build_from_plan(*g));
    hs.push_back(build_from_plan(*h));
  }

  ThresholdSystem sys;
  sys.distribution.participants = n;
  sys.distribution.keys.assign(static_cast<size_t>(n), {});

  DeviceCircuit c;
  int offset = 0;
  const int top_root = import_circuit(c, top.circuit, offset);
  // The top system's keys go to both halves positionally; an odd split
  // leaves the supernumerary last member of G unduplicated.
  for (int j = 0; j < n0; ++j)
    sys.distribution.keys[static_cast<size_t>(j)] = shifted_keys(top.keys_of(j), offset);
  for (int h = 0; h < n1; ++h)
    sys.distribution.keys[static_cast<size_t>(n0 + h)] = shifted_keys(top.keys_of(h), offset);
  offset += top.padlocks;

  std::vector<int> latches = {top_root};
  for (size_t i = 0; i < gs.size(); ++i) {
    const int g_root = import_circuit(c, gs[i].circuit, offset);
    for (int j = 0; j < n0; ++j) {
      auto extra = shifted_keys(gs[i].keys_of(j), offset);
      auto& dst = sys.distribution.keys[static_cast<size_t>(j)];
      dst.insert(dst.end(), extra.begin(), extra.end());
    }
    offset += gs[i].padlocks;

    const int h_root = import_circuit(c, hs[i].circuit, offset);
    for (int h = 0; h < n1; ++h) {
      auto extra = shifted_keys(hs[i].keys_of(h), offset);
      auto& dst = sys.distribution.keys[static_cast<size_t>(n0 + h)];
      dst.insert(dst.end(), extra.begin(), extra.end());
    }
    offset += hs[i].padlocks;

    latches.push_back(c.add_threshold(2, {g_root, h_root}));
  }
  c.set_root(c.add_threshold(1, std::move(latches)));

  sys.padlocks = offset;
  sys.circuit = std::move(c);
  for (auto& keys : sys.distribution.keys) std::sort(keys.begin(), keys.end());
  validate_system(sys);
  return sys;
}

}  // namespace

ThresholdSystem build_from_plan(const RecursivePlan& plan) {
  const int n = static_cast<int>(plan.n);
  switch (plan.kind) {
    case SchemeKind::SinglePadlock: {
      ThresholdSystem sys;
      sys.padlocks = 1;
      DeviceCircuit c;
      c.set_root(c.add_lock(0));
      sys.circuit = std::move(c);
      sys.distribution.participants = n;
      sys.distribution.keys.assign(static_cast<size_t>(n), {0});
      validate_system(sys);
      return sys;
    }
    case SchemeKind::TwoOfN:
      return build_2_of_n(n);
    case SchemeKind::Direct:
      return build_direct(plan.k, n);
    case SchemeKind::Bose:
      return steiner_3_system(static_cast<int>(plan.points),
                              bose_triples(static_cast<int>((plan.points - 3) / 6)), n);
    case SchemeKind::Skolem:
      return steiner_3_system(static_cast<int>(plan.points),
                              skolem_triples(static_cast<int>((plan.points - 1) / 6)), n);
    case SchemeKind::Split:
      return build_split(plan);
  }
  throw std::logic_error("unhandled plan kind");
}

ThresholdSystem build_recursive(int k, int n) {
  if (k < 2 || n < k) throw std::invalid_argument("need 2 <= k <= n");
  PlanPtr plan = plan_recursive(k, n);
  ThresholdSystem sys = build_from_plan(*plan);
  if (sys.padlocks != plan->padlocks)
    throw std::logic_error("built padlock count diverged from the plan");
  return sys;
}

}  // namespace padlock
