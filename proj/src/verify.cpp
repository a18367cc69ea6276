#include "padlock/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace padlock {

namespace {

// Calls fn on each size-r subset of {0..n-1} in lexicographic order until fn
// returns false.
template <typename Fn>
void for_each_combination(int n, int r, Fn&& fn) {
  if (r < 0 || r > n) return;
  std::vector<int> idx(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<size_t>(i)] = i;
  while (true) {
    if (!fn(idx)) return;
    int i = r - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < r; ++j)
      idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
}

}  // namespace

VerificationReport verify_threshold(const ThresholdSystem& system, int k,
                                    int limit) {
  const int n = system.participants();
  if (k < 1 || k > n) throw std::invalid_argument("threshold k must be in 1..n");
  if (n > limit) throw CapacityError("participant count exceeds the enumeration limit");

  VerificationReport report;
  report.k = k;
  report.n = n;
  report.padlocks = system.padlocks;

  std::vector<char> scratch;
  OpenSet opened(system.padlocks);
  auto open_coalition = [&](const std::vector<int>& coalition) {
    opened.clear();
    for (int p : coalition)
      for (PadlockId id : system.keys_of(p)) opened.open(id);
    return detail::evaluate_with_scratch(system.circuit, opened, scratch);
  };

  for_each_combination(n, k, [&](const std::vector<int>& coalition) {
    if (!open_coalition(coalition)) {
      report.failing_open = coalition;
      return false;
    }
    return true;
  });
  for_each_combination(n, k - 1, [&](const std::vector<int>& coalition) {
    if (open_coalition(coalition)) {
      report.failing_closed = coalition;
      return false;
    }
    return true;
  });

  report.verdict = !report.failing_open && !report.failing_closed;
  return report;
}

SpernerReport check_sperner(const KeyDistribution& distribution) {
  SpernerReport report;
  const int n = distribution.participants;
  auto includes = [&](int a, int b) {  // keys(a) subset of keys(b)
    const auto& ka = distribution.keys[static_cast<size_t>(a)];
    const auto& kb = distribution.keys[static_cast<size_t>(b)];
    return std::includes(kb.begin(), kb.end(), ka.begin(), ka.end());
  };
  for (int a = 0; a < n && report.ok; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      if (includes(a, b)) {
        report.ok = false;
        report.offending = std::make_pair(a, b);
        break;
      }
    }
  }
  return report;
}

NecessaryConditionReport check_necessary_condition(
    const KeyDistribution& distribution, int k) {
  if (k < 3) throw std::invalid_argument("the necessary condition needs k >= 3");
  NecessaryConditionReport report;

  std::map<PadlockId, int> owners;
  for (const auto& ks : distribution.keys)
    for (PadlockId id : ks) ++owners[id];

  for (int p = 0; p < distribution.participants; ++p) {
    bool all_shared = true;
    for (PadlockId id : distribution.keys[static_cast<size_t>(p)])
      if (owners[id] < 2) all_shared = false;
    if (all_shared)
      report.shared_only.push_back(p);
    else
      report.sole_key_owners.push_back(p);
  }

  for (Participant p : report.shared_only) {
    if (static_cast<int>(distribution.keys[static_cast<size_t>(p)].size()) < k) {
      report.ok = false;
      report.too_few_keys = p;
      break;
    }
  }
  for (Participant a : report.shared_only) {
    if (!report.ok) break;
    for (Participant b : report.shared_only) {
      if (a == b) continue;
      const auto& ka = distribution.keys[static_cast<size_t>(a)];
      const auto& kb = distribution.keys[static_cast<size_t>(b)];
      std::vector<PadlockId> diff;
      std::set_difference(ka.begin(), ka.end(), kb.begin(), kb.end(),
                          std::back_inserter(diff));
      if (static_cast<int>(diff.size()) < k - 1) {
        report.ok = false;
        report.small_difference = std::make_pair(a, b);
        break;
      }
    }
  }
  return report;
}

bool check_packing(const std::vector<std::vector<int>>& blocks, int p,
                   int lambda) {
  if (p < 2) throw std::invalid_argument("packing needs p >= 2");
  std::map<std::vector<int>, int> counts;
  std::vector<int> subset(static_cast<size_t>(p));
  for (const auto& raw : blocks) {
    std::vector<int> block = raw;
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    const int b = static_cast<int>(block.size());
    if (b < p) continue;
    bool ok = true;
    for_each_combination(b, p, [&](const std::vector<int>& idx) {
      for (int i = 0; i < p; ++i)
        subset[static_cast<size_t>(i)] = block[static_cast<size_t>(idx[static_cast<size_t>(i)])];
      if (++counts[subset] > lambda) {
        ok = false;
        return false;
      }
      return true;
    });
    if (!ok) return false;
  }
  return true;
}

namespace {

int union_size(const Triad& a, const Triad& b) {
  std::set<int> u(a.begin(), a.end());
  u.insert(b.begin(), b.end());
  return static_cast<int>(u.size());
}

int union_size(const Triad& a, const Triad& b, const Triad& c) {
  std::set<int> u(a.begin(), a.end());
  u.insert(b.begin(), b.end());
  u.insert(c.begin(), c.end());
  return static_cast<int>(u.size());
}

}  // namespace

std::vector<std::array<int, 3>> six_key_triples(const std::vector<Triad>& triads) {
  const int m = static_cast<int>(triads.size());
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int l = j + 1; l < m; ++l)
        if (union_size(triads[static_cast<size_t>(i)], triads[static_cast<size_t>(j)],
                       triads[static_cast<size_t>(l)]) == 6)
          out.push_back({i, j, l});
  return out;
}

int count_six_key_triples(const std::vector<Triad>& triads) {
  return static_cast<int>(six_key_triples(triads).size());
}

std::vector<std::array<int, 2>> six_key_pairs(const std::vector<Triad>& triads) {
  const int m = static_cast<int>(triads.size());
  std::vector<std::array<int, 2>> out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (union_size(triads[static_cast<size_t>(i)], triads[static_cast<size_t>(j)]) == 6)
        out.push_back({i, j});
  return out;
}

int count_six_key_pairs(const std::vector<Triad>& triads) {
  return static_cast<int>(six_key_pairs(triads).size());
}

}  // namespace padlock
