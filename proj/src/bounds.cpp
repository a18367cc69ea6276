#include "padlock/bounds.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace padlock {

BigInt binomial(long long t, long long k) {
  if (k < 0 || k > t) return 0;
  k = std::min(k, t - k);
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= (t - k + i);
    result /= i;
  }
  return result;
}

long long sperner_min_t(long long n) {
  if (n < 1) throw std::invalid_argument("sperner_min_t needs n >= 1");
  for (long long t = 1;; ++t) {
    if (binomial(t, t / 2) >= n) return t;
  }
}

long long johnson_bound(long long t, long long k) {
  if (k < 2) throw std::invalid_argument("johnson_bound needs k >= 2");
  if (t < 0) throw std::invalid_argument("johnson_bound needs t >= 0");
  if (t == 0) return 0;
  return t * ((t - 1) / (k - 1)) / k;
}

namespace {

// Smallest v >= 1 with (2v+1)(3v+1) >= n: the 6v+3 triad system on
// t = 6v+3 points has exactly (2v+1)(3v+1) blocks.
long long bose_order(long long n) {
  long long v = 1;
  while ((2 * v + 1) * (3 * v + 1) < n) ++v;
  return v;
}

// Smallest mu >= 1 with (6mu+1)mu >= n, the block capacity on 6mu+1 points.
long long skolem_order(long long n) {
  long long mu = 1;
  while ((6 * mu + 1) * mu < n) ++mu;
  return mu;
}

}  // namespace

long long bose_padlocks(long long n) {
  if (n < 2) throw std::invalid_argument("bose_padlocks needs n >= 2");
  return 6 * bose_order(n) + 3;
}

long long skolem_padlocks(long long n) {
  if (n < 2) throw std::invalid_argument("skolem_padlocks needs n >= 2");
  return 6 * skolem_order(n) + 1;
}

long long lower_bound(int k, long long n) { return lower_bound(k, n, nullptr); }

long long lower_bound(int k, long long n, std::vector<std::string>* witnesses) {
  if (k < 1 || n < k) throw std::invalid_argument("need 1 <= k <= n");
  std::vector<std::pair<std::string, long long>> rules;
  if (k == 1) {
    rules.emplace_back("single-padlock", 1);
  } else {
    rules.emplace_back("at-least-k", k);
    if (k == 2 && n >= 3) rules.emplace_back("two-threshold-small", n == 3 ? 3 : 4);
    long long t = sperner_min_t(n);
    if (k >= 3 && t % 2 == 0 && binomial(t, t / 2) == n) {
      // An even-sized ground set whose middle layer is exactly n forces two
      // disjoint key sets, so the threshold collapses to 2.
      rules.emplace_back("sperner-even-exclusion", t + 1);
    } else {
      rules.emplace_back("sperner", t);
    }
    rules.emplace_back("triangular", std::min<long long>(n, 1LL * k * (k + 1) / 2));
  }
  long long best = 0;
  for (const auto& [name, value] : rules) best = std::max(best, value);
  if (witnesses) {
    witnesses->clear();
    for (const auto& [name, value] : rules)
      if (value == best) witnesses->push_back(name);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Recursive plan
// ---------------------------------------------------------------------------

namespace {

class Planner {
 public:
  PlanPtr plan(int k, long long n) {
    if (k < 1 || n < k) throw std::invalid_argument("need 1 <= k <= n");
    auto key = std::make_pair(k, n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    PlanPtr result;
    if (k == 1) {
      result = leaf(SchemeKind::SinglePadlock, k, n, 1);
    } else if (k == 2) {
      result = leaf(SchemeKind::TwoOfN, k, n, sperner_min_t(n));
    } else {
      std::vector<PlanPtr> candidates;
      candidates.push_back(leaf(SchemeKind::Direct, k, n, n));
      if (k == 3) {
        const long long tb = bose_padlocks(n);
        auto bose = std::make_shared<RecursivePlan>();
        bose->kind = SchemeKind::Bose;
        bose->k = k;
        bose->n = n;
        bose->padlocks = tb;
        bose->points = tb;
        candidates.push_back(bose);
        const long long ts = skolem_padlocks(n);
        auto skolem = std::make_shared<RecursivePlan>();
        skolem->kind = SchemeKind::Skolem;
        skolem->k = k;
        skolem->n = n;
        skolem->padlocks = ts;
        skolem->points = ts;
        candidates.push_back(skolem);
      }
      if (1LL * k * (k + 1) / 2 < n) {
        const long long n0 = (n + 1) / 2;
        const long long n1 = n / 2;
        auto split = std::make_shared<RecursivePlan>();
        split->kind = SchemeKind::Split;
        split->k = k;
        split->n = n;
        split->top = plan(k, n0);
        long long total = split->top->padlocks;
        for (int i = 1; i <= k - 1; ++i) {
          PlanPtr g = plan(i, n0);
          PlanPtr h = plan(k - i, n1);
          total += g->padlocks + h->padlocks;
          split->branches.emplace_back(std::move(g), std::move(h));
        }
        split->padlocks = total;
        candidates.push_back(split);
      }
      // First minimal candidate wins, so ties keep the simpler scheme.
      result = candidates.front();
      for (const auto& c : candidates)
        if (c->padlocks < result->padlocks) result = c;
    }
    memo_.emplace(key, result);
    return result;
  }

 private:
  static PlanPtr leaf(SchemeKind kind, int k, long long n, long long padlocks) {
    auto p = std::make_shared<RecursivePlan>();
    p->kind = kind;
    p->k = k;
    p->n = n;
    p->padlocks = padlocks;
    return p;
  }

  std::map<std::pair<int, long long>, PlanPtr> memo_;
};

long long prefix_keys_impl(const RecursivePlan& plan, long long c,
                           std::map<std::pair<const RecursivePlan*, long long>,
                                    long long>& memo) {
  c = std::min(c, plan.n);
  if (c <= 0) return 0;
  auto key = std::make_pair(&plan, c);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  long long result = 0;
  switch (plan.kind) {
    case SchemeKind::SinglePadlock:
    case SchemeKind::Direct:
      result = c;
      break;
    case SchemeKind::TwoOfN:
      // One key each when the device degrades to the direct 2-of-n,
      // floor(t/2) copies each otherwise.
      result = plan.padlocks < plan.n ? c * (plan.padlocks / 2) : c;
      break;
    case SchemeKind::Bose:
    case SchemeKind::Skolem:
      result = 3 * c;
      break;
    case SchemeKind::Split: {
      const long long n0 = (plan.n + 1) / 2;
      auto sub = [&](const PlanPtr& p, long long cc) {
        return prefix_keys_impl(*p, cc, memo);
      };
      if (c <= n0) {
        result = sub(plan.top, c);
        for (const auto& [g, h] : plan.branches) result += sub(g, c);
      } else {
        const long long d = c - n0;
        result = sub(plan.top, n0) + sub(plan.top, d);
        for (const auto& [g, h] : plan.branches)
          result += sub(g, n0) + sub(h, d);
      }
      break;
    }
  }
  memo.emplace(key, result);
  return result;
}

}  // namespace

PlanPtr plan_recursive(int k, long long n) {
  Planner planner;
  return planner.plan(k, n);
}

long long plan_prefix_keys(const PlanPtr& plan, long long c) {
  std::map<std::pair<const RecursivePlan*, long long>, long long> memo;
  return prefix_keys_impl(*plan, c, memo);
}

long long plan_total_keys(const PlanPtr& plan) {
  return plan_prefix_keys(plan, plan->n);
}

long long recursive_padlock_count(int k, long long n) {
  if (k < 2) throw std::invalid_argument("recursive construction needs k >= 2");
  return plan_recursive(k, n)->padlocks;
}

Rational recursive_key_average(int k, long long n) {
  if (k < 2) throw std::invalid_argument("recursive construction needs k >= 2");
  PlanPtr plan = plan_recursive(k, n);
  long long total = plan_total_keys(plan);
  long long g = std::gcd(total, n);
  return Rational{total / g, n / g};
}

BigInt knot_wrapping_count(int k, int n) {
  if (k < 1 || n < k) throw std::invalid_argument("need 1 <= k <= n");
  // Case order follows the construction: the linear k == n and k == n-1
  // wirings take precedence over the generic doubling step.
  static thread_local std::map<std::pair<int, int>, BigInt> memo;
  auto key = std::make_pair(k, n);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  BigInt result;
  if (k == n) {
    result = n;
  } else if (k == n - 1) {
    result = 2 * n;
  } else if (k == 1) {
    result = 3 * (BigInt(1) << (n - 1)) - 2;  // (3/2)2^n - 2
  } else {
    result = 2 * (3 + knot_wrapping_count(k - 1, n - 1) +
                  knot_wrapping_count(k, n - 1));
  }
  memo.emplace(key, result);
  return result;
}

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::SinglePadlock: return "single-padlock";
    case SchemeKind::TwoOfN: return "two-of-n";
    case SchemeKind::Direct: return "direct";
    case SchemeKind::Bose: return "bose";
    case SchemeKind::Skolem: return "skolem";
    case SchemeKind::Split: return "recursive-split";
  }
  return "unknown";
}

BoundResult best_known(int k, long long n) {
  BoundResult result;
  result.k = k;
  result.n = n;
  result.lower = lower_bound(k, n, &result.lower_witnesses);
  if (k == 1) {
    result.upper = 1;
    result.upper_witness = "single-padlock";
  } else {
    PlanPtr plan = plan_recursive(k, n);
    result.upper = plan->padlocks;
    result.upper_witness = scheme_name(plan->kind);
  }
  return result;
}

}  // namespace padlock
