// Acceptance gate: one check per shipped claim, one line per verdict.
// Exit status is the number of failed criteria.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "padlock/bounds.hpp"
#include "padlock/cli.hpp"
#include "padlock/constructions.hpp"
#include "padlock/json_io.hpp"
#include "padlock/knots.hpp"
#include "padlock/sharing.hpp"
#include "padlock/verify.hpp"

using namespace padlock;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool condition, const std::string& message) {
  if (!condition) throw CheckFailure(message);
}

int g_failures = 0;

void criterion(const std::string& name, const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string failure;
  try {
    body();
  } catch (const std::exception& e) {
    failure = e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (failure.empty()) {
    std::printf("[PASS] %s (%.2fs)\n", name.c_str(), seconds);
  } else {
    ++g_failures;
    std::printf("[FAIL] %s (%.2fs): %s\n", name.c_str(), seconds,
                failure.c_str());
  }
  std::fflush(stdout);
}

std::vector<std::uint32_t> all_k_subsets(int n, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if (std::popcount(mask) == k) out.push_back(mask);
  return out;
}

void check_liu() {
  std::ostringstream out, err;
  const int code = cli::run({"bounds", "--k", "6", "--n", "11"}, out, err);
  expect(code == 0, "bounds command failed");
  const auto doc = nlohmann::json::parse(out.str());
  expect(doc["lower"] == 11 && doc["upper"] == 11,
         "expected lower=upper=11, got " + out.str());

  const ThresholdSystem sys = build_direct(6, 11);
  expect(padlock_count(sys) == 11, "direct device must use 11 padlocks");
  expect(verify_threshold(sys, 6).verdict, "direct 6-of-11 must verify");
}

void check_small_cases() {
  auto value = [](int k, long long n) {
    const BoundResult b = best_known(k, n);
    expect(b.lower == b.upper, "bounds must close for small cases");
    return b.upper;
  };
  for (int n = 2; n <= 5; ++n)
    for (int k = 2; k <= n; ++k) {
      const long long expected = (k == 2 && n == 5) ? 4 : n;
      expect(value(k, n) == expected,
             "l(" + std::to_string(k) + "," + std::to_string(n) + ") != " +
                 std::to_string(expected));
    }
  expect(value(2, 6) == 4, "l(2,6) != 4");
  for (long long n = 7; n <= 10; ++n) expect(value(2, n) == 5, "l(2,n) != 5");
}

void check_two_of_n() {
  for (int n = 2; n <= 64; ++n) {
    const ThresholdSystem sys = build_2_of_n(n);
    expect(padlock_count(sys) == sperner_min_t(n),
           "padlocks != sperner_min_t at n=" + std::to_string(n));
    long long log_bound = 0;
    while ((1LL << log_bound) < n) ++log_bound;
    expect(sperner_min_t(n) <= 2 * log_bound,
           "sperner minimum above 2*ceil(log2 n)");
    expect(verify_threshold(sys, 2, 64).verdict,
           "2-of-n failed to verify at n=" + std::to_string(n));
    if (n <= 12)
      expect(realized_access_structure(sys).minimal == all_k_subsets(n, 2),
             "minimal sets are not exactly the pairs at n=" + std::to_string(n));
  }
}

void check_double_daisy() {
  const ThresholdSystem eight = build_double_daisy(8);
  expect(padlock_count(eight) == 6, "n=8 daisy must use 6 padlocks");
  expect(verify_threshold(eight, 2).verdict, "n=8 daisy must verify");
  const ThresholdSystem ten = build_double_daisy(10);
  expect(padlock_count(ten) == 8, "n=10 daisy must use 8 padlocks");
  expect(verify_threshold(ten, 2).verdict, "n=10 daisy must verify");
}

void check_bose() {
  const auto triads = bose_triples(1);
  expect(triads.size() == 12, "order-9 system must have 12 triads");
  std::vector<std::vector<int>> blocks;
  for (const auto& t : triads) blocks.push_back({t[0], t[1], t[2]});
  expect(check_packing(blocks, 2, 1), "order-9 triads must be pair-disjoint");
  expect(count_six_key_triples(triads) == 72, "expected 72 six-key triples");

  const ThresholdSystem sys = build_3_of_n(12);
  expect(padlock_count(sys) == 9, "3-of-12 must use 9 padlocks");
  expect(key_count(sys) == 36, "3-of-12 must distribute 36 keys");
  expect(realized_access_structure(sys).minimal == all_k_subsets(12, 3),
         "3-of-12 minimal sets must be exactly the 3-subsets");
}

void check_fixture13() {
  const ThresholdSystem sys = fixture_13_participants();
  std::vector<Triad> triads;
  for (const auto& ks : sys.distribution.keys)
    triads.push_back({ks[0] + 1, ks[1] + 1, ks[2] + 1});
  expect(count_six_key_triples(triads) == 56, "expected 56 six-key triples");
  expect(count_six_key_pairs(triads) == 24, "expected 24 six-key pairs");
  expect(padlock_count(sys) == 11, "fixture must use 11 padlocks");
  expect(key_count(sys) == 39, "fixture must distribute 39 keys");
  expect(verify_threshold(sys, 3).verdict, "fixture must verify as 3-threshold");
}

void check_johnson() {
  const std::vector<long long> expected = {0, 0, 0, 1, 1,  3,  4, 7,
                                           8, 12, 13, 18, 20, 26, 28};
  for (long long t = 0; t < static_cast<long long>(expected.size()); ++t)
    expect(johnson_bound(t, 3) == expected[static_cast<size_t>(t)],
           "johnson_bound(" + std::to_string(t) + ",3) mismatch");
}

void check_knots() {
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k)
      expect(verify_knot_threshold(build_knot(k, n), k, n).verdict,
             "knot " + std::to_string(k) + "-of-" + std::to_string(n) +
                 " failed to verify");
  for (int n = 1; n <= 10; ++n)
    for (int k = 1; k <= n; ++k)
      expect(BigInt(build_knot(k, n).length()) == knot_wrapping_count(k, n),
             "knot length != wrapping count");
  expect(knot_wrapping_count(1, 2) == 4, "W(1,2) != 4");
  expect(knot_wrapping_count(2, 2) == 2, "W(2,2) != 2");
  for (int n = 2; n <= 10; ++n)
    expect(knot_wrapping_count(n - 1, n) == 2 * n, "W(n-1,n) != 2n");
  expect(knot_wrapping_count(6, 11) == 279038, "W(6,11) != 279038");

  const auto found = search_minimal(1, 3, 10);
  expect(found.has_value() && found->length == 10,
         "minimal 1-of-3 word must have 10 wrappings");
  expect(verify_knot_threshold(found->word, 1, 3).verdict,
         "search witness must verify");
  expect(!search_minimal(1, 3, 8).has_value(),
         "no 1-of-3 word below 10 wrappings may exist");
}

void check_recursive() {
  expect(recursive_padlock_count(3, 1248) == 89,
         "recursive count (3,1248) != 89");
  expect(recursive_padlock_count(4, 114) == 113,
         "recursive count (4,114) != 113");
  for (int k = 2; k <= 12; ++k)
    for (int n = k; n <= 12; ++n)
      expect(verify_threshold(build_recursive(k, n), k).verdict,
             "recursive " + std::to_string(k) + "-of-" + std::to_string(n) +
                 " failed to verify");
  for (int k = 2; k <= 5; ++k)
    for (int n = k; n <= 200; ++n)
      expect(padlock_count(build_recursive(k, n)) ==
                 recursive_padlock_count(k, n),
             "built padlocks diverge from the recurrence at k=" +
                 std::to_string(k) + ", n=" + std::to_string(n));
}

void check_sharing() {
  std::vector<ThresholdSystem> fixtures;
  fixtures.push_back(build_direct(2, 3));
  fixtures.push_back(build_2_of_n(5));
  fixtures.push_back(build_benaloh());
  fixtures.push_back(build_3_of_n(7));
  for (const ThresholdSystem& sys : fixtures) {
    const long long q = min_field_size(sys.circuit);
    const long long secret = 2 % q;
    const DealResult dealt = deal_seeded(sys.circuit, secret, q, 23);
    const int n = sys.participants();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> coalition;
      for (int p = 0; p < n; ++p)
        if (mask & (1u << p)) coalition.push_back(p);
      const auto got = reconstruct(
          sys.circuit, records_for_coalition(sys, dealt, coalition), q);
      const bool opens = coalition_open(sys, coalition);
      expect(got.has_value() == opens,
             "reconstruction success must match the door");
      if (opens)
        expect(*got == secret, "reconstructed value must be the dealt secret");
    }
  }

  auto plain = [](int m, int leaves) {
    DeviceCircuit c;
    std::vector<int> ch;
    for (int i = 0; i < leaves; ++i) ch.push_back(c.add_lock(i));
    c.set_root(c.add_threshold(m, std::move(ch)));
    return c;
  };
  const DeviceCircuit two_three = plain(2, 3);
  for (int p = 0; p < 3; ++p)
    expect(privacy_check(two_three, 5, {p}),
           "single share of 2-of-3 must reveal nothing");
  const DeviceCircuit three_four = plain(3, 4);
  for (int a = 0; a < 4; ++a) {
    expect(privacy_check(three_four, 5, {a}),
           "single share of 3-of-4 must reveal nothing");
    for (int b = a + 1; b < 4; ++b)
      expect(privacy_check(three_four, 5, {a, b}),
             "two shares of 3-of-4 must reveal nothing");
  }
}

void check_asymptotic() {
  const long long n = 1LL << 20;
  const long long count = recursive_padlock_count(3, n);
  const double ratio = static_cast<double>(count) / (20.0 * 20.0);
  std::ostringstream msg;
  msg << "recursive_padlock_count(3,2^20)=" << count << ", ratio "
      << ratio << " outside [1.5,2.5]";
  expect(ratio >= 1.5 && ratio <= 2.5, msg.str());
}

}  // namespace

int main() {
  criterion("1. Liu's 6-of-11 answer: 11 padlocks, closed bounds", check_liu);
  criterion("2. small-case table l(k,n)=n except l(2,5)=4; l(2,6)=4, l(2,7..10)=5",
            check_small_cases);
  criterion("3. 2-of-n optimality for n=2..64", check_two_of_n);
  criterion("4. double daisy chain: 6 padlocks at n=8, 8 at n=10",
            check_double_daisy);
  criterion("5. order-9 triads: 12 blocks, 72 six-key triples, 3-of-12 on 9 padlocks",
            check_bose);
  criterion("6. 13-participant fixture: 56 triples, 24 pairs, 11 padlocks",
            check_fixture13);
  criterion("7. Johnson bound sequence for k=3, t=0..14", check_johnson);
  criterion("8. knotted systems: constructions, wrapping counts, minimal 1-of-3 search",
            check_knots);
  criterion("9. recursive construction: worked totals, verification, count equality",
            check_recursive);
  criterion("10. secret sharing: opening equivalence and perfect privacy",
            check_sharing);
  criterion("11. asymptotic count ratio at n=2^20", check_asymptotic);
  if (g_failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
