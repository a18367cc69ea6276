#include <doctest.h>

#include <algorithm>
#include <bit>
#include <random>

#include "padlock/bounds.hpp"
#include "padlock/knots.hpp"

using namespace padlock;

namespace {

KnotWord word_of(int generators, std::string_view text) {
  return parse_word(text, generators);
}

std::vector<int> subset_of(std::uint64_t mask, int n) {
  std::vector<int> out;
  for (int g = 0; g < n; ++g)
    if (mask & (std::uint64_t{1} << g)) out.push_back(g);
  return out;
}

// Reference reduction that cancels in random order instead of one stack
// pass; free-group normal forms are confluent, so results must agree.
KnotWord scramble_reduce(const KnotWord& word, const std::vector<int>& opened,
                         std::mt19937& rng) {
  std::vector<KnotToken> tokens;
  for (const KnotToken& t : word.tokens) {
    bool drop = false;
    for (int g : opened)
      if (t.symbol == g) drop = true;
    if (!drop) tokens.push_back(t);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<size_t> at;
    for (size_t i = 0; i + 1 < tokens.size(); ++i)
      if (tokens[i].symbol == tokens[i + 1].symbol &&
          tokens[i].sign == -tokens[i + 1].sign)
        at.push_back(i);
    if (at.empty()) break;
    const size_t pick = at[std::uniform_int_distribution<size_t>(0, at.size() - 1)(rng)];
    tokens.erase(tokens.begin() + static_cast<long>(pick),
                 tokens.begin() + static_cast<long>(pick) + 2);
    changed = true;
  }
  KnotWord out;
  out.generators = word.generators;
  out.tokens = std::move(tokens);
  return out;
}

}  // namespace

TEST_CASE("reduce: commutator collapses when either padlock opens") {
  const KnotWord w = word_of(2, "x1 x2 x1' x2'");
  CHECK(reduce(w, {0}).tokens.empty());
  CHECK(reduce(w, {1}).tokens.empty());
  CHECK(reduce(w, {}).length() == 4);  // already reduced
}

TEST_CASE("reduce: a a a' a' is trivial even while locked") {
  const KnotWord w = word_of(1, "x1 x1 x1' x1'");
  CHECK(reduce(w, {}).tokens.empty());
}

TEST_CASE("reduce: the ring cannot be opened") {
  const KnotWord w = word_of(1, "x1 O x1' O'");
  CHECK_THROWS_AS(reduce(w, {kRing}), std::invalid_argument);
}

TEST_CASE("is_open: ringed OR of dependent subsystems") {
  // X O Y O' X' O Y' O' with X = Y = x1 collapses as soon as x1 opens,
  // and only then.
  const KnotWord w = word_of(1, "x1 O x1 O' x1' O x1' O'");
  CHECK(is_open(w, {0}));
  CHECK_FALSE(is_open(w, {}));
}

TEST_CASE("is_open: the linear (n-1)-of-n wiring") {
  for (int n = 3; n <= 6; ++n) {
    const KnotWord w = build_knot(n - 1, n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const int bits = std::popcount(mask);
      if (bits == n - 1)
        CHECK(is_open(w, subset_of(mask, n)));
      else if (bits == n - 2)
        CHECK_FALSE(is_open(w, subset_of(mask, n)));
    }
  }
}

TEST_CASE("reduce is idempotent and order-independent") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 4)(rng);
    KnotWord w;
    w.generators = n;
    const int len = std::uniform_int_distribution<int>(0, 14)(rng);
    for (int i = 0; i < len; ++i) {
      int sym = std::uniform_int_distribution<int>(-1, n - 1)(rng);
      int sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
      w.tokens.push_back({sym, sign});
    }
    std::vector<int> opened;
    for (int g = 0; g < n; ++g)
      if (std::uniform_int_distribution<int>(0, 1)(rng)) opened.push_back(g);

    const KnotWord once = reduce(w, opened);
    CHECK(reduce(once, opened) == once);
    CHECK(scramble_reduce(w, opened, rng) == once);
  }
}

TEST_CASE("verify_knot_threshold: the 10-wrapping 1-of-3 word") {
  const KnotWord w = word_of(3, "x1 x2 x3 x2' x3' x1' x3 x2 x3' x2'");
  CHECK(w.length() == 10);
  CHECK(verify_knot_threshold(w, 1, 3).verdict);
}

TEST_CASE("verify_knot_threshold: plain product is n-of-n") {
  for (int n = 1; n <= 6; ++n) {
    const KnotWord w = build_knot(n, n);
    CHECK(w.length() == n);
    CHECK(verify_knot_threshold(w, n, n).verdict);
  }
}

TEST_CASE("build_knot verifies for all k <= n <= 6") {
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k) {
      const KnotWord w = build_knot(k, n);
      CHECK(verify_knot_threshold(w, k, n).verdict);
      // With every padlock open only ring tokens remain, and they cancel.
      std::vector<int> all;
      for (int g = 0; g < n; ++g) all.push_back(g);
      CHECK(is_open(w, all));
    }
}

TEST_CASE("build_knot lengths match the wrapping counter up to n = 10") {
  CHECK(build_knot(1, 2).length() == 4);
  CHECK(build_knot(2, 2).length() == 2);
  CHECK(build_knot(5, 6).length() == 12);
  CHECK(build_knot(3, 5).length() == 98);
  for (int n = 1; n <= 10; ++n)
    for (int k = 1; k <= n; ++k)
      CHECK(BigInt(build_knot(k, n).length()) == knot_wrapping_count(k, n));
}

TEST_CASE("constructed words stay monotone under widening") {
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= n; ++k) {
      const KnotWord w = build_knot(k, n);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (!is_open(w, subset_of(mask, n))) continue;
        for (int g = 0; g < n; ++g)
          CHECK(is_open(w, subset_of(mask | (std::uint64_t{1} << g), n)));
      }
    }
}

TEST_CASE("constructed words have even length and every generator twice") {
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k < n; ++k) {
      const KnotWord w = build_knot(k, n);
      CHECK(w.length() % 2 == 0);
      std::vector<int> occurrences(static_cast<size_t>(n), 0);
      for (const KnotToken& t : w.tokens)
        if (t.symbol != kRing) ++occurrences[static_cast<size_t>(t.symbol)];
      for (int g = 0; g < n; ++g) CHECK(occurrences[static_cast<size_t>(g)] >= 2);
    }
}

TEST_CASE("search_minimal") {
  const auto or_gate = search_minimal(1, 2, 4);
  REQUIRE(or_gate.has_value());
  CHECK(or_gate->length == 4);
  CHECK(verify_knot_threshold(or_gate->word, 1, 2).verdict);

  const auto linear = search_minimal(2, 3, 6);
  REQUIRE(linear.has_value());
  CHECK(linear->length == 6);
  CHECK(verify_knot_threshold(linear->word, 2, 3).verdict);

  // Nothing below ten wrappings realizes 1-of-3.
  CHECK_FALSE(search_minimal(1, 3, 8).has_value());
  const auto ten = search_minimal(1, 3, 10);
  REQUIRE(ten.has_value());
  CHECK(ten->length == 10);
  CHECK(verify_knot_threshold(ten->word, 1, 3).verdict);
  std::vector<int> occurrences(3, 0);
  for (const KnotToken& t : ten->word.tokens) {
    CHECK(t.symbol != kRing);
    ++occurrences[static_cast<size_t>(t.symbol)];
  }
  CHECK(ten->word.length() % 2 == 0);
  for (int g = 0; g < 3; ++g) CHECK(occurrences[static_cast<size_t>(g)] >= 2);

  CHECK_THROWS_AS(search_minimal(1, 3, 10, 5), CapacityError);
}

TEST_CASE("word text format round-trips") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{1, 3}, {2, 4}, {3, 5}}) {
    const KnotWord w = build_knot(k, n);
    CHECK(parse_word(format_word(w), n) == w);
  }
  CHECK_THROWS_AS(parse_word("x0", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("y1", 2), std::invalid_argument);
}

TEST_CASE("the 6-of-11 word: counted always, verified end to end") {
  const KnotWord w = build_knot(6, 11);
  CHECK(BigInt(w.length()) == 279038);
  CHECK(knot_wrapping_count(6, 11) == 279038);
  const VerificationReport report = verify_knot_threshold(w, 6, 11);
  CHECK(report.verdict);
}
