#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padlock/verify.hpp"

namespace padlock {

/// The never-openable ring symbol.
inline constexpr int kRing = -1;

struct KnotToken {
  int symbol = 0;  // generator 0..n-1, or kRing
  int sign = 1;    // +1 clockwise, -1 anticlockwise

  bool operator==(const KnotToken&) const = default;
};

/// A wire wrapping sequence as a free-group word over the padlock generators
/// plus the ring. Length = wrapping count.
struct KnotWord {
  int generators = 0;
  std::vector<KnotToken> tokens;

  int length() const { return static_cast<int>(tokens.size()); }
  bool operator==(const KnotWord&) const = default;
};

/// Deletes every token of an opened generator, then cancels adjacent inverse
/// pairs to the free-group normal form (stack pass, linear time).
KnotWord reduce(const KnotWord& word, const std::vector<int>& opened);

/// True iff the word collapses to the empty word with `opened` unlocked.
bool is_open(const KnotWord& word, const std::vector<int>& opened);

/// Two-layer check, same shape as the circuit verifier: every k-subset of
/// generators opens, no (k-1)-subset does.
VerificationReport verify_knot_threshold(const KnotWord& word, int k, int n,
                                         int limit = kDefaultEnumerationLimit,
                                         int length_cap = 1'000'000);

/// The recursive knotted construction; length equals knot_wrapping_count(k, n).
KnotWord build_knot(int k, int n);

struct KnotSearchResult {
  int length = 0;
  KnotWord word;
};

/// Smallest even length in [2n, max_len] admitting a k-of-n word, with the
/// lexicographically first witness under the canonicalization that fixes the
/// leading token to x1 (generator relabeling and inverting x1 preserve the
/// threshold property, so this loses no lengths). Ring-free alphabet, as the
/// exhaustive-search model prescribes.
std::optional<KnotSearchResult> search_minimal(int k, int n, int max_len,
                                               long long node_budget = 400'000'000);

/// Text format: whitespace-separated `x3`, `x3'` (inverse), `O`, `O'`.
std::string format_word(const KnotWord& word);
KnotWord parse_word(std::string_view text, int generators = 0);

}  // namespace padlock
