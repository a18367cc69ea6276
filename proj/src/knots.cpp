#include "padlock/knots.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace padlock {

namespace {

std::uint64_t opened_mask(const KnotWord& word, const std::vector<int>& opened) {
  std::uint64_t mask = 0;
  for (int g : opened) {
    if (g == kRing) throw std::invalid_argument("the ring cannot be opened");
    if (g < 0 || g >= word.generators)
      throw std::invalid_argument("opened generator out of range");
    mask |= std::uint64_t{1} << g;
  }
  return mask;
}

void reduce_into(const std::vector<KnotToken>& tokens, std::uint64_t opened,
                 std::vector<KnotToken>& stack) {
  stack.clear();
  for (const KnotToken& t : tokens) {
    if (t.symbol != kRing && (opened & (std::uint64_t{1} << t.symbol))) continue;
    if (!stack.empty() && stack.back().symbol == t.symbol &&
        stack.back().sign == -t.sign) {
      stack.pop_back();
    } else {
      stack.push_back(t);
    }
  }
}

}  // namespace

KnotWord reduce(const KnotWord& word, const std::vector<int>& opened) {
  KnotWord out;
  out.generators = word.generators;
  reduce_into(word.tokens, opened_mask(word, opened), out.tokens);
  return out;
}

bool is_open(const KnotWord& word, const std::vector<int>& opened) {
  std::vector<KnotToken> stack;
  reduce_into(word.tokens, opened_mask(word, opened), stack);
  return stack.empty();
}

VerificationReport verify_knot_threshold(const KnotWord& word, int k, int n,
                                         int limit, int length_cap) {
  if (k < 1 || k > n) throw std::invalid_argument("threshold k must be in 1..n");
  if (n > limit || n > 62)
    throw CapacityError("generator count exceeds the enumeration limit");
  if (word.length() > length_cap)
    throw CapacityError("word exceeds the configured length cap");
  for (const KnotToken& t : word.tokens)
    if (t.symbol != kRing && (t.symbol < 0 || t.symbol >= n))
      throw std::invalid_argument("word references a generator outside 0..n-1");

  VerificationReport report;
  report.k = k;
  report.n = n;
  report.padlocks = n;

  std::vector<KnotToken> stack;
  stack.reserve(word.tokens.size());
  auto open_with = [&](const std::vector<int>& subset) {
    std::uint64_t mask = 0;
    for (int g : subset) mask |= std::uint64_t{1} << g;
    reduce_into(word.tokens, mask, stack);
    return stack.empty();
  };

  auto scan_layer = [&](int size, bool expect_open,
                        std::optional<std::vector<int>>& failure) {
    std::vector<int> subset(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) subset[static_cast<size_t>(i)] = i;
    while (true) {
      if (open_with(subset) != expect_open) {
        failure = subset;
        return;
      }
      int i = size - 1;
      while (i >= 0 && subset[static_cast<size_t>(i)] == n - size + i) --i;
      if (i < 0) return;
      ++subset[static_cast<size_t>(i)];
      for (int j = i + 1; j < size; ++j)
        subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
    }
  };

  scan_layer(k, true, report.failing_open);
  scan_layer(k - 1, false, report.failing_closed);
  report.verdict = !report.failing_open && !report.failing_closed;
  return report;
}

namespace {

std::vector<KnotToken> inverted(const std::vector<KnotToken>& w) {
  std::vector<KnotToken> out(w.rbegin(), w.rend());
  for (KnotToken& t : out) t.sign = -t.sign;
  return out;
}

void append(std::vector<KnotToken>& dst, const std::vector<KnotToken>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

// Wires generators first..first+count-1 into a k-of-count word.
std::vector<KnotToken> build_tokens(int k, int first, int count) {
  std::vector<KnotToken> w;
  if (k == count) {
    for (int g = 0; g < count; ++g) w.push_back({first + g, 1});
    return w;
  }
  if (k == count - 1) {
    for (int g = 0; g < count; ++g) w.push_back({first + g, 1});
    for (int g = 0; g < count; ++g) w.push_back({first + g, -1});
    return w;
  }
  if (k == 1) {
    // x1 and the tail word use disjoint padlocks, so the plain commutator
    // needs no ring.
    const std::vector<KnotToken> tail = build_tokens(1, first + 1, count - 1);
    w.push_back({first, 1});
    append(w, tail);
    w.push_back({first, -1});
    append(w, inverted(tail));
    return w;
  }
  const std::vector<KnotToken> x = build_tokens(k - 1, first + 1, count - 1);
  const std::vector<KnotToken> y = build_tokens(k, first + 1, count - 1);
  w.push_back({first, 1});
  append(w, x);
  w.push_back({kRing, 1});
  append(w, y);
  w.push_back({kRing, -1});
  append(w, inverted(x));
  w.push_back({first, -1});
  w.push_back({kRing, 1});
  append(w, inverted(y));
  w.push_back({kRing, -1});
  return w;
}

}  // namespace

KnotWord build_knot(int k, int n) {
  if (k < 1 || n < k) throw std::invalid_argument("need 1 <= k <= n");
  KnotWord word;
  word.generators = n;
  word.tokens = build_tokens(k, 0, n);
  return word;
}

namespace {

struct Searcher {
  int k, n, length;
  long long budget;
  std::vector<KnotToken> word;
  std::vector<int> count, net;
  long long required = 0;  // sum over generators of pending minimum tokens
  std::vector<std::uint64_t> open_masks, closed_masks;
  std::vector<KnotToken> stack;

  bool verifies() {
    for (std::uint64_t m : closed_masks) {
      reduce_into(word, m, stack);
      if (stack.empty()) return false;
    }
    for (std::uint64_t m : open_masks) {
      reduce_into(word, m, stack);
      if (!stack.empty()) return false;
    }
    return true;
  }

  long long need(int g) const {
    if (count[static_cast<size_t>(g)] == 0) return 2;
    return std::abs(net[static_cast<size_t>(g)]);
  }

  bool dfs(int pos) {
    if (--budget <= 0) throw CapacityError("search budget exceeded");
    if (pos == length) return verifies();
    const int rem = length - pos;
    const KnotToken prev = word[static_cast<size_t>(pos - 1)];
    for (int g = 0; g < n; ++g) {
      for (int sign : {1, -1}) {
        if (prev.symbol == g && prev.sign == -sign) continue;  // stay freely reduced
        const long long before = need(g);
        ++count[static_cast<size_t>(g)];
        net[static_cast<size_t>(g)] += sign;
        required += need(g) - before;
        if (required <= rem - 1 && ((rem - 1 - required) & 1) == 0) {
          word[static_cast<size_t>(pos)] = {g, sign};
          if (dfs(pos + 1)) return true;
        }
        required -= need(g) - before;
        --count[static_cast<size_t>(g)];
        net[static_cast<size_t>(g)] -= sign;
      }
    }
    return false;
  }
};

}  // namespace

std::optional<KnotSearchResult> search_minimal(int k, int n, int max_len,
                                               long long node_budget) {
  if (k < 1 || n < 2 || k >= n)
    throw std::invalid_argument("search covers 1 <= k < n");
  if (n > 16) throw CapacityError("search supports n <= 16");

  Searcher s;
  s.k = k;
  s.n = n;
  s.budget = node_budget;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int bits = std::popcount(mask);
    if (bits == k) s.open_masks.push_back(mask);
    if (bits == k - 1) s.closed_masks.push_back(mask);
  }

  for (int length = 2 * n; length <= max_len; length += 2) {
    s.length = length;
    s.word.assign(static_cast<size_t>(length), KnotToken{});
    s.count.assign(static_cast<size_t>(n), 0);
    s.net.assign(static_cast<size_t>(n), 0);
    s.word[0] = {0, 1};
    s.count[0] = 1;
    s.net[0] = 1;
    s.required = 2 * (n - 1) + 1;
    if (s.dfs(1)) {
      KnotWord word;
      word.generators = n;
      word.tokens = s.word;
      return KnotSearchResult{length, std::move(word)};
    }
  }
  return std::nullopt;
}

std::string format_word(const KnotWord& word) {
  std::ostringstream out;
  bool first = true;
  for (const KnotToken& t : word.tokens) {
    if (!first) out << ' ';
    first = false;
    if (t.symbol == kRing)
      out << 'O';
    else
      out << 'x' << (t.symbol + 1);
    if (t.sign < 0) out << '\'';
  }
  return out.str();
}

KnotWord parse_word(std::string_view text, int generators) {
  KnotWord word;
  std::istringstream in{std::string(text)};
  std::string tok;
  int max_symbol = -1;
  while (in >> tok) {
    KnotToken t;
    t.sign = 1;
    if (tok.back() == '\'') {
      t.sign = -1;
      tok.pop_back();
    }
    if (tok == "O") {
      t.symbol = kRing;
    } else if (tok.size() >= 2 && tok[0] == 'x') {
      int idx = 0;
      auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), idx);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || idx < 1)
        throw std::invalid_argument("bad knot token: " + tok);
      t.symbol = idx - 1;
      max_symbol = std::max(max_symbol, t.symbol);
    } else {
      throw std::invalid_argument("bad knot token: " + tok);
    }
    word.tokens.push_back(t);
  }
  word.generators = std::max(generators, max_symbol + 1);
  return word;
}

}  // namespace padlock
