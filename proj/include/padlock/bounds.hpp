#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "padlock/core.hpp"

namespace padlock {

/// Binomials and knot wrapping counts leave 64 bits quickly; everything in
/// this module is integer-exact.
using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(long long t, long long k);

/// Smallest t with C(t, floor(t/2)) >= n. Equals the minimal padlock count
/// of any 2-out-of-n arrangement.
long long sperner_min_t(long long n);

/// Maximum of all applicable lower bounds on the padlock count of a
/// k-out-of-n threshold arrangement.
long long lower_bound(int k, long long n);
long long lower_bound(int k, long long n, std::vector<std::string>* witnesses);

/// floor(t/k * floor((t-1)/(k-1))): upper bound on the number of blocks of a
/// maximal packing of order t with blocksize k.
long long johnson_bound(long long t, long long k);

/// Padlock count of the triad construction on t = 6v+3 points (smallest v
/// with enough blocks for n participants), and of the 6mu+1 variant.
long long bose_padlocks(long long n);
long long skolem_padlocks(long long n);

// ---------------------------------------------------------------------------
// Recursive construction planning.
//
// The recursive scheme composes, per split level, a k-of-n0 system shared by
// both halves with AND pairs of smaller thresholds. Every sub-system is the
// cheapest known construction for its (k, m); the same plan is folded for
// counting and walked for building, so the two can never drift apart.
// ---------------------------------------------------------------------------

enum class SchemeKind { SinglePadlock, TwoOfN, Direct, Bose, Skolem, Split };

struct RecursivePlan;
using PlanPtr = std::shared_ptr<const RecursivePlan>;

struct RecursivePlan {
  SchemeKind kind = SchemeKind::Direct;
  int k = 0;
  long long n = 0;
  long long padlocks = 0;
  long long points = 0;  // STS order t (Bose/Skolem only)
  PlanPtr top;           // Split: the k-of-n0 sub-plan
  std::vector<std::pair<PlanPtr, PlanPtr>> branches;  // Split: (i-of-n0, (k-i)-of-n1)
};

PlanPtr plan_recursive(int k, long long n);

/// Total keys distributed by the planned system, and keys held by its first
/// `c` participants (the split duplicates the top system's first n1 key sets
/// into the second half, so prefixes matter for odd n).
long long plan_total_keys(const PlanPtr& plan);
long long plan_prefix_keys(const PlanPtr& plan, long long c);

/// Exact padlock count of the system build_recursive(k, n) produces,
/// computed by the same recursion without building.
long long recursive_padlock_count(int k, long long n);

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Average keys per participant of the planned system, exact.
Rational recursive_key_average(int k, long long n);

/// Exact length of the knotted construction's word.
BigInt knot_wrapping_count(int k, int n);

struct BoundResult {
  int k = 0;
  long long n = 0;
  long long lower = 0;
  long long upper = 0;
  std::vector<std::string> lower_witnesses;
  std::string upper_witness;
};

/// Best known lower and upper bound with named witnesses. Every upper-bound
/// candidate is capped by the direct n-padlock device.
BoundResult best_known(int k, long long n);

std::string scheme_name(SchemeKind kind);

}  // namespace padlock
