#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "padlock/bounds.hpp"
#include "padlock/core.hpp"
#include "padlock/verify.hpp"

namespace padlock {

/// Monotone normal form: no negations, clauses over named variables.
struct Formula {
  enum class Kind { Dnf, Cnf };
  Kind kind = Kind::Dnf;
  std::vector<std::string> variables;      // first-occurrence order
  std::vector<std::vector<int>> clauses;   // indices into variables, sorted
};

/// Tiny grammar: clauses separated by '+' (DNF) or '*' (CNF), variables
/// joined by '.', e.g. "A.B + A.C + B.D + E".
Formula parse_formula(std::string_view text, Formula::Kind kind);

struct CompiledFormula {
  DeviceCircuit circuit;  // one padlock per distinct variable
  std::vector<std::string> variables;  // variable i <-> padlock id i
};

CompiledFormula compile_dnf(const Formula& formula);
CompiledFormula compile_cnf(const Formula& formula);

/// Wraps a compiled formula as a system where participant i owns the padlock
/// of variable i.
ThresholdSystem formula_system(const CompiledFormula& compiled);

/// n padlocks, one key each, k-of-n sliding-bar device.
ThresholdSystem build_direct(int k, int n);

/// 2-of-n with shared keys: an (i+1)-of-t device with i = floor(t/2),
/// t = sperner_min_t(n), distinct i-subsets of keys per participant.
/// Degrades to the direct device when t = n.
ThresholdSystem build_2_of_n(int n);

/// 2-of-n double daisy chain: ceil(log2 n) links, each blocked by a white
/// and a black padlock; participants hold keys along their binary digits.
ThresholdSystem build_double_daisy(int n);

/// The 4-padlock realization of (A and B) or (B and C) or (C and D).
ThresholdSystem build_benaloh();

/// One padlock per weight entry, participant i owns padlock i; opens when
/// the open weight reaches `required_weight`.
ThresholdSystem build_weighted(const std::vector<int>& weights,
                               int required_weight);

/// Steiner triple system on t = 6v+3 points (values 1..t), every pair of
/// points in exactly one triad. Deterministic emission order.
std::vector<Triad> bose_triples(int v);

/// Steiner triple system on t = 6mu+1 points (values 1..t), built from a
/// half-idempotent commutative quasigroup on 2mu points plus one extra point.
std::vector<Triad> skolem_triples(int mu);

/// 3-threshold system from any Steiner triad distribution: the first n
/// triads are handed out, the device opens on 7 of the t keys or on any
/// six-key union of three distributed triads.
ThresholdSystem steiner_3_system(int t, const std::vector<Triad>& triads, int n);

/// 3-of-n via the 6v+3 triad construction; direct device when that is not
/// smaller than n.
ThresholdSystem build_3_of_n(int n);

/// The 13-participant, 11-padlock fixture: triads without any reused pair
/// and the device (7 of 1..11) OR ((6 of 1..11) AND ((3 of 8..11) OR (5 of 1..7))).
ThresholdSystem fixture_13_participants();

/// Recursive k-of-n: cheapest known construction per sub-system, halving
/// splits with duplicated top-system keys and AND-paired complementary
/// thresholds. Padlock count equals recursive_padlock_count(k, n).
ThresholdSystem build_recursive(int k, int n);

/// Builds the system a RecursivePlan describes.
ThresholdSystem build_from_plan(const RecursivePlan& plan);

}  // namespace padlock
