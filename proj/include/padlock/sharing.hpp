#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "padlock/core.hpp"

namespace padlock {

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One dealt evaluation. `path` is the dotted slot trail from the root
/// ("2.0" = slot 0 of the gate at the root's slot 2); the evaluation point at
/// the parent gate is the last slot index plus one. A padlock occurring under
/// several gates holds one record per occurrence: identical keys, several
/// evaluations.
struct ShareRecord {
  PadlockId padlock = -1;
  std::string path;
  long long point = 0;
  long long value = 0;
};

struct DealResult {
  long long q = 0;
  std::vector<ShareRecord> records;   // depth-first, deterministic order
  std::vector<long long> transcript;  // sampled coefficients, in draw order
};

bool is_prime(long long q);

/// Smallest prime strictly above the largest interpolating gate fan-in
/// (a weight-w child occupies w evaluation points; 1-of-m gates deal a
/// constant and need no distinct points), so every gate that interpolates
/// has enough distinct non-zero points.
long long min_field_size(const DeviceCircuit& circuit);

/// Recursive dealing: the node secret sits in the constant term of a fresh
/// degree-(m-1) polynomial per gate; slot s receives f(s+1). Weighted gates
/// are expanded so a weight-w child is dealt at w slots. `draw()` must yield
/// uniform values in [0, q).
DealResult deal(const DeviceCircuit& circuit, long long secret, long long q,
                const std::function<long long()>& draw);

DealResult deal_seeded(const DeviceCircuit& circuit, long long secret,
                       long long q, std::uint64_t seed);

/// Re-deals with a recorded transcript; same transcript, same shares.
DealResult replay(const DeviceCircuit& circuit, long long secret, long long q,
                  const std::vector<long long>& transcript);

/// Bottom-up mirror of evaluate: a leaf occurrence resolves iff its record is
/// present, a gate resolves iff enough slots do (Lagrange at zero over the
/// first resolved slots). Missing shares yield nullopt; conflicting
/// duplicates throw IntegrityError.
std::optional<long long> reconstruct(const DeviceCircuit& circuit,
                                     const std::vector<ShareRecord>& records,
                                     long long q);

/// Keeps only the records of padlocks owned by the coalition.
std::vector<ShareRecord> records_for_coalition(
    const ThresholdSystem& system, const DealResult& dealt,
    const std::vector<Participant>& coalition);

/// Exhaustive perfect-privacy certification: enumerates every secret and
/// every dealer randomness and compares the multiset of share tuples visible
/// to `unauthorized` padlocks across secrets. Desk-scale circuits only.
bool privacy_check(const DeviceCircuit& circuit, long long q,
                   const std::vector<PadlockId>& unauthorized,
                   long long budget = 2'000'000);

}  // namespace padlock
