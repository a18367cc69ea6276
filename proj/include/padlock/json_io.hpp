#pragma once

#include <string>

#include <json.hpp>

#include "padlock/bounds.hpp"
#include "padlock/core.hpp"
#include "padlock/sharing.hpp"
#include "padlock/verify.hpp"

namespace padlock {

/// Raised on malformed input documents; `path` names the offending location
/// ("circuit.ch[2].m").
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : std::runtime_error("at " + path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Canonical system schema:
///   {"n": int, "padlocks": int, "circuit": node, "keys": [[int,...], ...]}
///   node = {"t":"lock","id":int} | {"t":"thr","m":int,"ch":[node,...]}
///        | {"t":"wthr","W":int,"w":[int,...],"ch":[node,...]}
/// Emission is canonical (sorted key sets, fixed field order, compact dump),
/// so parse-then-emit is the identity on canonical documents.
nlohmann::ordered_json system_to_json(const ThresholdSystem& system);
ThresholdSystem system_from_json(const nlohmann::json& doc);

nlohmann::ordered_json report_to_json(const VerificationReport& report);
nlohmann::ordered_json bound_to_json(const BoundResult& bound);

/// Share file: {"q": int, "circuit_hash": hex, "shares":
///   [{"padlock": int, "point_path": "2.0", "value": int}, ...]}
nlohmann::ordered_json shares_to_json(const DealResult& dealt,
                                      const DeviceCircuit& circuit);
struct ShareFile {
  long long q = 0;
  std::string circuit_hash;
  std::vector<ShareRecord> records;
};
ShareFile shares_from_json(const nlohmann::json& doc);

/// FNV-1a over the canonical circuit document; stable across runs and
/// platforms.
std::string circuit_hash_hex(const DeviceCircuit& circuit);

std::string canonical_dump(const nlohmann::ordered_json& doc);

}  // namespace padlock
