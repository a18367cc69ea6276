#include "padlock/json_io.hpp"

#include <algorithm>

namespace padlock {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json node_to_json(const DeviceCircuit& circuit, int idx) {
  const auto& node = circuit.nodes()[static_cast<size_t>(idx)];
  ordered_json out;
  switch (node.kind) {
    case DeviceCircuit::NodeKind::Lock:
      out["t"] = "lock";
      out["id"] = node.lock;
      break;
    case DeviceCircuit::NodeKind::Threshold: {
      out["t"] = "thr";
      out["m"] = node.required;
      ordered_json ch = ordered_json::array();
      for (int c : node.children) ch.push_back(node_to_json(circuit, c));
      out["ch"] = std::move(ch);
      break;
    }
    case DeviceCircuit::NodeKind::WeightedThreshold: {
      out["t"] = "wthr";
      out["W"] = node.required;
      out["w"] = node.weights;
      ordered_json ch = ordered_json::array();
      for (int c : node.children) ch.push_back(node_to_json(circuit, c));
      out["ch"] = std::move(ch);
      break;
    }
  }
  return out;
}

long long require_int(const json& doc, const std::string& path) {
  if (!doc.is_number_integer())
    throw ParseError(path, "expected an integer");
  return doc.get<long long>();
}

const json& require_field(const json& doc, const char* field,
                          const std::string& path) {
  if (!doc.is_object()) throw ParseError(path, "expected an object");
  auto it = doc.find(field);
  if (it == doc.end())
    throw ParseError(path, std::string("missing field '") + field + "'");
  return *it;
}

int node_from_json(const json& doc, const std::string& path, DeviceCircuit& out) {
  const json& tag = require_field(doc, "t", path);
  if (!tag.is_string()) throw ParseError(path + ".t", "expected a string");
  const std::string kind = tag.get<std::string>();
  try {
    if (kind == "lock") {
      return out.add_lock(
          static_cast<int>(require_int(require_field(doc, "id", path), path + ".id")));
    }
    if (kind == "thr" || kind == "wthr") {
      const json& ch = require_field(doc, "ch", path);
      if (!ch.is_array() || ch.empty())
        throw ParseError(path + ".ch", "expected a non-empty array");
      std::vector<int> children;
      for (size_t i = 0; i < ch.size(); ++i)
        children.push_back(
            node_from_json(ch[i], path + ".ch[" + std::to_string(i) + "]", out));
      if (kind == "thr") {
        const int m = static_cast<int>(
            require_int(require_field(doc, "m", path), path + ".m"));
        return out.add_threshold(m, std::move(children));
      }
      const json& w = require_field(doc, "w", path);
      if (!w.is_array() || w.size() != children.size())
        throw ParseError(path + ".w", "expected one weight per child");
      std::vector<int> weights;
      for (size_t i = 0; i < w.size(); ++i)
        weights.push_back(static_cast<int>(
            require_int(w[i], path + ".w[" + std::to_string(i) + "]")));
      const int req = static_cast<int>(
          require_int(require_field(doc, "W", path), path + ".W"));
      return out.add_weighted(req, std::move(weights), std::move(children));
    }
  } catch (const CircuitError& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(path + ".t", "unknown node kind '" + kind + "'");
}

}  // namespace

nlohmann::ordered_json system_to_json(const ThresholdSystem& system) {
  ordered_json out;
  out["n"] = system.participants();
  out["padlocks"] = system.padlocks;
  out["circuit"] = node_to_json(system.circuit, system.circuit.root());
  ordered_json keys = ordered_json::array();
  for (const auto& ks : system.distribution.keys) {
    auto sorted = ks;
    std::sort(sorted.begin(), sorted.end());
    keys.push_back(sorted);
  }
  out["keys"] = std::move(keys);
  return out;
}

ThresholdSystem system_from_json(const nlohmann::json& doc) {
  ThresholdSystem sys;
  const long long n = require_int(require_field(doc, "n", "$"), "n");
  const long long padlocks =
      require_int(require_field(doc, "padlocks", "$"), "padlocks");
  if (n < 1) throw ParseError("n", "need at least one participant");
  if (padlocks < 1) throw ParseError("padlocks", "need at least one padlock");
  sys.padlocks = static_cast<int>(padlocks);
  node_from_json(require_field(doc, "circuit", "$"), "circuit", sys.circuit);
  sys.circuit.set_root(static_cast<int>(sys.circuit.nodes().size()) - 1);

  const json& keys = require_field(doc, "keys", "$");
  if (!keys.is_array() || keys.size() != static_cast<size_t>(n))
    throw ParseError("keys", "expected one key set per participant");
  sys.distribution.participants = static_cast<int>(n);
  for (size_t p = 0; p < keys.size(); ++p) {
    const std::string path = "keys[" + std::to_string(p) + "]";
    if (!keys[p].is_array()) throw ParseError(path, "expected an array");
    std::vector<int> ks;
    for (size_t i = 0; i < keys[p].size(); ++i)
      ks.push_back(static_cast<int>(
          require_int(keys[p][i], path + "[" + std::to_string(i) + "]")));
    std::sort(ks.begin(), ks.end());
    sys.distribution.keys.push_back(std::move(ks));
  }
  try {
    validate_system(sys);
  } catch (const CircuitError& e) {
    throw ParseError("$", e.what());
  }
  return sys;
}

nlohmann::ordered_json report_to_json(const VerificationReport& report) {
  ordered_json out;
  out["verdict"] = report.verdict;
  out["k"] = report.k;
  out["n"] = report.n;
  out["padlocks"] = report.padlocks;
  out["failing_open"] = report.failing_open ? ordered_json(*report.failing_open)
                                            : ordered_json(nullptr);
  out["failing_closed"] = report.failing_closed
                              ? ordered_json(*report.failing_closed)
                              : ordered_json(nullptr);
  return out;
}

nlohmann::ordered_json bound_to_json(const BoundResult& bound) {
  ordered_json out;
  out["k"] = bound.k;
  out["n"] = bound.n;
  out["lower"] = bound.lower;
  out["upper"] = bound.upper;
  out["lower_witnesses"] = bound.lower_witnesses;
  out["upper_witness"] = bound.upper_witness;
  return out;
}

std::string circuit_hash_hex(const DeviceCircuit& circuit) {
  const std::string canon = node_to_json(circuit, circuit.root()).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

nlohmann::ordered_json shares_to_json(const DealResult& dealt,
                                      const DeviceCircuit& circuit) {
  ordered_json out;
  out["q"] = dealt.q;
  out["circuit_hash"] = circuit_hash_hex(circuit);
  ordered_json shares = ordered_json::array();
  for (const ShareRecord& r : dealt.records) {
    ordered_json s;
    s["padlock"] = r.padlock;
    s["point_path"] = r.path;
    s["value"] = r.value;
    shares.push_back(std::move(s));
  }
  out["shares"] = std::move(shares);
  return out;
}

ShareFile shares_from_json(const nlohmann::json& doc) {
  ShareFile out;
  out.q = require_int(require_field(doc, "q", "$"), "q");
  const json& hash = require_field(doc, "circuit_hash", "$");
  if (!hash.is_string()) throw ParseError("circuit_hash", "expected a string");
  out.circuit_hash = hash.get<std::string>();
  const json& shares = require_field(doc, "shares", "$");
  if (!shares.is_array()) throw ParseError("shares", "expected an array");
  for (size_t i = 0; i < shares.size(); ++i) {
    const std::string path = "shares[" + std::to_string(i) + "]";
    ShareRecord r;
    r.padlock = static_cast<int>(
        require_int(require_field(shares[i], "padlock", path), path + ".padlock"));
    const json& pp = require_field(shares[i], "point_path", path);
    if (!pp.is_string()) throw ParseError(path + ".point_path", "expected a string");
    r.path = pp.get<std::string>();
    if (r.path.empty()) throw ParseError(path + ".point_path", "must be non-empty");
    const size_t last_dot = r.path.rfind('.');
    const std::string last =
        last_dot == std::string::npos ? r.path : r.path.substr(last_dot + 1);
    try {
      r.point = std::stoll(last) + 1;
    } catch (const std::exception&) {
      throw ParseError(path + ".point_path", "malformed slot path");
    }
    r.value = require_int(require_field(shares[i], "value", path), path + ".value");
    out.records.push_back(std::move(r));
  }
  return out;
}

std::string canonical_dump(const nlohmann::ordered_json& doc) {
  return doc.dump();
}

}  // namespace padlock
