#include "padlock/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "padlock/bounds.hpp"
#include "padlock/constructions.hpp"
#include "padlock/json_io.hpp"
#include "padlock/knots.hpp"
#include "padlock/sharing.hpp"
#include "padlock/verify.hpp"

namespace padlock::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

nlohmann::json parse_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

void write_output(const std::string& text, const std::string& out_path,
                  std::ostream& out) {
  if (out_path.empty()) {
    out << text << "\n";
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write file: " + out_path);
  f << text << "\n";
}

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int value = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::exception&) {
      throw UsageError(std::string("malformed ") + what + " list: " + csv);
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

struct ConstructArgs {
  std::string scheme;
  int k = 0;
  int n = 0;
  std::string formula;
  std::string weights;
  int required_weight = 0;
  bool verify = false;
  int limit = kDefaultEnumerationLimit;
  std::string out_path;
};

int run_construct(const ConstructArgs& a, std::ostream& out) {
  ThresholdSystem sys;
  std::optional<int> implied_k;
  if (a.scheme == "direct") {
    if (a.k < 1 || a.n < 1) throw UsageError("direct needs --k and --n");
    sys = build_direct(a.k, a.n);
    implied_k = a.k;
  } else if (a.scheme == "two") {
    if (a.n < 2) throw UsageError("two needs --n >= 2");
    sys = build_2_of_n(a.n);
    implied_k = 2;
  } else if (a.scheme == "daisy") {
    if (a.n < 2) throw UsageError("daisy needs --n >= 2");
    sys = build_double_daisy(a.n);
    implied_k = 2;
  } else if (a.scheme == "dnf" || a.scheme == "cnf") {
    if (a.formula.empty()) throw UsageError(a.scheme + " needs --formula");
    const auto kind =
        a.scheme == "dnf" ? Formula::Kind::Dnf : Formula::Kind::Cnf;
    const Formula f = parse_formula(a.formula, kind);
    sys = formula_system(a.scheme == "dnf" ? compile_dnf(f) : compile_cnf(f));
  } else if (a.scheme == "benaloh") {
    sys = build_benaloh();
  } else if (a.scheme == "weighted") {
    if (a.weights.empty() || a.required_weight < 1)
      throw UsageError("weighted needs --weights and --W");
    sys = build_weighted(parse_int_list(a.weights, "weight"), a.required_weight);
  } else if (a.scheme == "bose") {
    if (a.n < 3) throw UsageError("bose needs --n >= 3");
    sys = build_3_of_n(a.n);
    implied_k = 3;
  } else if (a.scheme == "fixture13") {
    sys = fixture_13_participants();
    implied_k = 3;
  } else if (a.scheme == "recursive") {
    if (a.k < 2 || a.n < a.k) throw UsageError("recursive needs 2 <= --k <= --n");
    sys = build_recursive(a.k, a.n);
    implied_k = a.k;
  } else {
    throw UsageError("unknown scheme: " + a.scheme);
  }

  write_output(canonical_dump(system_to_json(sys)), a.out_path, out);
  if (a.verify) {
    int k = a.k >= 1 ? a.k : implied_k.value_or(0);
    if (k < 1) throw UsageError("--verify needs --k for this scheme");
    const VerificationReport report = verify_threshold(sys, k, a.limit);
    out << canonical_dump(report_to_json(report)) << "\n";
  }
  return 0;
}

int run_with_app(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"threshold padlock systems: construction, verification, "
               "bounds, knots, and small-field secret sharing"};
  app.require_subcommand(1);

  // construct
  auto construct = app.add_subcommand("construct", "build a padlock system");
  ConstructArgs ca;
  construct->add_option("--scheme", ca.scheme, "one of direct|two|daisy|dnf|cnf|benaloh|weighted|bose|fixture13|recursive")->required();
  construct->add_option("--k", ca.k, "threshold");
  construct->add_option("--n", ca.n, "participants");
  construct->add_option("--formula", ca.formula, "normal form, e.g. \"A.B + A.C + E\"");
  construct->add_option("--weights", ca.weights, "per-padlock weights, e.g. 2,1,1,1");
  construct->add_option("--W", ca.required_weight, "required open weight");
  construct->add_flag("--verify", ca.verify, "run the threshold verifier inline");
  construct->add_option("--limit", ca.limit, "enumeration limit for --verify");
  construct->add_option("--out", ca.out_path, "write the system JSON here");

  // verify
  auto verify = app.add_subcommand("verify", "verify a system file");
  std::string verify_system;
  int verify_k = 0;
  int verify_limit = kDefaultEnumerationLimit;
  verify->add_option("--system", verify_system, "system JSON file")->required();
  verify->add_option("--k", verify_k, "threshold to check")->required();
  verify->add_option("--limit", verify_limit, "enumeration limit");

  // bounds
  auto bounds = app.add_subcommand("bounds", "lower/upper padlock bounds");
  int bounds_k = 0;
  long long bounds_n = 0;
  bounds->add_option("--k", bounds_k)->required();
  bounds->add_option("--n", bounds_n)->required();

  // table
  auto table = app.add_subcommand("table", "CSV of bounds over a range");
  int table_k = 0, table_kmax = 0;
  long long table_n = 0, table_nmax = 0;
  table->add_option("--k", table_k, "fixed threshold");
  table->add_option("--n-max", table_nmax, "largest n for a fixed k");
  table->add_option("--n", table_n, "fixed participant count");
  table->add_option("--k-max", table_kmax, "largest k for a fixed n");

  // knot
  auto knot = app.add_subcommand("knot", "knotted padlock words");
  std::vector<int> knot_build, knot_search;
  std::string knot_file;
  int knot_k = 0, knot_n = 0, knot_limit = kDefaultEnumerationLimit;
  knot->add_option("--build", knot_build, "k n")->expected(2);
  knot->add_option("--verify", knot_file, "word file to verify");
  knot->add_option("--search", knot_search, "k n [max_len]")->expected(2, 3);
  int knot_max_len = 0;
  knot->add_option("--max-len", knot_max_len, "largest word length to search");
  knot->add_option("--k", knot_k);
  knot->add_option("--n", knot_n);
  knot->add_option("--limit", knot_limit, "enumeration limit");

  // share
  auto share = app.add_subcommand("share", "deal shares for a system circuit");
  std::string share_system, share_out;
  long long share_secret = 0, share_q = 0;
  std::uint64_t share_seed = 0;
  share->add_option("--system", share_system)->required();
  share->add_option("--secret", share_secret)->required();
  share->add_option("--q", share_q, "prime field size (default: minimal)");
  share->add_option("--seed", share_seed, "dealer randomness seed");
  share->add_option("--out", share_out, "write the share file here");

  // reconstruct
  auto rec = app.add_subcommand("reconstruct", "reconstruct from a coalition's shares");
  std::string rec_system, rec_shares, rec_coalition;
  rec->add_option("--system", rec_system)->required();
  rec->add_option("--shares", rec_shares)->required();
  rec->add_option("--coalition", rec_coalition, "participant ids, e.g. 1,4,7")->required();

  std::vector<const char*> argv;
  argv.push_back("padlock");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (construct->parsed()) return run_construct(ca, out);

  if (verify->parsed()) {
    const ThresholdSystem sys = system_from_json(parse_json_file(verify_system));
    const VerificationReport report = verify_threshold(sys, verify_k, verify_limit);
    out << canonical_dump(report_to_json(report)) << "\n";
    return 0;
  }

  if (bounds->parsed()) {
    out << canonical_dump(bound_to_json(best_known(bounds_k, bounds_n))) << "\n";
    return 0;
  }

  if (table->parsed()) {
    out << "k,n,lower,upper,upper_witness\n";
    if (table_k >= 1 && table_nmax >= table_k) {
      for (long long n = table_k; n <= table_nmax; ++n) {
        const BoundResult b = best_known(table_k, n);
        out << b.k << "," << b.n << "," << b.lower << "," << b.upper << ","
            << b.upper_witness << "\n";
      }
    } else if (table_n >= 1 && table_kmax >= 1) {
      for (int k = 1; k <= table_kmax && k <= table_n; ++k) {
        const BoundResult b = best_known(k, table_n);
        out << b.k << "," << b.n << "," << b.lower << "," << b.upper << ","
            << b.upper_witness << "\n";
      }
    } else {
      throw UsageError("table needs --k with --n-max, or --n with --k-max");
    }
    return 0;
  }

  if (knot->parsed()) {
    const int modes = (knot_build.empty() ? 0 : 1) + (knot_file.empty() ? 0 : 1) +
                      (knot_search.empty() ? 0 : 1);
    if (modes != 1)
      throw UsageError("knot needs exactly one of --build, --verify, --search");
    if (!knot_build.empty()) {
      out << format_word(build_knot(knot_build[0], knot_build[1])) << "\n";
      return 0;
    }
    if (!knot_file.empty()) {
      if (knot_k < 1 || knot_n < 1)
        throw UsageError("knot --verify needs --k and --n");
      const KnotWord word = parse_word(read_file(knot_file), knot_n);
      const VerificationReport report =
          verify_knot_threshold(word, knot_k, knot_n, knot_limit);
      out << canonical_dump(report_to_json(report)) << "\n";
      return 0;
    }
    const int max_len =
        knot_search.size() == 3 ? knot_search[2] : knot_max_len;
    if (max_len < 1)
      throw UsageError("knot --search needs a max length (third value or --max-len)");
    const auto result = search_minimal(knot_search[0], knot_search[1], max_len);
    nlohmann::ordered_json doc;
    doc["found"] = result.has_value();
    if (result) {
      doc["length"] = result->length;
      doc["word"] = format_word(result->word);
    }
    out << canonical_dump(doc) << "\n";
    return 0;
  }

  if (share->parsed()) {
    const ThresholdSystem sys = system_from_json(parse_json_file(share_system));
    const long long q = share_q > 0 ? share_q : min_field_size(sys.circuit);
    const DealResult dealt = deal_seeded(sys.circuit, share_secret, q, share_seed);
    write_output(canonical_dump(shares_to_json(dealt, sys.circuit)), share_out, out);
    return 0;
  }

  if (rec->parsed()) {
    const ThresholdSystem sys = system_from_json(parse_json_file(rec_system));
    const ShareFile file = shares_from_json(parse_json_file(rec_shares));
    if (file.circuit_hash != circuit_hash_hex(sys.circuit))
      throw IntegrityError("share file was dealt for a different circuit");
    std::vector<int> coalition = parse_int_list(rec_coalition, "coalition");
    OpenSet opened(sys.padlocks);
    for (int p : coalition) {
      if (p < 0 || p >= sys.participants())
        throw UsageError("coalition member out of range: " + std::to_string(p));
      for (PadlockId id : sys.keys_of(p)) opened.open(id);
    }
    std::vector<ShareRecord> visible;
    for (const ShareRecord& r : file.records)
      if (opened.contains(r.padlock)) visible.push_back(r);
    const auto secret = reconstruct(sys.circuit, visible, file.q);
    nlohmann::ordered_json doc;
    doc["ok"] = secret.has_value();
    if (secret)
      doc["secret"] = *secret;
    else
      doc["reason"] = "insufficient shares";
    doc["q"] = file.q;
    out << canonical_dump(doc) << "\n";
    return 0;
  }

  throw UsageError("no subcommand given");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    return run_with_app(args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace padlock::cli
