// mcg: command-line front end for metacyclic data sets.
// Exit status: 0 success or positive verdict, 1 negative verdict, 2 bad input, 3 internal error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcg/applications.hpp"
#include "mcg/classify.hpp"
#include "mcg/cyclic.hpp"
#include "mcg/derive.hpp"
#include "mcg/meta.hpp"
#include "mcg/notation.hpp"

using namespace mcg;
using ojson = nlohmann::ordered_json;

namespace {

enum class Format { text, json, csv };

struct RunConfig {
  std::string command;
  Format format = Format::text;
  std::string output;
  unsigned workers = 0;

  std::string meta, cyclic, file;
  std::string method = "both";

  Int genus = 0;
  bool nonsplit = false;
  bool exclude_quaternion = false;
  std::string equivalence = "per-pair";
  Int max_order = 0;
  std::string group;
  bool progress = false;

  std::string df, dg;
  Int u = 0, r = 0, k = 0;
  bool all = false;
};

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  return slurp(in);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

// A flag value is either the notation itself or a path to a file holding it.
std::string text_or_file(const std::string& arg) {
  const std::string t = trim(arg);
  if (!t.empty() && (t[0] == '(' || t[0] == '{')) return t;
  std::ifstream probe(arg);
  if (probe) return trim(slurp(probe));
  return t;
}

using DataSet = std::variant<CyclicDataSet, MetacyclicDataSet>;

DataSet parse_any(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t[0] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::parse_error& e) {
      throw mcg::ParseError("malformed JSON", e.byte > 0 ? e.byte - 1 : 0, "");
    }
    if (j.value("kind", "") == "metacyclic") return meta_from_json(j);
    if (j.value("kind", "") == "cyclic") return cyclic_from_json(j);
    throw InputError("JSON input needs \"kind\": \"cyclic\" or \"metacyclic\"");
  }
  // metacyclic sets open with the group triple
  if (t.rfind("((", 0) == 0) return parse_meta(t);
  return parse_cyclic(t);
}

DataSet read_data_set(const RunConfig& cfg) {
  if (!cfg.meta.empty()) return parse_meta(text_or_file(cfg.meta));
  if (!cfg.cyclic.empty()) return parse_cyclic(text_or_file(cfg.cyclic));
  if (!cfg.file.empty() && cfg.file != "-") return parse_any(read_file(cfg.file));
  return parse_any(slurp(std::cin));
}

MetacyclicDataSet read_meta(const RunConfig& cfg) {
  auto D = read_data_set(cfg);
  if (auto* m = std::get_if<MetacyclicDataSet>(&D)) return *m;
  throw InputError(cfg.command + " needs a metacyclic data set");
}

CyclicDataSet read_cyclic(const RunConfig& cfg, const std::string& flag) {
  if (!flag.empty()) return parse_cyclic(text_or_file(flag));
  auto D = read_data_set(cfg);
  if (auto* c = std::get_if<CyclicDataSet>(&D)) return *c;
  throw InputError(cfg.command + " needs a cyclic data set");
}

GroupParams parse_group(const std::string& s) {
  std::vector<Int> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(trim(part), &used));
      if (used != trim(part).size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw InputError("--group expects u,n,r,k, got '" + s + "'");
    }
  }
  if (v.size() != 4) throw InputError("--group expects u,n,r,k, got '" + s + "'");
  return checked_params(v[0], v[1], v[2], v[3]);
}

std::string canon(const CyclicDataSet& D) { return print_cyclic(sorted_cyclic(D)); }

// key,value rows for the commands that have no table shape
void flatten(const ojson& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : v) {
        if (c == '"') q += '"';
        q += c;
      }
      v = q + "\"";
    }
    os << prefix << ',' << v << '\n';
  }
}

std::string as_csv(const ojson& j) {
  std::ostringstream os;
  os << "key,value\n";
  flatten(j, "", os);
  return os.str();
}

struct Output {
  std::string body;
  int status = 0;
};

Output emit(const RunConfig& cfg, const std::string& text, const ojson& j, int status) {
  switch (cfg.format) {
    case Format::json: return {j.dump(2) + "\n", status};
    case Format::csv: return {as_csv(j), status};
    default: return {text, status};
  }
}

std::string validity_line(const std::string& name, const ValidationReport& R) {
  std::string s = name + ": " + to_string(R.verdict) + ", genus " + R.genus.str();
  if (!R.valid()) s += ", fails " + R.failed_condition + (R.message.empty() ? "" : " (" + R.message + ")");
  return s + "\n";
}

Output cmd_validate(const RunConfig& cfg) {
  const auto D = read_data_set(cfg);
  if (const auto* C = std::get_if<CyclicDataSet>(&D)) {
    const auto v = validate_cyclic(*C);
    std::ostringstream os;
    os << "data set " << print_cyclic(*C) << "\n";
    os << "verdict " << (v.valid ? "valid" : "invalid") << "\n";
    os << "genus " << v.genus.str() << "\n";
    if (!v.valid) os << "failed condition " << to_string(v.failed) << (v.message.empty() ? "" : ": " + v.message) << "\n";
    ojson j;
    j["schema"] = "mcg/1";
    j["kind"] = "cyclic_validation";
    j["data_set"] = print_cyclic(*C);
    j["verdict"] = v.valid ? "valid" : "invalid";
    j["genus"] = v.genus.str();
    if (!v.valid) {
      j["failed_condition"] = to_string(v.failed);
      j["message"] = v.message;
    }
    return emit(cfg, os.str(), j, v.valid ? 0 : 1);
  }

  const auto& M = std::get<MetacyclicDataSet>(D);
  if (cfg.method != "literal" && cfg.method != "oracle" && cfg.method != "both")
    throw InputError("--method must be literal, oracle or both");
  std::optional<ValidationReport> lit, orc;
  if (cfg.method != "oracle") lit = validate_meta(M);
  if (cfg.method != "literal") orc = validate_meta_oracle(M);
  // the oracle is exhaustive, so it decides when both ran
  const ValidationReport& decisive = orc ? *orc : *lit;
  const bool disagree = lit && orc && lit->valid() != orc->valid();

  std::ostringstream os;
  os << "data set " << print_meta(M) << "\n";
  if (lit) os << validity_line("literal", *lit);
  if (orc) os << validity_line("oracle", *orc);
  if (disagree) os << "validators disagree; the oracle verdict stands\n";
  os << "verdict " << to_string(decisive.verdict) << "\n";
  os << "genus " << decisive.genus.str() << "\n";

  ojson j;
  j["schema"] = "mcg/1";
  j["kind"] = "meta_validation";
  j["data_set"] = print_meta(M);
  j["verdict"] = to_string(decisive.verdict);
  j["genus"] = decisive.genus.str();
  if (lit) j["literal"] = report_to_json(*lit);
  if (orc) j["oracle"] = report_to_json(*orc);
  if (lit && orc) j["agree"] = !disagree;
  return emit(cfg, os.str(), j, decisive.valid() ? 0 : 1);
}

Output cmd_derive(const RunConfig& cfg) {
  const auto D = read_meta(cfg);
  const auto v = validate_meta_oracle(D);
  if (!v.valid()) {
    std::ostringstream os;
    os << "data set " << print_meta(D) << "\n" << validity_line("oracle", v) << "nothing to derive\n";
    ojson j;
    j["schema"] = "mcg/1";
    j["kind"] = "derivation";
    j["data_set"] = print_meta(D);
    j["validation"] = report_to_json(v);
    return emit(cfg, os.str(), j, 1);
  }
  const auto H = make_group(D.params);
  const auto DF = derive_DF(D, H), DG = derive_DG(D, H), DGbar = derive_DGbar(D);
  std::ostringstream os;
  os << "data set " << print_meta(D) << "\n";
  os << "genus " << v.genus.str() << "\n";
  os << "D_F " << canon(DF) << "\n";
  os << "D_G " << canon(DG) << "\n";
  os << "D_Gbar " << canon(DGbar) << "\n";
  os << "[D_G;D_F] [" << canon(DG) << ";" << canon(DF) << "]\n";
  if (is_free(DF) || is_free(DG)) os << "note: a free factor's rotation class d is not determined by fixed points\n";
  ojson j;
  j["schema"] = "mcg/1";
  j["kind"] = "derivation";
  j["data_set"] = print_meta(D);
  j["genus"] = v.genus.str();
  j["D_F"] = canon(DF);
  j["D_G"] = canon(DG);
  j["D_Gbar"] = canon(DGbar);
  j["pair"] = "[" + canon(DG) + ";" + canon(DF) + "]";
  return emit(cfg, os.str(), j, 0);
}

Output cmd_classify(const RunConfig& cfg) {
  EnumerationFilters f;
  f.nonsplit_only = cfg.nonsplit;
  f.exclude_quaternion = cfg.exclude_quaternion;
  f.mode = parse_equivalence_mode(cfg.equivalence);
  f.max_order = cfg.max_order;
  f.workers = cfg.workers;
  if (!cfg.group.empty()) f.only = parse_group(cfg.group);
  if (cfg.progress) f.progress = [](const std::string& s) { std::cerr << s << "\n"; };
  const auto T = enumerate_meta(cfg.genus, f);
  switch (cfg.format) {
    case Format::json: return {table_to_json(T).dump(2) + "\n", 0};
    case Format::csv: return {table_to_csv(T), 0};
    default: return {table_to_text(T), 0};
  }
}

Output cmd_query_pair(const RunConfig& cfg) {
  if (cfg.df.empty() || cfg.dg.empty()) throw InputError("query-pair needs --df and --dg");
  const auto DF = parse_cyclic(text_or_file(cfg.df));
  const auto DG = parse_cyclic(text_or_file(cfg.dg));
  const auto found = query_pair(DF, DG, cfg.u, cfg.r, cfg.k);
  std::ostringstream os;
  os << "D_F " << print_cyclic(DF) << "\nD_G " << print_cyclic(DG) << "\n";
  os << "u " << cfg.u << ", r " << cfg.r << ", k " << cfg.k << "\n";
  if (found)
    os << "realized by " << print_meta(*found) << "\n";
  else
    os << "no metacyclic data set realizes this pair\n";
  ojson j;
  j["schema"] = "mcg/1";
  j["kind"] = "query_pair";
  j["D_F"] = print_cyclic(DF);
  j["D_G"] = print_cyclic(DG);
  j["u"] = cfg.u;
  j["r"] = cfg.r;
  j["k"] = cfg.k;
  j["exists"] = found.has_value();
  if (found) j["data_set"] = print_meta(*found);
  return emit(cfg, os.str(), j, found ? 0 : 1);
}

Output cmd_dicyclic(const RunConfig& cfg) {
  const auto DF = read_cyclic(cfg, cfg.df);
  const auto R = dicyclic_exists(DF);
  std::ostringstream os;
  os << "D_F " << print_cyclic(DF) << "\n";
  os << "extends to Dic_" << DF.n / 2 << ": " << (R.exists ? "yes" : "no") << "\n";
  if (!R.clause.empty()) os << "clause " << R.clause << "\n";
  if (R.witness)
    os << "witness " << print_meta(*R.witness) << " (" << (R.witness_valid ? "valid" : "invalid") << ", "
       << (R.witness_matches ? "derives D_F" : "derives a different D_F") << ")\n";
  if (!R.message.empty()) os << R.message << "\n";
  return emit(cfg, os.str(), dicyclic_to_json(R), R.exists ? 0 : 1);
}

Output cmd_lift(const RunConfig& cfg) {
  const auto D = read_meta(cfg);
  LiftTarget target;
  if (!cfg.df.empty()) target.DF = parse_cyclic(text_or_file(cfg.df));
  if (!cfg.dg.empty()) target.DG = parse_cyclic(text_or_file(cfg.dg));
  std::vector<LiftResult> lifts;
  if (cfg.all) {
    lifts = all_lifts(D);
  } else if (auto L = lift_to_split(D, target)) {
    lifts.push_back(*L);
  }
  std::ostringstream os;
  os << "data set " << print_meta(D) << "\n";
  if (lifts.empty()) os << "no split lift" << (target.DF || target.DG ? " with the requested factors" : "") << "\n";
  ojson arr = ojson::array();
  for (const auto& L : lifts) {
    os << "lift nu=" << L.nu << " shifts";
    for (Int a : L.shifts) os << ' ' << a;
    os << ": " << print_meta(L.lifted) << ", genus " << L.genus << "\n";
    os << "  [D_G;D_F] [" << canon(derive_DG(L.lifted)) << ";" << canon(derive_DF(L.lifted)) << "]\n";
    arr.push_back(lift_to_json(L));
  }
  ojson j;
  j["schema"] = "mcg/1";
  j["kind"] = "lifts";
  j["data_set"] = print_meta(D);
  j["lifts"] = arr;
  return emit(cfg, os.str(), j, lifts.empty() ? 1 : 0);
}

Output cmd_bound(const RunConfig& cfg) {
  const auto R = bound_check(cfg.genus, cfg.workers);
  return emit(cfg, bound_to_text(R), bound_to_json(R), R.holds() ? 0 : 1);
}

unsigned default_workers() {
  if (const char* env = std::getenv("MCG_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
    }
    throw InputError(std::string("MCG_WORKERS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify, derive and classify finite metacyclic group actions on surfaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::map<std::string, Format> formats{{"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};
  int workers_flag = 0;

  auto common = [&](CLI::App* s) {
    s->add_option("--format", cfg.format, "text, json or csv")->transform(CLI::CheckedTransformer(formats));
    s->add_option("-o,--output", cfg.output, "write to this file instead of stdout");
  };
  auto input = [&](CLI::App* s) {
    s->add_option("--meta", cfg.meta, "metacyclic data set, or a file holding one");
    s->add_option("--cyclic", cfg.cyclic, "cyclic data set, or a file holding one");
    s->add_option("file", cfg.file, "input file ('-' or nothing reads stdin)");
  };
  auto parallel = [&](CLI::App* s) {
    s->add_option("--workers", workers_flag, "worker threads (default: MCG_WORKERS, else all cores)")
        ->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "check a cyclic or metacyclic data set");
  common(validate);
  input(validate);
  validate->add_option("--method", cfg.method, "literal, oracle or both")
      ->check(CLI::IsMember({"literal", "oracle", "both"}));

  auto* derive = app.add_subcommand("derive", "derive D_F, D_G and D_Gbar");
  common(derive);
  input(derive);

  auto* classify = app.add_subcommand("classify", "enumerate weak conjugacy classes for a genus");
  common(classify);
  parallel(classify);
  classify->add_option("--genus", cfg.genus)->required()->check(CLI::Range(Int{2}, Int{1000}));
  classify->add_flag("--nonsplit", cfg.nonsplit, "non-split groups only");
  classify->add_flag("--exclude-quaternion", cfg.exclude_quaternion, "drop generalized quaternion groups");
  classify->add_option("--equivalence", cfg.equivalence, "per-pair or global")
      ->check(CLI::IsMember({"per-pair", "global"}));
  classify->add_option("--max-order", cfg.max_order, "largest u*n (at least the default bound)");
  classify->add_option("--group", cfg.group, "restrict to one presentation u,n,r,k");
  classify->add_flag("--progress", cfg.progress, "report each group on stderr");

  auto* qp = app.add_subcommand("query-pair", "is there a metacyclic action with these cyclic factors");
  common(qp);
  qp->add_option("--df", cfg.df, "D_F")->required();
  qp->add_option("--dg", cfg.dg, "D_G")->required();
  qp->add_option("--u", cfg.u)->required();
  qp->add_option("--r", cfg.r)->required();
  qp->add_option("--k", cfg.k)->required();

  auto* dic = app.add_subcommand("dicyclic", "does a cyclic action extend to a dicyclic one");
  common(dic);
  input(dic);
  dic->add_option("--df", cfg.df, "D_F");

  auto* lift = app.add_subcommand("lift", "lift a non-split action to a split one");
  common(lift);
  input(lift);
  lift->add_option("--df", cfg.df, "required D_F of the lift");
  lift->add_option("--dg", cfg.dg, "required D_G of the lift");
  lift->add_flag("--all", cfg.all, "list every lift");

  auto* bound = app.add_subcommand("bound", "check the 4g bound on non-split orders");
  common(bound);
  parallel(bound);
  bound->add_option("--genus", cfg.genus)->required()->check(CLI::Range(Int{2}, Int{1000}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.workers = workers_flag > 0 ? static_cast<unsigned>(workers_flag) : default_workers();
    if (cfg.command == "classify" && cfg.max_order > 0) {
      const Int floor = cfg.nonsplit ? 4 * cfg.genus : 84 * (cfg.genus - 1);
      if (cfg.max_order < floor)
        throw InputError("--max-order below the default bound " + std::to_string(floor));
    }

    Output out;
    if (cfg.command == "validate") out = cmd_validate(cfg);
    else if (cfg.command == "derive") out = cmd_derive(cfg);
    else if (cfg.command == "classify") out = cmd_classify(cfg);
    else if (cfg.command == "query-pair") out = cmd_query_pair(cfg);
    else if (cfg.command == "dicyclic") out = cmd_dicyclic(cfg);
    else if (cfg.command == "lift") out = cmd_lift(cfg);
    else out = cmd_bound(cfg);

    if (cfg.output.empty()) {
      std::cout << out.body << std::flush;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw InputError("cannot write " + cfg.output);
      f << out.body;
    }
    return out.status;
  } catch (const mcg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
