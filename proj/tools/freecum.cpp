// freecum: command-line front end for the library.
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "freecum/cumulants.hpp"
#include "freecum/generating.hpp"
#include "freecum/hurwitz.hpp"
#include "freecum/identities.hpp"
#include "freecum/maps.hpp"
#include "freecum/trees.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace fc;

constexpr int kExitUsage = 64;
constexpr int kExitGuard = 65;
constexpr int kExitSoftware = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  int depth = 6;
  bool depth_given = false;
  std::string mode = "symbolic";
  std::optional<std::uint64_t> seed;
  bool as_json = false;
  bool as_csv = false;
  std::string out;
  int max_n = 5;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--depth", c.depth, "series truncation degree or expansion depth");
  app->add_option("--mode", c.mode, "symbolic or specialized")->check(CLI::IsMember({"symbolic", "specialized"}));
  app->add_option("--seed", c.seed, "specialization seed (specialized mode only)");
  auto* j = app->add_flag("--json", c.as_json, "JSON output");
  auto* v = app->add_flag("--csv", c.as_csv, "CSV output");
  j->excludes(v);
  app->add_option("--out", c.out, "write output to FILE");
  app->add_option("--max-n", c.max_n, "size bound for enumerations and tables");
}

void validate(const Common& c) {
  bool specialized = c.mode == "specialized";
  if (specialized && !c.seed) throw UsageError("--mode specialized needs --seed");
  if (!specialized && c.seed) throw UsageError("--seed is only meaningful with --mode specialized");
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int x = std::stoi(item, &used);
      if (used != item.size() || x < 1) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::exception&) {
      throw UsageError("expected a comma-separated list of positive integers, got '" + s + "'");
    }
  }
  if (v.empty()) throw UsageError("empty integer list");
  return v;
}

json int_array(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(x);
  return a;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---- maps ----

std::string maps_count(const std::string& white, const std::string& black, const Common& c) {
  IntegerPartition w(parse_ints(white)), b(parse_ints(black));
  if (w.size() != b.size()) throw UsageError("white and black profiles must have the same size");
  Integer k = count_maps_M(w, b);
  if (c.as_json) return json{{"white", int_array(w.parts())}, {"black", int_array(b.parts())}, {"count", k.get_str()}}.dump() + "\n";
  return k.get_str() + "\n";
}

std::string maps_decompose(const std::string& s1, const std::string& s2, const Common& c) {
  Permutation a, b;
  try {
    a = Permutation::parse(s1);
    b = Permutation::parse(s2);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  int n = std::max(a.size(), b.size());
  a = Permutation::parse(s1, n);
  b = Permutation::parse(s2, n);
  std::unique_ptr<std::mt19937_64> rng;
  if (c.seed) rng = std::make_unique<std::mt19937_64>(*c.seed);
  SetPartition p = decompose_hypermap({a, b}, rng.get());
  if (c.as_json) return json{{"sigma1", a.to_string()}, {"sigma2", b.to_string()}, {"blocks", p.to_string()}}.dump() + "\n";
  return p.to_string() + "\n";
}

std::string maps_catalan(const Common& c) {
  json rows = json::array();
  std::ostringstream os;
  for (int n = 1; n <= c.max_n; ++n) {
    Integer total = 0;
    IntegerPartition w({n});
    for (const auto& lp : integer_partitions(n)) total += count_maps_M(w, lp);
    rows.push_back({{"n", n}, {"sum", total.get_str()}, {"catalan", catalan(n).get_str()}});
    os << n << " " << total.get_str() << " " << catalan(n).get_str() << "\n";
  }
  return c.as_json ? rows.dump() + "\n" : os.str();
}

// ---- ns ----

std::string ns_census(const std::string& profile, const Common& c) {
  std::vector<int> mu = parse_ints(profile);
  auto maps = enumerate_ns(mu);
  std::map<int, long> by_black;
  for (const auto& nu : maps) ++by_black[nu.num_cycles()];
  if (c.as_json) {
    json b = json::object();
    for (const auto& [r, k] : by_black) b[std::to_string(r)] = k;
    return json{{"profile", int_array(mu)}, {"total", maps.size()}, {"by_black_count", b}}.dump() + "\n";
  }
  if (c.as_csv) {
    std::string s = "black_vertices,count\n";
    for (const auto& [r, k] : by_black) s += std::to_string(r) + "," + std::to_string(k) + "\n";
    return s;
  }
  std::ostringstream os;
  os << "total " << maps.size() << "\n";
  for (const auto& [r, k] : by_black) os << "black " << r << ": " << k << "\n";
  return os.str();
}

std::string ns_list(const std::string& profile, const Common& c) {
  std::vector<int> mu = parse_ints(profile);
  json arr = json::array();
  std::ostringstream os;
  for (const auto& nu : enumerate_ns(mu)) {
    arr.push_back(nu.to_string());
    os << nu.to_string() << "\n";
  }
  return c.as_json ? arr.dump() + "\n" : os.str();
}

// ---- trees ----

std::string trees_cmd(int p, const std::string& kind, int max_leaves, const Common& c) {
  TreeKind k = kind == "T" ? TreeKind::T : TreeKind::G;
  auto ts = enumerate_trees(p, k, max_leaves);
  if (c.as_json) {
    json arr = json::array();
    for (const auto& t : ts) arr.push_back(t.to_string());
    return json{{"p", p}, {"kind", kind}, {"count", ts.size()}, {"trees", arr}}.dump() + "\n";
  }
  std::ostringstream os;
  os << "count " << ts.size() << "\n";
  for (const auto& t : ts) os << t.to_string() << "\n";
  return os.str();
}

// ---- hurwitz / weingarten ----

std::string hurwitz_gamma(const std::string& type, const Common& c) {
  IntegerPartition a(parse_ints(type));
  Rational g = gamma_closed(a);
  if (c.as_json) return json{{"cycle_type", int_array(a.parts())}, {"gamma", to_string(g)}}.dump() + "\n";
  return to_string(g) + "\n";
}

std::string hurwitz_count(const std::string& type, int genus, const Common& c) {
  IntegerPartition a(parse_ints(type));
  Integer h = monotone_hurwitz(a, genus);
  if (c.as_json) return json{{"cycle_type", int_array(a.parts())}, {"genus", genus}, {"count", h.get_str()}}.dump() + "\n";
  return h.get_str() + "\n";
}

std::string weingarten_cmd(const std::string& perm, int n, const Common& c) {
  Permutation nu;
  try {
    nu = Permutation::parse(perm, n);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  InverseNSeries s = weingarten_series(nu, c.depth);
  if (c.as_json) {
    json co = json::object();
    for (const auto& [k, v] : s.coeffs)
      if (v != 0) co[std::to_string(k)] = to_string(v);
    return json{{"perm", perm}, {"coeffs", co}}.dump() + "\n";
  }
  std::ostringstream os;
  for (const auto& [k, v] : s.coeffs)
    if (v != 0) os << "N^-" << k << " " << to_string(v) << "\n";
  return os.str();
}

// ---- convert ----

std::string poly_out(const KappaPoly& p, const Common& c) {
  if (c.mode == "specialized") return to_string(p.evaluate([&](KappaId id) { return specialization_value(id, *c.seed); }));
  return p.to_string();
}

std::string convert_cmd(const std::string& dir, const std::string& profile, const std::string& table_file, const Common& c) {
  Profile lambda = canonical_profile(parse_ints(profile));
  KappaPoly value;
  if (dir == "moments-from-cumulants") {
    value = higher_moments_bruteforce(lambda);
  } else {
    KappaTable table;
    if (!table_file.empty()) {
      std::ifstream in(table_file);
      if (!in) throw UsageError("cannot read table file '" + table_file + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      table = table_from_json(ss.str());
    } else {
      int n = 0;
      for (int x : lambda) n += x;
      table = moment_table(n, static_cast<int>(lambda.size()));
    }
    MomentLookup<KappaPoly> phi = [&](const Profile& p) { return table.at(p); };
    value = higher_cumulants_from_moments<KappaPoly>(lambda, phi);
  }
  if (c.as_json || c.as_csv) {
    KappaTable t;
    t.set(lambda, value);
    if (c.mode == "specialized") t.set(lambda, KappaPoly(Rational(poly_out(value, c))));
    return c.as_json ? table_to_json(t) + "\n" : table_to_csv(t);
  }
  return poly_out(value, c) + "\n";
}

// ---- tables ----

std::string tables_moments(int max_p, const Common& c) {
  if (c.max_n > kMaxMomentN) throw GuardError("moment tables limited to n <= " + std::to_string(kMaxMomentN));
  KappaTable t = moment_table(c.max_n, max_p);
  if (c.mode == "specialized")
    for (auto& [p, v] : t.entries) v = KappaPoly(Rational(poly_out(v, c)));
  if (c.as_csv) return table_to_csv(t);
  if (c.as_json) return table_to_json(t) + "\n";
  std::ostringstream os;
  for (const auto& [p, v] : t.entries) os << "[" << join(p) << "] " << v.to_string() << "\n";
  return os.str();
}

std::string tables_tilde(int p, const Common& c) {
  if (p < 2 || p > 4) throw UsageError("--p must be 2, 3 or 4");
  if (c.max_n > kMaxNS) throw GuardError("NS enumeration limited to n <= " + std::to_string(kMaxNS));
  KappaTable t;
  std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& mu, int left) {
    if (static_cast<int>(mu.size()) == p) {
      t.set(mu, tilde_kappa_ns(mu));
      return;
    }
    for (int x = 1; x <= left - (p - 1 - static_cast<int>(mu.size())); ++x) {
      mu.push_back(x);
      rec(mu, left - x);
      mu.pop_back();
    }
  };
  std::vector<int> mu;
  rec(mu, c.max_n);
  if (c.as_csv) return table_to_csv(t);
  if (c.as_json) return table_to_json(t) + "\n";
  std::ostringstream os;
  for (const auto& [pr, v] : t.entries) os << "[" << join(pr) << "] " << v.to_string() << "\n";
  return os.str();
}

std::string tables_series(const std::string& name, bool dump, const Common& c) {
  int d = c.depth;
  if (d < 1 || d > 16) throw GuardError("series depth must be in 1..16");
  KSeries s;
  if (name == "C1") {
    s = GenFun<KappaPoly>(1, d).C1(0);
  } else if (name == "C2") {
    s = GenFun<KappaPoly>(2, d).C({0, 1});
  } else if (name == "hatC2") {
    s = GenFun<KappaPoly>(2, d).hatC({0, 1});
  } else if (name == "hatC3") {
    s = GenFun<KappaPoly>(3, d).hatC({0, 1, 2});
  } else if (name == "tildeC2") {
    s = GenFun<KappaPoly>(2, d).tildeC2(0, 1);
  } else if (name == "tildeC3") {
    s = GenFun<KappaPoly>(3, d).tildeC3(0, 1, 2);
  } else if (name == "H2" || name == "H3" || name == "H4") {
    int p = name[1] - '0';
    if (p == 4 && d > kMaxNS) throw GuardError("H4 needs NS enumeration, depth <= 8");
    s = build_H(p, d);
  } else if (name == "M1") {
    s = first_moment_series<KappaPoly>(d, {});
  } else {
    throw UsageError("unknown series '" + name + "' (C1, C2, hatC2, hatC3, tildeC2, tildeC3, H2, H3, H4, M1)");
  }
  std::string sym = name == "M1" ? "X" : "Y";
  if (dump) return dump_series(s, sym);
  if (c.mode == "specialized") return specialize(s, *c.seed).to_string(sym) + "\n";
  return s.to_string(sym) + "\n";
}

// ---- verify ----

int verify_cmd(const std::vector<std::string>& names, bool all, bool uncorrected, const Common& c, std::string& out) {
  std::vector<std::string> todo = names;
  if (all) {
    todo.clear();
    for (const auto& info : identity_registry()) todo.push_back(info.name);
  }
  if (todo.empty()) throw UsageError("verify needs identity names or --all");
  std::vector<IdentityReport> reports;
  for (const auto& n : todo) {
    try {
      identity_info(n);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    VerifyOptions o;
    o.depth = c.depth_given ? c.depth : identity_info(n).default_depth;
    o.mode = c.mode == "specialized" ? Mode::Specialized : Mode::Symbolic;
    o.seed = c.seed.value_or(1);
    o.uncorrected = uncorrected;
    reports.push_back(verify_identity(n, o));
  }
  std::ostringstream os;
  if (c.as_json) {
    os << "[";
    for (std::size_t i = 0; i < reports.size(); ++i) os << (i ? ",\n " : "") << reports[i].to_json();
    os << "]\n";
  } else if (c.as_csv) {
    os << "name,depth,mode,seed,verdict,monomial,lhs,rhs,millis\n";
    for (const auto& r : reports)
      os << r.name << "," << r.depth << "," << (r.mode == Mode::Symbolic ? "symbolic" : "specialized") << ","
         << r.seed << "," << (r.pass ? "pass" : "fail") << ",\"" << r.monomial << "\",\"" << r.lhs << "\",\"" << r.rhs
         << "\"," << r.millis << "\n";
  } else {
    for (const auto& r : reports) {
      os << r.name << ": ";
      if (r.pass)
        os << (r.conjecture ? "conjecture holds to D=" + std::to_string(r.depth) : "pass at D=" + std::to_string(r.depth));
      else
        os << (r.conjecture ? "conjecture FAILS" : "FAIL") << " at " << r.monomial << " (" << r.part << "): lhs " << r.lhs
           << ", rhs " << r.rhs;
      os << " [" << (r.mode == Mode::Symbolic ? "symbolic" : "specialized seed " + std::to_string(r.seed)) << ", "
         << r.millis << " ms]\n";
    }
  }
  out = os.str();
  return exit_status(reports);
}

void emit(const std::string& text, const Common& c) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order free cumulants: maps, Hurwitz numbers, moment tables and identity checks"};
  app.require_subcommand(1);
  Common c;

  auto* maps = app.add_subcommand("maps", "planar bipartite maps");
  maps->require_subcommand(1);
  std::string white, black, s1, s2;
  auto* maps_count_cmd = maps->add_subcommand("count", "maps with white profile and black degrees");
  maps_count_cmd->add_option("--white", white, "white vertex degrees, e.g. 4")->required();
  maps_count_cmd->add_option("--black", black, "black vertex degrees, e.g. 2,2")->required();
  add_common(maps_count_cmd, c);
  auto* maps_dec = maps->add_subcommand("decompose", "non-separable components of a hypermap");
  maps_dec->add_option("--sigma1", s1, "black permutation in cycle notation")->required();
  maps_dec->add_option("--sigma2", s2, "white permutation in cycle notation")->required();
  add_common(maps_dec, c);
  auto* maps_cat = maps->add_subcommand("catalan", "sum of M(n; l') over l' against Catalan(n)");
  add_common(maps_cat, c);

  auto* ns = app.add_subcommand("ns", "non-separable hypermaps");
  ns->require_subcommand(1);
  std::string profile;
  auto* ns_census_cmd = ns->add_subcommand("census", "count NS(profile) by number of black vertices");
  ns_census_cmd->add_option("--profile", profile, "face profile, e.g. 1,1,1")->required();
  add_common(ns_census_cmd, c);
  auto* ns_list_cmd = ns->add_subcommand("list", "list NS(profile)");
  ns_list_cmd->add_option("--profile", profile, "face profile, e.g. 2,1")->required();
  add_common(ns_list_cmd, c);

  auto* trees = app.add_subcommand("trees", "labeled bipartite trees");
  int tree_p = 3, max_leaves = 0;
  std::string kind = "G";
  trees->add_option("--p", tree_p, "number of white vertices")->required();
  trees->add_option("--kind", kind)->check(CLI::IsMember({"G", "T"}));
  trees->add_option("--max-leaves", max_leaves, "black leaves allowed in total (kind T)");
  add_common(trees, c);

  auto* hurwitz = app.add_subcommand("hurwitz", "monotone Hurwitz numbers");
  hurwitz->require_subcommand(1);
  std::string ctype;
  int genus = 0;
  auto* hg = hurwitz->add_subcommand("gamma", "genus-zero signed closed form");
  hg->add_option("--cycle-type", ctype, "e.g. 3 or 2,1")->required();
  add_common(hg, c);
  auto* hc = hurwitz->add_subcommand("count", "transitive monotone factorizations");
  hc->add_option("--cycle-type", ctype, "e.g. 2,1")->required();
  hc->add_option("--genus", genus, "genus (default 0)");
  add_common(hc, c);

  auto* wg = app.add_subcommand("weingarten", "1/N expansion of the unitary Weingarten function");
  std::string perm;
  int wn = 0;
  wg->add_option("--perm", perm, "permutation in cycle notation")->required();
  wg->add_option("--n", wn, "number of points (default: largest label)");
  add_common(wg, c);

  auto* conv = app.add_subcommand("convert", "moment and cumulant conversion");
  std::string direction, table_file;
  bool symbolic_flag = false;
  conv->add_option("direction", direction)->required()->check(CLI::IsMember({"moments-from-cumulants", "cumulants-from-moments"}));
  conv->add_option("--profile", profile, "profile, e.g. 2,1")->required();
  conv->add_option("--table", table_file, "moment table JSON");
  conv->add_flag("--symbolic", symbolic_flag, "same as --mode symbolic");
  add_common(conv, c);

  auto* ver = app.add_subcommand("verify", "check named identities");
  std::vector<std::string> names;
  bool all = false, uncorrected = false;
  ver->add_option("names", names);
  ver->add_flag("--all", all);
  ver->add_flag("--uncorrected", uncorrected, "fourth-order checks with their original indices");
  add_common(ver, c);

  auto* tables = app.add_subcommand("tables", "moment tables, NS coefficient tables, series");
  std::string what = "moments", series_name = "tildeC2";
  int max_p = 3, tilde_p = 2;
  bool dump = false;
  tables->add_option("what", what)->check(CLI::IsMember({"moments", "tilde", "series"}));
  tables->add_option("--max-p", max_p, "largest number of parts");
  tables->add_option("--p", tilde_p, "order of the tilde series");
  tables->add_option("--name", series_name, "series name: C1, C2, hatC2, hatC3, tildeC2, tildeC3, H2, H3, H4, M1");
  tables->add_flag("--dump-series", dump, "series in the dump format");
  add_common(tables, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    for (auto* sub : {maps_count_cmd, maps_dec, maps_cat, ns_census_cmd, ns_list_cmd, trees, hg, hc, wg, conv, ver, tables})
      if (sub->parsed() && sub->count("--depth") > 0) c.depth_given = true;
    if (symbolic_flag) c.mode = "symbolic";
    validate(c);
    std::string text;
    int code = 0;
    if (maps_count_cmd->parsed()) text = maps_count(white, black, c);
    else if (maps_dec->parsed()) text = maps_decompose(s1, s2, c);
    else if (maps_cat->parsed()) text = maps_catalan(c);
    else if (ns_census_cmd->parsed()) text = ns_census(profile, c);
    else if (ns_list_cmd->parsed()) text = ns_list(profile, c);
    else if (trees->parsed()) text = trees_cmd(tree_p, kind, max_leaves, c);
    else if (hg->parsed()) text = hurwitz_gamma(ctype, c);
    else if (hc->parsed()) text = hurwitz_count(ctype, genus, c);
    else if (wg->parsed()) text = weingarten_cmd(perm, wn, c);
    else if (conv->parsed()) text = convert_cmd(direction, profile, table_file, c);
    else if (ver->parsed()) code = verify_cmd(names, all, uncorrected, c, text);
    else if (tables->parsed()) {
      if (what == "moments") text = tables_moments(max_p, c);
      else if (what == "tilde") text = tables_tilde(tilde_p, c);
      else text = tables_series(series_name, dump, c);
    }
    emit(text, c);
    return code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSoftware;
  }
}
