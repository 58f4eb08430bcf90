#include "freecum/cumulants.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "freecum/hurwitz.hpp"
#include "freecum/maps.hpp"
#include "freecum/trees.hpp"

namespace fc {

Profile canonical_profile(std::vector<int> p) {
  std::sort(p.begin(), p.end(), std::greater<>());
  return p;
}

template <class R>
const R& ProfileTable<R>::at(const Profile& p) const {
  auto it = entries.find(canonical_profile(p));
  if (it == entries.end()) {
    std::string s;
    for (int x : p) s += (s.empty() ? "" : ",") + std::to_string(x);
    throw DomainError("profile " + s + " missing from table");
  }
  return it->second;
}

template struct ProfileTable<KappaPoly>;
template struct ProfileTable<Rational>;

namespace {

using json = nlohmann::json;

template <class R, class F>
std::string dump_table(const ProfileTable<R>& t, F&& str) {
  json arr = json::array();
  // longer profiles after shorter sizes; std::map order is lexicographic, so sort explicitly
  std::vector<const std::pair<const Profile, R>*> rows;
  for (const auto& e : t.entries) rows.push_back(&e);
  std::stable_sort(rows.begin(), rows.end(), [](auto a, auto b) {
    int na = std::accumulate(a->first.begin(), a->first.end(), 0);
    int nb = std::accumulate(b->first.begin(), b->first.end(), 0);
    if (na != nb) return na < nb;
    if (a->first.size() != b->first.size()) return a->first.size() < b->first.size();
    return a->first > b->first;
  });
  for (auto* e : rows) arr.push_back({{"profile", e->first}, {"value", str(e->second)}});
  return json{{"entries", arr}}.dump(1);
}

template <class R, class F>
ProfileTable<R> load_table(const std::string& text, F&& parse) {
  ProfileTable<R> t;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("table is not valid JSON: ") + e.what());
  }
  if (!j.contains("entries") || !j["entries"].is_array()) throw DomainError("table needs an \"entries\" array");
  for (const auto& e : j["entries"]) {
    auto prof = e.at("profile").get<std::vector<int>>();
    for (int x : prof)
      if (x < 1) throw DomainError("profile entries must be positive");
    t.set(prof, parse(e.at("value").get<std::string>()));
  }
  return t;
}

}  // namespace

std::string table_to_json(const KappaTable& t) {
  return dump_table(t, [](const KappaPoly& v) { return v.to_string(); });
}

KappaTable table_from_json(const std::string& text) {
  return load_table<KappaPoly>(text, [](const std::string& s) { return KappaPoly::parse(s); });
}

std::string table_to_json(const RationalTable& t) {
  return dump_table(t, [](const Rational& v) { return to_string(v); });
}

RationalTable rational_table_from_json(const std::string& text) {
  return load_table<Rational>(text, [](const std::string& s) { return parse_rational(s); });
}

std::string table_to_csv(const KappaTable& t) {
  std::ostringstream os;
  os << "profile,monomial,value\n";
  for (const auto& [prof, v] : t.entries) {
    std::string ps;
    for (int x : prof) ps += (ps.empty() ? "" : " ") + std::to_string(x);
    for (const auto& [m, c] : v.terms()) {
      std::string ms;
      for (auto id : m) ms += (ms.empty() ? "" : "*") + kappa_name(id);
      if (ms.empty()) ms = "1";
      os << '"' << ps << "\"," << ms << ',' << to_string(c) << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- classical

template <class R>
std::vector<R> classical_cumulants(const std::vector<R>& m) {
  int n = static_cast<int>(m.size());
  if (n > kMaxSetPartitionN) throw GuardError("classical cumulants limited to n <= 12");
  std::vector<R> k(n);
  for (int s = 1; s <= n; ++s) {
    R acc = R(0);
    for_each_set_partition(s, [&](const SetPartition& pi) {
      int b = pi.num_blocks();
      R term = R(Rational(sign_pow(b - 1) * factorial(b - 1)));
      for (const auto& blk : pi.blocks()) term = term * m[blk.size() - 1];
      acc = acc + term;
    });
    k[s - 1] = acc;
  }
  return k;
}

template <class R>
std::vector<R> classical_moments(const std::vector<R>& k) {
  int n = static_cast<int>(k.size());
  if (n > kMaxSetPartitionN) throw GuardError("classical moments limited to n <= 12");
  std::vector<R> m(n);
  for (int s = 1; s <= n; ++s) {
    R acc = R(0);
    for_each_set_partition(s, [&](const SetPartition& pi) {
      R term = R(1);
      for (const auto& blk : pi.blocks()) term = term * k[blk.size() - 1];
      acc = acc + term;
    });
    m[s - 1] = acc;
  }
  return m;
}

template std::vector<Rational> classical_cumulants(const std::vector<Rational>&);
template std::vector<KappaPoly> classical_cumulants(const std::vector<KappaPoly>&);
template std::vector<Rational> classical_moments(const std::vector<Rational>&);
template std::vector<KappaPoly> classical_moments(const std::vector<KappaPoly>&);

// ---------------------------------------------------------------- helpers

namespace {

// Collects monomials with integer multiplicities before building one KappaPoly.
struct MonoCounter {
  std::map<Monomial, Rational> counts;

  void add(const Monomial& m, const Rational& c) {
    auto [it, fresh] = counts.try_emplace(m, c);
    if (!fresh) it->second += c;
  }
  void add(const KappaPoly& p, const Rational& scale) {
    for (const auto& [m, c] : p.terms()) add(m, c * scale);
  }
  KappaPoly result() const {
    std::vector<KappaPoly::Term> raw;
    raw.reserve(counts.size());
    for (const auto& [m, c] : counts)
      if (c != 0) raw.emplace_back(m, c);
    return KappaPoly::from_terms(std::move(raw));
  }
};

// cycle sizes of tau inside each block of pi
std::vector<std::vector<int>> sizes_per_block(const SetPartition& pi, const Permutation& tau) {
  std::vector<std::vector<int>> out(pi.num_blocks());
  for (const auto& c : tau.cycles()) out[pi.block_of(c[0])].push_back(static_cast<int>(c.size()));
  return out;
}

Monomial kappa_monomial(const SetPartition& pi, const Permutation& tau) {
  Monomial m;
  for (auto& s : sizes_per_block(pi, tau)) m.push_back(kappa_id(std::move(s)));
  std::sort(m.begin(), m.end());
  return m;
}

Permutation gamma_checked(const Profile& lambda, int limit, const char* what) {
  for (int x : lambda)
    if (x < 1) throw DomainError("profile entries must be positive");
  if (lambda.empty()) throw DomainError("empty profile");
  int n = std::accumulate(lambda.begin(), lambda.end(), 0);
  if (n > limit) throw GuardError(std::string(what) + " limited to n <= " + std::to_string(limit));
  return gamma_of(IntegerPartition(lambda));
}

// integer partitions of r as multiplicity vectors k[a-1]
void for_each_multiplicity(int r, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> k(std::max(r, 1), 0);
  std::function<void(int, int)> rec = [&](int rem, int maxpart) {
    if (rem == 0) {
      f(k);
      return;
    }
    for (int a = std::min(rem, maxpart); a >= 1; --a) {
      ++k[a - 1];
      rec(rem - a, a);
      --k[a - 1];
    }
  };
  rec(r, r);
}

KappaPoly kappa1_power_product(const std::vector<int>& k, Rational coef) {
  Monomial m;
  for (std::size_t a = 0; a < k.size(); ++a)
    for (int e = 0; e < k[a]; ++e) m.push_back(kappa_id({static_cast<int>(a) + 1}));
  std::sort(m.begin(), m.end());
  return KappaPoly::from_terms({{m, std::move(coef)}});
}

}  // namespace

// ---------------------------------------------------------------- moments

KappaPoly free_moments_p1(int n) {
  if (n < 1) throw DomainError("n must be positive");
  if (n > kMaxFreeMomentN) throw GuardError("free moments limited to n <= 10");
  MonoCounter acc;
  for (const auto& pi : noncrossing_partitions(n)) {
    Monomial m;
    for (const auto& b : pi.blocks()) m.push_back(kappa_id({static_cast<int>(b.size())}));
    std::sort(m.begin(), m.end());
    acc.add(m, 1);
  }
  return acc.result();
}

KappaPoly kappa_of(const SetPartition& pi, const Permutation& tau) {
  if (!orbit_partition(tau).leq(pi)) throw DomainError("kappa_of requires pi >= Pi(tau)");
  return KappaPoly::from_terms({{kappa_monomial(pi, tau), Rational(1)}});
}

KappaPoly moment_bruteforce(const Permutation& sigma) {
  int n = sigma.size();
  if (n > kMaxMomentN) throw GuardError("brute-force moments limited to n <= 7");
  auto ps = orbit_partition(sigma);
  auto one = SetPartition::coarsest(n);
  MonoCounter acc;
  for_each_permutation(n, [&](const Permutation& tau) {
    if (genus(sigma, tau.inverse()) != 0) return;
    auto pt = orbit_partition(tau);
    auto pst = ps.join(pt);
    for_each_set_partition(
        n,
        [&](const SetPartition& pp) {
          if (pp.join(ps) != one) return;
          if (excess_L(pp, pst, pt) != 0) return;
          acc.add(kappa_monomial(pp, tau), 1);
        },
        &pt);
  });
  return acc.result();
}

KappaPoly higher_moments_bruteforce(const Profile& lambda) {
  return moment_bruteforce(gamma_checked(lambda, kMaxMomentN, "brute-force moments"));
}

namespace {

Integer cached_maps_M(const std::vector<int>& shape, const std::vector<int>& type) {
  static std::mutex mu;
  static std::map<std::pair<std::vector<int>, std::vector<int>>, Integer> cache;
  auto key = std::make_pair(canonical_profile(shape), canonical_profile(type));
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  Integer v = count_maps_M(IntegerPartition(key.first), IntegerPartition(key.second));
  std::lock_guard lock(mu);
  cache.emplace(key, v);
  return v;
}

// Incidences (white vertex, edge) of a hypertree, grouped per white vertex.
struct Incidences {
  std::vector<std::vector<int>> at_vertex;  // edge indices per white vertex
  std::vector<std::vector<int>> on_edge;    // white vertices per edge, increasing
};

Incidences incidences(const LabeledTree& t) {
  Incidences inc;
  inc.at_vertex.resize(t.p);
  inc.on_edge.resize(t.edges.size());
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    for (int i = 0; i < t.p; ++i)
      if (t.edges[e] >> i & 1u) {
        inc.at_vertex[i].push_back(static_cast<int>(e));
        inc.on_edge[e].push_back(i);
      }
  return inc;
}

// Enumerates j-values on every incidence; j[e][pos] belongs to on_edge[e][pos].
// lo/hi bound each value; the callback sees the whole assignment.
void for_each_edge_weights(const Incidences& inc, const std::vector<int>& hi,
                           const std::function<void(const std::vector<std::vector<int>>&)>& f) {
  std::vector<std::vector<int>> j(inc.on_edge.size());
  for (std::size_t e = 0; e < j.size(); ++e) j[e].assign(inc.on_edge[e].size(), 1);
  std::vector<int> used(hi.size(), 0);
  std::vector<std::pair<int, int>> slots;
  for (std::size_t e = 0; e < j.size(); ++e)
    for (std::size_t s = 0; s < j[e].size(); ++s) slots.emplace_back(static_cast<int>(e), static_cast<int>(s));
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == slots.size()) {
      f(j);
      return;
    }
    auto [e, s] = slots[k];
    int v = inc.on_edge[e][s];
    for (int x = 1; used[v] + x <= hi[v]; ++x) {
      j[e][s] = x;
      used[v] += x;
      rec(k + 1);
      used[v] -= x;
    }
  };
  rec(0);
}

}  // namespace

KappaPoly higher_moments_treeformula(const Profile& lambda_in) {
  auto lambda = canonical_profile(lambda_in);
  gamma_checked(lambda, kMaxMomentN, "tree-formula moments");
  int p = static_cast<int>(lambda.size());
  if (p > 4) throw GuardError("tree-formula moments limited to p <= 4");
  MonoCounter acc;
  // coarsenings of the cycles of gamma_lambda, blocks labeled by minimum
  for_each_set_partition(p, [&](const SetPartition& coarse) {
    int k = coarse.num_blocks();
    auto blocks = coarse.blocks();
    std::vector<std::vector<int>> shape(k);
    std::vector<int> size(k, 0);
    for (int b = 0; b < k; ++b)
      for (int c : blocks[b]) {
        shape[b].push_back(lambda[c]);
        size[b] += lambda[c];
      }
    for (const auto& tree : enumerate_trees(k, TreeKind::G)) {
      auto inc = incidences(tree);
      for_each_edge_weights(inc, size, [&](const std::vector<std::vector<int>>& j) {
        Monomial edge_mono;
        for (const auto& je : j) edge_mono.push_back(kappa_id(je));
        std::sort(edge_mono.begin(), edge_mono.end());
        // vertex factors, each a polynomial in first-order kappas
        KappaPoly weight = KappaPoly::from_terms({{edge_mono, Rational(1)}});
        for (int i = 0; i < k && !weight.is_zero(); ++i) {
          std::vector<int> q;
          int used = 0;
          for (int e : inc.at_vertex[i]) {
            auto pos = std::find(inc.on_edge[e].begin(), inc.on_edge[e].end(), i) - inc.on_edge[e].begin();
            q.push_back(j[e][pos]);
            used += j[e][pos];
          }
          int r = size[i] - used;
          MonoCounter vf;
          for_each_multiplicity(r, [&](const std::vector<int>& kv) {
            std::vector<int> type = q;
            for (std::size_t a = 0; a < kv.size(); ++a)
              for (int e = 0; e < kv[a]; ++e) type.push_back(static_cast<int>(a) + 1);
            Integer M = cached_maps_M(shape[i], type);
            if (M == 0) return;
            Rational c = Rational(M);
            for (int a = 1; a <= size[i]; ++a) {
              long qa = std::count(q.begin(), q.end(), a);
              long ka = a <= static_cast<int>(kv.size()) ? kv[a - 1] : 0;
              if (qa > 0) c *= Rational(factorial(ka + qa) / factorial(ka));
            }
            vf.add(kappa1_power_product(r == 0 ? std::vector<int>{} : kv, c), 1);
          });
          weight = weight * vf.result();
        }
        acc.add(weight, 1);
      });
    }
  });
  return acc.result();
}

namespace {

// sum over multiplicity vectors of total weight r of lam!/(lam+1-l-deg)! prod k[a]^{k_a}/k_a!
KappaPoly analytic_vertex(int lam, int r, int deg) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, KappaPoly> cache;
  auto key = std::make_tuple(lam, r, deg);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  MonoCounter vf;
  if (r >= 0 && lam + 1 - deg >= 0) {
    for_each_multiplicity(r, [&](const std::vector<int>& kv) {
      int l = 0;
      Integer den = 1;
      for (int x : kv) {
        l += x;
        den *= factorial(x);
      }
      if (r == 0) l = 0;
      int rest = lam + 1 - l - deg;
      if (rest < 0) return;
      Rational c(factorial(lam), factorial(rest) * den);
      c.canonicalize();
      vf.add(kappa1_power_product(r == 0 ? std::vector<int>{} : kv, c), 1);
    });
  }
  auto v = vf.result();
  std::lock_guard lock(mu);
  cache.emplace(key, v);
  return v;
}

}  // namespace

KappaPoly higher_moments_analytic(const Profile& lambda_in) {
  auto lambda = canonical_profile(lambda_in);
  gamma_checked(lambda, kMaxMomentN, "analytic moments");
  int p = static_cast<int>(lambda.size());
  if (p > 4) throw GuardError("analytic moments limited to p <= 4");
  int n = std::accumulate(lambda.begin(), lambda.end(), 0);
  MonoCounter acc;
  for (const auto& tree : enumerate_trees(p, TreeKind::G)) {
    auto inc = incidences(tree);
    int ne = static_cast<int>(tree.edges.size());
    std::vector<int> deg(p);
    for (int i = 0; i < p; ++i) deg[i] = static_cast<int>(inc.at_vertex[i].size());
    // per edge: choice of a genuine cumulant or a kernel pair. Cutting the edge splits the
    // tree, and the side holding the positive end has total exponent <= n, so n bounds every value.
    std::vector<int> J(p, 0);
    std::function<void(int, KappaPoly)> rec = [&](int e, KappaPoly w) {
      if (e == ne) {
        KappaPoly total = w;
        for (int i = 0; i < p && !total.is_zero(); ++i) total = total * analytic_vertex(lambda[i], lambda[i] - J[i], deg[i]);
        acc.add(total, 1);
        return;
      }
      const auto& vs = inc.on_edge[e];
      // kappa_{j...} with all j >= 1
      std::vector<int> jv(vs.size(), 1);
      std::function<void(std::size_t)> pick = [&](std::size_t s) {
        if (s == vs.size()) {
          rec(e + 1, w * KappaPoly::kappa(jv));
          return;
        }
        for (int x = 1; x <= n; ++x) {
          jv[s] = x;
          J[vs[s]] += x;
          pick(s + 1);
          J[vs[s]] -= x;
        }
      };
      pick(0);
      if (vs.size() == 2) {
        // Y_a Y_b/(Y_a - Y_b)^2 = sum_k k Y_a^{-k} Y_b^{k}, expanded for |Y_b| < |Y_a|
        for (int kk = 1; kk <= n; ++kk) {
          J[vs[0]] -= kk;
          J[vs[1]] += kk;
          rec(e + 1, w.scaled(kk));
          J[vs[0]] += kk;
          J[vs[1]] -= kk;
        }
      }
    };
    rec(0, KappaPoly(1));
  }
  return acc.result();
}

// ---------------------------------------------------------------- factorization

namespace {

const std::vector<Permutation>& cached_ns(const std::vector<int>& mu) {
  static std::mutex m;
  static std::map<std::vector<int>, std::vector<Permutation>> cache;
  std::lock_guard lock(m);
  auto it = cache.find(mu);
  if (it == cache.end()) it = cache.emplace(mu, enumerate_ns(mu)).first;
  return it->second;
}

// bar-g correction of a block whose cycles (one per white vertex) have sizes mu, for a
// grouping pibar of the white vertices
KappaPoly block_correction(const std::vector<int>& mu, const SetPartition& pibar) {
  int m = static_cast<int>(mu.size());
  int N = std::accumulate(mu.begin(), mu.end(), 0);
  std::vector<int> start(m + 1, 0);
  for (int i = 0; i < m; ++i) start[i + 1] = start[i] + mu[i];
  auto g = gamma_of_profile(mu);
  auto pg = orbit_partition(g);
  auto one = SetPartition::coarsest(N);

  struct Group {
    std::vector<int> points;  // increasing
    const std::vector<Permutation>* ns;
  };
  std::vector<Group> groups;
  for (const auto& blk : pibar.blocks()) {
    Group gr;
    std::vector<int> sub;
    for (int i : blk) {
      sub.push_back(mu[i]);
      for (int x = start[i]; x < start[i + 1]; ++x) gr.points.push_back(x);
    }
    gr.ns = &cached_ns(sub);
    groups.push_back(std::move(gr));
  }

  MonoCounter acc;
  std::vector<int> img(N);
  std::function<void(std::size_t)> rec = [&](std::size_t gi) {
    if (gi == groups.size()) {
      auto nu = Permutation::from_images(img);
      auto pn = orbit_partition(nu);
      auto top = pg.join(pn);
      for_each_set_partition(
          N,
          [&](const SetPartition& pp) {
            if (pp.join(pg) != one) return;
            if (excess_L(pp, top, pn) != 0) return;
            acc.add(kappa_monomial(pp, nu), 1);
          },
          &pn);
      return;
    }
    const auto& gr = groups[gi];
    for (const auto& v : *gr.ns) {
      for (int x = 0; x < v.size(); ++x) img[gr.points[x]] = gr.points[v(x)];
      rec(gi + 1);
    }
  };
  rec(0);
  return acc.result();
}

KappaPoly block_weight(const std::vector<int>& mu) {
  static std::mutex m;
  static std::map<std::vector<int>, KappaPoly> cache;
  {
    std::lock_guard lock(m);
    auto it = cache.find(mu);
    if (it != cache.end()) return it->second;
  }
  KappaPoly w = KappaPoly::kappa(mu);
  int k = static_cast<int>(mu.size());
  if (k > 1) {
    for_each_set_partition(k, [&](const SetPartition& pibar) {
      if (pibar.is_finest()) return;
      w += block_correction(mu, pibar);
    });
  }
  std::lock_guard lock(m);
  cache.emplace(mu, w);
  return w;
}

}  // namespace

KappaPoly moments_via_factorized(const Profile& lambda_in) {
  auto lambda = canonical_profile(lambda_in);
  auto g = gamma_checked(lambda, kMaxFactorizedN, "factorized moments");
  int p = static_cast<int>(lambda.size());
  if (p > 3) throw GuardError("factorized moments limited to p <= 3");
  int n = g.size();
  auto pg = orbit_partition(g);
  auto one = SetPartition::coarsest(n);
  std::vector<int> cycle_of(n);
  for (int i = 0, s = 0; i < p; s += lambda[i], ++i)
    for (int x = 0; x < lambda[i]; ++x) cycle_of[s + x] = i;
  MonoCounter acc;
  for (const auto& tau : enumerate_nc(lambda)) {
    auto pt = orbit_partition(tau);
    auto cyc = tau.cycles();
    for_each_set_partition(
        n,
        [&](const SetPartition& pp) {
          if (pp.join(pg) != one) return;
          if (excess_L(pp, pg, pt) != 0) return;
          // tree-like: each block meets each white cycle at most once
          std::vector<std::vector<std::pair<int, int>>> per_block(pp.num_blocks());
          for (const auto& c : cyc) per_block[pp.block_of(c[0])].emplace_back(cycle_of[c[0]], static_cast<int>(c.size()));
          KappaPoly w(1);
          for (auto& b : per_block) {
            std::sort(b.begin(), b.end());
            std::vector<int> mu;
            for (auto [i, sz] : b) mu.push_back(sz);
            w = w * block_weight(mu);
          }
          acc.add(w, 1);
        },
        &pt);
  }
  return acc.result();
}

// ---------------------------------------------------------------- inverses

template <class R>
R multiplicative(const SetPartition& pi, const Permutation& tau, const MomentLookup<R>& phi) {
  R out = R(1);
  for (auto& s : sizes_per_block(pi, tau)) out = out * phi(canonical_profile(std::move(s)));
  return out;
}

template <class R>
R higher_cumulants_from_moments(const Profile& lambda, const MomentLookup<R>& phi) {
  auto sigma = gamma_checked(lambda, 6, "cumulants from moments");
  int n = sigma.size();
  auto ps = orbit_partition(sigma);
  auto one = SetPartition::coarsest(n);
  std::map<std::pair<Permutation, SetPartition>, Rational> gcache;
  std::map<std::pair<Permutation, SetPartition>, R> pcache;
  R acc = R(0);
  for_each_permutation(n, [&](const Permutation& tau) {
    if (genus(sigma, tau.inverse()) != 0) return;
    auto pt = orbit_partition(tau);
    auto pst = ps.join(pt);
    auto nu = sigma * tau.inverse();
    for_each_set_partition(
        n,
        [&](const SetPartition& pp) {
          if (excess_L(pp, pst, pt) != 0) return;
          auto top = pp.join(ps);
          auto key = std::make_pair(nu, top);
          auto it = gcache.find(key);
          if (it == gcache.end()) it = gcache.emplace(key, big_gamma(nu, one, top)).first;
          if (it->second == 0) return;
          acc = acc + multiplicative<R>(pp, tau, phi) * R(it->second);
        },
        &pt);
  });
  return acc;
}

template <class R>
R higher_cumulants_cmss(const Profile& lambda, const MomentLookup<R>& phi) {
  auto sigma = gamma_checked(lambda, kMaxCmssN, "CMSS cumulants");
  int n = sigma.size();
  auto one = SetPartition::coarsest(n);
  int rhs = sigma.num_cycles() - 2;
  R acc = R(0);
  for_each_permutation(n, [&](const Permutation& s1) {
    auto s2 = s1.inverse() * sigma;
    auto p1 = orbit_partition(s1);
    auto p2 = orbit_partition(s2);
    int c1 = s1.num_cycles(), c2 = s2.num_cycles();
    for_each_set_partition(
        n,
        [&](const SetPartition& q1) {
          int partial = c1 - 2 * q1.num_blocks() + c2 + n;
          std::optional<R> phi1;
          for_each_set_partition(
              n,
              [&](const SetPartition& q2) {
                if (partial - 2 * q2.num_blocks() != rhs) return;
                if (q1.join(q2) != one) return;
                Rational mu = mobius_mu(q2, s2);
                if (mu == 0) return;
                if (!phi1) phi1 = multiplicative<R>(q1, s1, phi);
                acc = acc + *phi1 * R(mu);
              },
              &p2);
        },
        &p1);
  });
  return acc;
}

template KappaPoly multiplicative(const SetPartition&, const Permutation&, const MomentLookup<KappaPoly>&);
template Rational multiplicative(const SetPartition&, const Permutation&, const MomentLookup<Rational>&);
template KappaPoly higher_cumulants_from_moments(const Profile&, const MomentLookup<KappaPoly>&);
template Rational higher_cumulants_from_moments(const Profile&, const MomentLookup<Rational>&);
template KappaPoly higher_cumulants_cmss(const Profile&, const MomentLookup<KappaPoly>&);
template Rational higher_cumulants_cmss(const Profile&, const MomentLookup<Rational>&);

// ---------------------------------------------------------------- tables

std::vector<Profile> profiles_upto(int max_n, int max_p) {
  std::vector<Profile> out;
  for (const auto& l : integer_partitions_upto(max_n, max_p)) out.push_back(l.parts());
  return out;
}

KappaTable moment_table(int max_n, int max_p) {
  if (max_n > kMaxMomentN) throw GuardError("moment tables limited to n <= 7");
  KappaTable t;
  for (const auto& l : profiles_upto(max_n, max_p)) t.set(l, higher_moments_bruteforce(l));
  return t;
}

SplitCheck check_degree_split(int n) {
  if (n > 4) throw GuardError("degree split check limited to n <= 4");
  struct Pair {
    Permutation s;
    SetPartition p, ps;
  };
  std::vector<Pair> pairs;
  for_each_permutation(n, [&](const Permutation& s) {
    auto ps = orbit_partition(s);
    for_each_set_partition(n, [&](const SetPartition& p) { pairs.push_back({s, p, ps}); }, &ps);
  });
  SplitCheck out;
  for (const auto& a : pairs)
    for (const auto& b : pairs) {
      ++out.tuples;
      auto prod = b.s * a.s;
      auto pprod = orbit_partition(prod);
      auto j12 = a.p.join(b.p);
      bool lhs = a.s.num_cycles() - 2 * a.p.num_blocks() + b.s.num_cycles() - 2 * b.p.num_blocks() + n ==
                 prod.num_cycles() - 2 * j12.num_blocks();
      bool c1 = genus(a.s, a.s.inverse() * b.s.inverse()) == 0;
      bool c2 = excess_L(a.p, a.ps.join(pprod), a.ps) == 0;
      bool c3 = excess_L(b.p, a.p.join(pprod), b.ps) == 0;
      if (lhs != (c1 && c2 && c3)) ++out.mismatches;
    }
  return out;
}

}  // namespace fc
