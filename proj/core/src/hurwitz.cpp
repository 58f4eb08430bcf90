#include "freecum/hurwitz.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "freecum/trees.hpp"

namespace fc {

Rational InverseNSeries::at(int k) const {
  auto it = coeffs.find(k);
  return it == coeffs.end() ? Rational(0) : it->second;
}

InverseNSeries InverseNSeries::operator*(const InverseNSeries& o) const {
  InverseNSeries r;
  r.depth = std::min(depth, o.depth);
  for (const auto& [a, x] : coeffs)
    for (const auto& [b, y] : o.coeffs)
      if (a + b <= r.depth) r.coeffs[a + b] += x * y;
  std::erase_if(r.coeffs, [](const auto& kv) { return kv.second == 0; });
  return r;
}

InverseNSeries& InverseNSeries::operator+=(const InverseNSeries& o) {
  depth = std::min(depth, o.depth);
  for (const auto& [a, x] : o.coeffs) coeffs[a] += x;
  std::erase_if(coeffs, [&](const auto& kv) { return kv.second == 0 || kv.first > depth; });
  return *this;
}

InverseNSeries InverseNSeries::scaled(const Rational& c) const {
  InverseNSeries r;
  r.depth = depth;
  if (c == 0) return r;
  for (const auto& [a, x] : coeffs) r.coeffs[a] = x * c;
  return r;
}

bool InverseNSeries::operator==(const InverseNSeries& o) const {
  int d = std::min(depth, o.depth);
  for (int k = 0; k <= d; ++k)
    if (at(k) != o.at(k)) return false;
  return true;
}

Rational gamma_closed(const std::vector<int>& sizes) {
  if (sizes.empty()) throw DomainError("gamma of an empty profile");
  long n = 0, c = static_cast<long>(sizes.size());
  Integer prod = 1;
  for (int p : sizes) {
    if (p <= 0) throw DomainError("gamma needs positive parts");
    n += p;
    prod *= factorial(2 * p) / (factorial(p) * factorial(p - 1));
  }
  Rational r(factorial(2 * n + c - 3) * prod, factorial(2 * n));
  r.canonicalize();
  return sign_pow(c + n) > 0 ? r : Rational(-r);
}

Rational gamma_closed(const IntegerPartition& alpha) { return gamma_closed(alpha.parts()); }

namespace {

// Dense indexing of S_n and of the partition lattice for the small-n dynamic programmes.
struct SymIndex {
  int n = 0;
  std::vector<Permutation> perms;
  std::unordered_map<Permutation, int> perm_id;
  std::vector<SetPartition> parts;
  std::unordered_map<SetPartition, int> part_id;
  std::vector<int> mul;   // perms.size()^2
  std::vector<int> join;  // parts.size()^2
  std::vector<int> orbit; // orbit partition id of each perm
  std::vector<int> len;

  explicit SymIndex(int n_) : n(n_) {
    for_each_permutation(n, [&](const Permutation& p) {
      perm_id[p] = static_cast<int>(perms.size());
      perms.push_back(p);
    });
    for_each_set_partition(n, [&](const SetPartition& p) {
      part_id[p] = static_cast<int>(parts.size());
      parts.push_back(p);
    });
    std::size_t P = perms.size(), Q = parts.size();
    mul.resize(P * P);
    for (std::size_t a = 0; a < P; ++a)
      for (std::size_t b = 0; b < P; ++b) mul[a * P + b] = perm_id.at(perms[a] * perms[b]);
    join.resize(Q * Q);
    for (std::size_t a = 0; a < Q; ++a)
      for (std::size_t b = 0; b < Q; ++b) join[a * Q + b] = part_id.at(parts[a].join(parts[b]));
    for (const auto& p : perms) {
      orbit.push_back(part_id.at(orbit_partition(p)));
      len.push_back(p.length());
    }
  }
};

const SymIndex& sym_index(int n) {
  static std::mutex m;
  static std::array<std::unique_ptr<SymIndex>, kMaxHurwitzN + 1> cache;
  if (n < 0 || n > kMaxHurwitzN) throw GuardError("symmetric-group tables limited to n <= 6");
  std::lock_guard lock(m);
  if (!cache[n]) cache[n] = std::make_unique<SymIndex>(n);
  return *cache[n];
}

// table[k][l][perm * Q + part] = number of k-tuples of non-identity perms
struct ConstellationTable {
  int L = 0;
  std::vector<std::vector<std::vector<unsigned long long>>> t;
};

int constellation_max_l(int n) { return n <= 4 ? 10 : 9; }

const ConstellationTable& constellation_table(int n) {
  static std::mutex m;
  static std::array<std::unique_ptr<ConstellationTable>, kMaxConstellationN + 1> cache;
  if (n < 0 || n > kMaxConstellationN) throw GuardError("constellation counts limited to n <= 5");
  std::lock_guard lock(m);
  if (cache[n]) return *cache[n];
  const auto& S = sym_index(n);
  auto tab = std::make_unique<ConstellationTable>();
  int L = constellation_max_l(n);
  tab->L = L;
  std::size_t P = S.perms.size(), Q = S.parts.size();
  auto layer = [&] { return std::vector<std::vector<unsigned long long>>(L + 1, std::vector<unsigned long long>(P * Q, 0)); };
  tab->t.push_back(layer());
  tab->t[0][0][S.perm_id.at(Permutation(n)) * Q + S.part_id.at(SetPartition::finest(n))] = 1;
  for (int k = 1; k <= L; ++k) {
    auto next = layer();
    const auto& prev = tab->t[k - 1];
    for (int l = 0; l <= L; ++l)
      for (std::size_t s = 0; s < P * Q; ++s) {
        auto c = prev[l][s];
        if (!c) continue;
        std::size_t pr = s / Q, pa = s % Q;
        for (std::size_t r = 0; r < P; ++r) {
          int lr = S.len[r];
          if (lr == 0 || l + lr > L) continue;
          next[l + lr][S.mul[pr * P + r] * Q + S.join[pa * Q + S.orbit[r]]] += c;
        }
      }
    tab->t.push_back(std::move(next));
  }
  cache[n] = std::move(tab);
  return *cache[n];
}

// monotone[l][b][perm * Q + part], b = current max (0 when no factor yet)
struct MonotoneTable {
  std::vector<std::vector<std::vector<unsigned long long>>> t;
};

const MonotoneTable& monotone_table(int n, int l_needed) {
  static std::mutex m;
  static std::array<std::unique_ptr<MonotoneTable>, kMaxHurwitzN + 1> cache;
  if (n < 1 || n > kMaxHurwitzN) throw GuardError("monotone factorizations limited to n <= 6");
  if (l_needed > 16) throw GuardError("monotone factorizations limited to 16 factors");
  std::lock_guard lock(m);
  const auto& S = sym_index(n);
  std::size_t P = S.perms.size(), Q = S.parts.size();
  auto& tab = cache[n];
  if (!tab) {
    tab = std::make_unique<MonotoneTable>();
    std::vector<std::vector<unsigned long long>> first(n, std::vector<unsigned long long>(P * Q, 0));
    first[0][S.perm_id.at(Permutation(n)) * Q + S.part_id.at(SetPartition::finest(n))] = 1;
    tab->t.push_back(std::move(first));
  }
  while (static_cast<int>(tab->t.size()) <= l_needed) {
    const auto& prev = tab->t.back();
    std::vector<std::vector<unsigned long long>> next(n, std::vector<unsigned long long>(P * Q, 0));
    for (int b = 0; b < n; ++b)
      for (std::size_t s = 0; s < P * Q; ++s) {
        auto c = prev[b][s];
        if (!c) continue;
        std::size_t pr = s / Q, pa = s % Q;
        for (int b2 = std::max(b, 1); b2 < n; ++b2)
          for (int a = 0; a < b2; ++a) {
            auto tr = Permutation::transposition(n, a, b2);
            int tid = S.perm_id.at(tr);
            next[b2][S.mul[pr * P + tid] * Q + S.join[pa * Q + S.orbit[tid]]] += c;
          }
      }
    tab->t.push_back(std::move(next));
  }
  return *tab;
}

void check_refines(const SetPartition& pi_bar, const Permutation& nu) {
  if (pi_bar.size() != nu.size()) throw DomainError("partition and permutation sizes differ");
  if (!orbit_partition(nu).leq(pi_bar)) throw DomainError("partition must be coarser than the orbits of nu");
}

}  // namespace

Integer monotone_count(const SetPartition& pi_bar, const Permutation& nu, int l) {
  check_refines(pi_bar, nu);
  int n = nu.size();
  if (l < 0) return 0;
  const auto& S = sym_index(n);
  const auto& tab = monotone_table(n, l);
  std::size_t Q = S.parts.size();
  std::size_t s = S.perm_id.at(nu) * Q + S.part_id.at(pi_bar);
  Integer total = 0;
  for (int b = 0; b < n; ++b) total += Integer(std::to_string(tab.t[l][b][s]));
  return total;
}

Integer monotone_hurwitz(const IntegerPartition& alpha, int g) {
  int n = alpha.size();
  if (n > kMaxHurwitzN) throw GuardError("monotone Hurwitz brute force limited to n <= 6");
  if (g < 0 || g > 2) throw GuardError("monotone Hurwitz brute force limited to g <= 2");
  int l = 2 * g + n - 2 + alpha.length();
  return monotone_count(SetPartition::coarsest(n), gamma_of(alpha), l);
}

Integer constellation_count(const SetPartition& pi_bar, const Permutation& nu, int l, int k) {
  check_refines(pi_bar, nu);
  int n = nu.size();
  if (n > kMaxConstellationN) throw GuardError("constellation counts limited to n <= 5");
  if (l < 0 || k < 0) return 0;
  if (l > constellation_max_l(n)) throw GuardError("constellation length beyond the tabulated range");
  if (k > l) return (k == 0 && l == 0 && nu.is_identity() && pi_bar.is_finest()) ? 1 : 0;
  const auto& S = sym_index(n);
  const auto& tab = constellation_table(n);
  std::size_t Q = S.parts.size();
  return Integer(std::to_string(tab.t[k][l][S.perm_id.at(nu) * Q + S.part_id.at(pi_bar)]));
}

Rational gamma_l_direct(const SetPartition& pi_bar, const Permutation& nu, int l) {
  Rational r = 0;
  for (int k = 0; k <= l; ++k) {
    Integer m = constellation_count(pi_bar, nu, l, k);
    r += (k % 2 == 0) ? Rational(m) : Rational(-m);
  }
  return r;
}

Rational gamma_l_connected(const Permutation& nu, int l) {
  int n = nu.size();
  int lmin = n - 2 + nu.num_cycles();
  if (l < lmin || (l - lmin) % 2 != 0) return 0;
  if (l == lmin) return gamma_closed(nu.cycle_type());
  auto one = SetPartition::coarsest(n);
  if (n <= kMaxConstellationN && l <= constellation_max_l(n)) return gamma_l_direct(one, nu, l);
  Integer m = monotone_count(one, nu, l);
  return l % 2 == 0 ? Rational(m) : Rational(-m);
}

Rational gamma_l(const SetPartition& pi_bar, const Permutation& nu, int l) {
  check_refines(pi_bar, nu);
  if (l < 0) return 0;
  std::vector<Rational> acc(l + 1, 0);
  acc[0] = 1;
  for (const auto& block : pi_bar.blocks()) {
    auto r = restrict(nu, block);
    std::vector<Rational> c(l + 1);
    for (int j = 0; j <= l; ++j) c[j] = gamma_l_connected(r, j);
    std::vector<Rational> next(l + 1, 0);
    for (int a = 0; a <= l; ++a) {
      if (acc[a] == 0) continue;
      for (int b = 0; a + b <= l; ++b)
        if (c[b] != 0) next[a + b] += acc[a] * c[b];
    }
    acc = std::move(next);
  }
  return acc[l];
}

int min_l(const Permutation& nu, const SetPartition& pi, const SetPartition& pi_t) {
  return nu.size() - nu.num_cycles() + 2 * (pi_t.num_blocks() - pi.num_blocks());
}

InverseNSeries weingarten_series(const Permutation& nu, int depth) {
  int n = nu.size();
  if (n > 4) throw GuardError("Weingarten series limited to n <= 4");
  if (depth > n + 8) throw GuardError("Weingarten depth limited to n + 8");
  InverseNSeries w;
  w.depth = depth;
  auto base = orbit_partition(nu);
  for_each_set_partition(n, [&](const SetPartition& pi) {
    for (int l = 0; n + l <= depth; ++l) {
      auto g = gamma_l(pi, nu, l);
      if (g != 0) w.coeffs[n + l] += g;
    }
  }, &base);
  std::erase_if(w.coeffs, [](const auto& kv) { return kv.second == 0; });
  return w;
}

namespace {
using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}
void padd(Poly& a, const Poly& b, int sign) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign > 0 ? b[i] : Rational(-b[i]);
  trim(a);
}
Poly det(const std::vector<std::vector<Poly>>& m) {
  int k = static_cast<int>(m.size());
  if (k == 0) return {Rational(1)};
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  Poly total;
  do {
    int inv = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) inv += idx[a] > idx[b];
    Poly term{Rational(1)};
    for (int a = 0; a < k && !term.empty(); ++a) term = pmul(term, m[a][idx[a]]);
    padd(total, term, inv % 2 ? -1 : 1);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return total;
}
}  // namespace

InverseNSeries RationalFunctionN::expand(int depth) const {
  // num/den = N^{dn - dd} * p(x)/q(x), x = 1/N
  int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
  InverseNSeries s;
  s.depth = depth;
  if (dn < 0) return s;
  int shift = dd - dn;  // leading exponent of N^{-k}
  int terms = depth - shift + 1;
  if (terms <= 0) return s;
  std::vector<Rational> p(terms, 0), q(terms, 0), out(terms, 0);
  for (int i = 0; i < terms && i <= dn; ++i) p[i] = num[dn - i];
  for (int i = 0; i < terms && i <= dd; ++i) q[i] = den[dd - i];
  for (int i = 0; i < terms; ++i) {
    Rational v = p[i];
    for (int j = 1; j <= i; ++j) v -= q[j] * out[i - j];
    out[i] = v / q[0];
  }
  for (int i = 0; i < terms; ++i)
    if (out[i] != 0) s.coeffs[shift + i] = out[i];
  return s;
}

RationalFunctionN weingarten_oracle(const Permutation& nu) {
  int n = nu.size();
  if (n < 1 || n > 3) throw GuardError("Gram-matrix oracle limited to n <= 3");
  std::vector<Permutation> perms;
  for_each_permutation(n, [&](const Permutation& p) { perms.push_back(p); });
  int k = static_cast<int>(perms.size());
  std::vector<std::vector<Poly>> gram(k, std::vector<Poly>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      Poly mono(static_cast<std::size_t>((perms[a] * perms[b].inverse()).num_cycles()) + 1, 0);
      mono.back() = 1;
      gram[a][b] = mono;
    }
  // W(nu) = (G^{-1})[nu][id] = cofactor(id, nu) / det
  int row = static_cast<int>(std::find(perms.begin(), perms.end(), nu) - perms.begin());
  int col = static_cast<int>(std::find(perms.begin(), perms.end(), Permutation(n)) - perms.begin());
  std::vector<std::vector<Poly>> minor;
  for (int a = 0; a < k; ++a) {
    if (a == col) continue;
    std::vector<Poly> r;
    for (int b = 0; b < k; ++b)
      if (b != row) r.push_back(gram[a][b]);
    minor.push_back(std::move(r));
  }
  RationalFunctionN f;
  f.num = det(minor);
  if ((row + col) % 2) for (auto& c : f.num) c = -c;
  f.den = det(gram);
  return f;
}

Rational mobius_mu(const SetPartition& pi, const Permutation& s) {
  check_refines(pi, s);
  int l = s.num_cycles() - 2 * pi.num_blocks() + s.size();
  if (l < 0) return 0;
  return gamma_l(pi, s, l);
}

namespace {
Rational block_gamma_product(const Permutation& nu, const SetPartition& p) {
  Rational r = 1;
  for (const auto& block : p.blocks()) r *= gamma_closed(restrict(nu, block).cycle_type());
  return r;
}
}  // namespace

Rational big_gamma(const Permutation& nu, const SetPartition& pi, const SetPartition& pi_t) {
  auto base = orbit_partition(nu);
  if (!base.leq(pi_t) || !pi_t.leq(pi)) throw DomainError("big_gamma requires pi >= pi_t >= Pi(nu)");
  Rational total = 0;
  for_each_set_partition(nu.size(), [&](const SetPartition& p2) {
    if (pi_t.join(p2) != pi) return;
    if (excess_L(p2, pi_t, base) != 0) return;
    total += block_gamma_product(nu, p2);
  }, &base);
  return total;
}

Rational big_gamma_tree(const Permutation& nu, const SetPartition& pi_t) {
  auto base = orbit_partition(nu);
  if (!base.leq(pi_t)) throw DomainError("big_gamma_tree requires pi_t >= Pi(nu)");
  int k = pi_t.num_blocks();
  if (k > kMaxTreeP) throw GuardError("tree form limited to 6 white vertices");
  // cycle sizes of nu inside each white vertex
  std::vector<std::vector<int>> sizes(k);
  for (const auto& c : nu.cycles()) sizes[pi_t.block_of(c.front())].push_back(static_cast<int>(c.size()));
  Rational total = 0;
  for (const auto& t : enumerate_trees(k, TreeKind::G)) {
    // incident black vertices per white vertex
    std::vector<std::vector<int>> inc(k);
    for (std::size_t e = 0; e < t.edges.size(); ++e)
      for (int g = 0; g < k; ++g)
        if (t.edges[e] >> g & 1u) inc[g].push_back(static_cast<int>(e));
    // choice[g][m] = cycle index attributed to the m-th incident black vertex of g
    std::vector<std::vector<int>> choice(k);
    std::function<void(int)> rec = [&](int g) {
      if (g == k) {
        Rational w = 1;
        std::vector<std::vector<int>> black(t.edges.size());
        for (int h = 0; h < k; ++h)
          for (std::size_t m = 0; m < inc[h].size(); ++m) black[inc[h][m]].push_back(sizes[h][choice[h][m]]);
        for (const auto& b : black) w *= gamma_closed(b);
        for (int h = 0; h < k; ++h)
          for (std::size_t c = 0; c < sizes[h].size(); ++c)
            if (std::find(choice[h].begin(), choice[h].end(), static_cast<int>(c)) == choice[h].end())
              w *= gamma_closed(std::vector<int>{sizes[h][c]});
        total += w;
        return;
      }
      std::function<void(std::size_t)> pick = [&](std::size_t m) {
        if (m == inc[g].size()) {
          rec(g + 1);
          return;
        }
        for (int c = 0; c < static_cast<int>(sizes[g].size()); ++c) {
          if (std::find(choice[g].begin(), choice[g].end(), c) != choice[g].end()) continue;
          choice[g].push_back(c);
          pick(m + 1);
          choice[g].pop_back();
        }
      };
      pick(0);
    };
    rec(0);
  }
  return total;
}

}  // namespace fc
