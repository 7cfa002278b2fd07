#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knit/matched_pair.hpp"

namespace knit {

namespace detail {

inline long long pow_mod(long long base, long long exp, long long mod) {
  if (mod == 1) return 0;
  long long acc = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) acc = acc * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return acc;
}

// prime factorization by trial division, (prime, exponent) pairs
inline std::vector<std::pair<long long, int>> factorize(long long m) {
  std::vector<std::pair<long long, int>> out;
  for (long long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

inline bool is_canonical_cyclic(const FiniteGroup& g) {
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j)
      if (g.table[i][j] != (i + j) % g.order) return false;
  return true;
}

}  // namespace detail

// Exponents t with t^n = 1 in the units mod m; these parametrize the
// homomorphisms C_n -> Aut(C_m) via the action b -> b^t. t = 1 is always
// present; for m = 1 the list is the singleton {1}.
inline std::vector<long long> varsigma(long long n, long long m) {
  if (n < 1 || m < 1)
    throw precondition_error("varsigma arguments must be positive");
  if (m == 1) return {1};
  std::vector<long long> out;
  for (long long t = 1; t < m; ++t)
    if (detail::pow_mod(t, n, m) == 1) out.push_back(t);
  return out;
}

// Closed-form |varsigma(n, m)| from the decomposition of the units mod m:
// solutions of x^n = 1 in a cyclic factor of order d number gcd(n, d).
inline long long varsigma_count_formula(long long n, long long m) {
  if (n < 1 || m < 1)
    throw precondition_error("varsigma arguments must be positive");
  long long count = 1;
  int a0 = 0;
  for (auto [p, e] : detail::factorize(m)) {
    if (p == 2) {
      a0 = e;
      continue;
    }
    long long d = 1;
    for (int k = 1; k < e; ++k) d *= p;
    d *= p - 1;  // p^(e-1) (p-1)
    count *= std::gcd(n, d);
  }
  if (a0 >= 2) {
    long long d = 1;
    for (int k = 2; k < a0; ++k) d *= 2;  // 2^(a0-2)
    count *= std::gcd(n, 2LL) * std::gcd(n, d);
  }
  return count;
}

// |varsigma(2, m)| in terms of k = number of odd prime divisors of m and
// the 2-adic valuation a0 of m: 2^k, 2^(k+1), 2^(k+2).
inline long long varsigma_count_c2(long long m) {
  if (m < 1) throw precondition_error("m must be positive");
  int a0 = 0, k = 0;
  for (auto [p, e] : detail::factorize(m)) {
    if (p == 2)
      a0 = e;
    else
      ++k;
  }
  long long out = 1;
  for (int i = 0; i < k; ++i) out *= 2;
  if (a0 == 2) out *= 2;
  if (a0 >= 3) out *= 4;
  return out;
}

// |varsigma(p, m)| for an odd prime p: the product of gcd(p, q - 1) over
// odd prime divisors q of m, times p when p^2 divides m.
inline long long varsigma_count_odd_prime(long long p, long long m) {
  if (m < 1) throw precondition_error("m must be positive");
  long long out = 1;
  bool p_squared = false;
  for (auto [q, e] : detail::factorize(m)) {
    if (q == 2) continue;
    out *= std::gcd(p, q - 1);
    if (q == p && e >= 2) p_squared = true;
  }
  if (p_squared) out *= p;
  return out;
}

// All matched pairs (C_2, C_m): trivial alpha and beta_t(b^i, a) = b^(it)
// for t in varsigma(2, m). Sorted by table key.
inline std::vector<MatchedPair> c2_matched_pairs(long long m) {
  const FiniteGroup H = cyclic_group(2, "a");
  const FiniteGroup G = cyclic_group(static_cast<int>(m), "b");
  std::vector<MatchedPair> out;
  for (long long t : varsigma(2, m)) {
    Table beta(G.order, std::vector<int>(2));
    for (int i = 0; i < G.order; ++i) {
      beta[i][0] = i;
      beta[i][1] = static_cast<int>(i * t % m);
    }
    out.push_back(make_matched_pair(H, G, trivial_alpha(H, G),
                                    std::move(beta)));
  }
  std::sort(out.begin(), out.end(), [](const MatchedPair& a,
                                       const MatchedPair& b) {
    return pair_key(a) < pair_key(b);
  });
  return out;
}

// All matched pairs (C_3, C_m), assembled from the three closed-form
// families: trivial alpha with beta_t (t in varsigma(3, m)); for even m
// the inversion action with trivial beta; for m = 6u two further pairs
// with both actions nontrivial. Sorted by table key.
inline std::vector<MatchedPair> c3_matched_pairs(long long m) {
  const FiniteGroup H = cyclic_group(3, "a");
  const FiniteGroup G = cyclic_group(static_cast<int>(m), "b");
  std::vector<MatchedPair> out;

  for (long long t : varsigma(3, m)) {
    Table beta(G.order, std::vector<int>(3));
    for (int i = 0; i < G.order; ++i) {
      beta[i][0] = i;
      beta[i][1] = static_cast<int>(i * t % m);
      beta[i][2] = static_cast<int>(i * t % m * t % m);
    }
    out.push_back(make_matched_pair(H, G, trivial_alpha(H, G),
                                    std::move(beta)));
  }

  if (m % 2 == 0) {
    Table inversion(G.order, std::vector<int>(3));
    for (int j = 0; j < G.order; ++j) {
      inversion[j][0] = 0;
      inversion[j][1] = j % 2 == 0 ? 1 : 2;
      inversion[j][2] = j % 2 == 0 ? 2 : 1;
    }
    out.push_back(make_matched_pair(H, G, inversion, trivial_beta(H, G)));

    if (m % 6 == 0) {
      const long long u = m / 6;
      Table b1(G.order, std::vector<int>(3)), b2(G.order, std::vector<int>(3));
      for (int j = 0; j < G.order; ++j) {
        b1[j][0] = j;
        b2[j][0] = j;
        if (j % 2 == 0) {
          b1[j][1] = b1[j][2] = j;
          b2[j][1] = b2[j][2] = j;
        } else {
          b1[j][1] = static_cast<int>((2 * u + j) % m);
          b1[j][2] = static_cast<int>((4 * u + j) % m);
          b2[j][1] = static_cast<int>((4 * u + j) % m);
          b2[j][2] = static_cast<int>((2 * u + j) % m);
        }
      }
      out.push_back(make_matched_pair(H, G, inversion, std::move(b1)));
      out.push_back(make_matched_pair(H, G, inversion, std::move(b2)));
    }
  }

  std::sort(out.begin(), out.end(), [](const MatchedPair& a,
                                       const MatchedPair& b) {
    return pair_key(a) < pair_key(b);
  });
  return out;
}

// Count comparison for the (C_3, C_m) family. `stated` is the count the
// closed-form case analysis asserts (|varsigma| for odd m, 2 + |varsigma|
// when 6 | m); the constructions themselves yield |varsigma| + 3 when
// 6 | m, and the mismatch is reported rather than silently corrected.
struct C3CountReport {
  long long m = 0;
  long long varsigma3 = 0;
  long long constructed = 0;
  std::optional<long long> stated;
  bool count_mismatch = false;
};

inline C3CountReport c3_count_report(long long m) {
  C3CountReport rep;
  rep.m = m;
  rep.varsigma3 = static_cast<long long>(varsigma(3, m).size());
  rep.constructed = static_cast<long long>(c3_matched_pairs(m).size());
  if (m % 2 == 1)
    rep.stated = rep.varsigma3;
  else if (m % 6 == 0)
    rep.stated = 2 + rep.varsigma3;
  if (rep.stated) rep.count_mismatch = *rep.stated != rep.constructed;
  return rep;
}

// A matched pair of cyclic groups (C_n, C_m) in substitution form: a pair
// of permutations theta of Z_n and phi of Z_m encoding the actions by
//   alpha(b^i, a^x) = a^(theta^i(x)),  beta(b^y, a^j) = b^(phi^j(y)).
struct SubstitutionPair {
  int n = 1, m = 1;
  std::vector<int> theta;
  std::vector<int> phi;
};

inline int perm_order(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<int> cur(p);
  int ord = 1;
  auto is_id = [&] {
    for (int i = 0; i < n; ++i)
      if (cur[i] != i) return false;
    return true;
  };
  while (!is_id()) {
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i) next[i] = p[cur[i]];
    cur = std::move(next);
    ++ord;
  }
  return ord;
}

struct SubstitutionCheck {
  AxiomCheck fixes_zero;     // theta(0) = 0 and phi(0) = 0
  AxiomCheck order_divides;  // ord(theta) | m and ord(phi) | n
  AxiomCheck theta_compat;   // theta^y(x+z) - theta^y(z) = theta^(phi^z(y))(x)
  AxiomCheck phi_compat;     // phi^y(x+z) - phi^y(z) = phi^(theta^z(y))(x)

  bool ok() const {
    return fixes_zero.pass && order_divides.pass && theta_compat.pass &&
           phi_compat.pass;
  }
};

inline SubstitutionCheck verify_substitution(const SubstitutionPair& sp) {
  if (!detail::is_permutation(sp.theta, sp.n) ||
      !detail::is_permutation(sp.phi, sp.m))
    throw malformed_error("theta and phi must be permutations");
  SubstitutionCheck c;
  if (sp.theta[0] != 0)
    c.fixes_zero = {false, {0, -1, -1}, "theta(0) != 0"};
  else if (sp.phi[0] != 0)
    c.fixes_zero = {false, {0, -1, -1}, "phi(0) != 0"};
  if (sp.m % perm_order(sp.theta) != 0)
    c.order_divides = {false, {-1, -1, -1}, "ord(theta) does not divide m"};
  else if (sp.n % perm_order(sp.phi) != 0)
    c.order_divides = {false, {-1, -1, -1}, "ord(phi) does not divide n"};

  // iterate tables: theta^y for y < m, phi^j for j < n
  std::vector<std::vector<int>> tp(sp.m + 1, std::vector<int>(sp.n));
  std::iota(tp[0].begin(), tp[0].end(), 0);
  for (int y = 1; y <= sp.m; ++y)
    for (int x = 0; x < sp.n; ++x) tp[y][x] = sp.theta[tp[y - 1][x]];
  std::vector<std::vector<int>> pp(sp.n + 1, std::vector<int>(sp.m));
  std::iota(pp[0].begin(), pp[0].end(), 0);
  for (int j = 1; j <= sp.n; ++j)
    for (int y = 0; y < sp.m; ++y) pp[j][y] = sp.phi[pp[j - 1][y]];

  for (int y = 0; y < sp.m && c.theta_compat.pass; ++y)
    for (int z = 0; z < sp.n && c.theta_compat.pass; ++z)
      for (int x = 0; x < sp.n; ++x) {
        const int lhs =
            ((tp[y][(x + z) % sp.n] - tp[y][z]) % sp.n + sp.n) % sp.n;
        if (lhs != tp[pp[z][y]][x]) {
          c.theta_compat = {false, {x, y, z}, "fails"};
          break;
        }
      }
  for (int y = 0; y < sp.n && c.phi_compat.pass; ++y)
    for (int z = 0; z < sp.m && c.phi_compat.pass; ++z)
      for (int x = 0; x < sp.m; ++x) {
        const int lhs =
            ((pp[y][(x + z) % sp.m] - pp[y][z]) % sp.m + sp.m) % sp.m;
        if (lhs != pp[tp[z][y]][x]) {
          c.phi_compat = {false, {x, y, z}, "fails"};
          break;
        }
      }
  return c;
}

// All substitution pairs for (C_n, C_m), found by backtracking over the
// two permutations with incremental condition checks; the side with the
// smaller index set is assigned first. Sorted by (theta, phi).
inline std::vector<SubstitutionPair> special_substitutions(
    int n, int m, long long cap = kDefaultSearchCap) {
  if (n < 1 || m < 1)
    throw precondition_error("substitution moduli must be positive");
  if (static_cast<long long>(n) * m > cap)
    throw search_limit_error(
        "substitution search cap exceeded: n*m = " + std::to_string(
            static_cast<long long>(n) * m) +
            " > cap " + std::to_string(cap),
        cap);

  std::vector<int> theta(n, -1), phi(m, -1);
  theta[0] = 0;
  if (m > 0) phi[0] = 0;
  std::vector<char> used_t(n, 0), used_p(m, 0);
  used_t[0] = 1;
  used_p[0] = 1;

  // partial iterate: applies perm `times` times, nullopt if a needed value
  // is still unassigned
  auto iter = [](const std::vector<int>& p, int times,
                 int start) -> std::optional<int> {
    int cur = start;
    for (int k = 0; k < times; ++k) {
      if (p[cur] < 0) return std::nullopt;
      cur = p[cur];
    }
    return cur;
  };

  // instances with x = 0, y = 0 or z = 0 hold automatically once the
  // permutations fix 0, so the scans start at 1
  auto consistent = [&]() {
    for (int y = 1; y < m; ++y)
      for (int z = 1; z < n; ++z)
        for (int x = 1; x < n; ++x) {
          auto a = iter(theta, y, (x + z) % n);
          auto b = iter(theta, y, z);
          if (!a || !b) continue;
          auto e = iter(phi, z, y);
          if (!e) continue;
          auto c = iter(theta, *e % m, x);
          if (!c) continue;
          if (((*a - *b) % n + n) % n != *c) return false;
        }
    for (int y = 1; y < n; ++y)
      for (int z = 1; z < m; ++z)
        for (int x = 1; x < m; ++x) {
          auto a = iter(phi, y, (x + z) % m);
          auto b = iter(phi, y, z);
          if (!a || !b) continue;
          auto e = iter(theta, z, y);
          if (!e) continue;
          auto c = iter(phi, *e % n, x);
          if (!c) continue;
          if (((*a - *b) % m + m) % m != *c) return false;
        }
    return true;
  };

  // cycle shape pruning: the order of each permutation must divide the
  // other modulus, so a closed cycle of non-dividing length or an open
  // chain already longer than every admissible cycle kills the branch
  auto cycle_ok = [](const std::vector<int>& perm, int at, int bound) {
    const int size = static_cast<int>(perm.size());
    int fwd = 0, cur = perm[at];
    while (cur >= 0 && cur != at) {
      cur = perm[cur];
      if (++fwd > size) break;
    }
    if (cur == at) return bound % (fwd + 1) == 0;
    int bwd = 0, head = at;
    while (true) {
      int prev = -1;
      for (int u = 0; u < size; ++u)
        if (perm[u] == head) {
          prev = u;
          break;
        }
      if (prev < 0) break;
      head = prev;
      ++bwd;
    }
    return fwd + bwd + 1 <= bound;
  };

  std::vector<SubstitutionPair> out;
  // cells of the first permutation, then the second
  struct Cell {
    bool is_theta;
    int idx;
  };
  std::vector<Cell> cells;
  auto push_cells = [&](bool is_theta, int size) {
    for (int i = 1; i < size; ++i) cells.push_back({is_theta, i});
  };
  if (n <= m) {
    push_cells(true, n);
    push_cells(false, m);
  } else {
    push_cells(false, m);
    push_cells(true, n);
  }

  auto dfs = [&](auto&& self, std::size_t at) -> void {
    if (at == cells.size()) {
      SubstitutionPair sp{n, m, theta, phi};
      if (verify_substitution(sp).ok()) out.push_back(std::move(sp));
      return;
    }
    const Cell cell = cells[at];
    std::vector<int>& perm = cell.is_theta ? theta : phi;
    std::vector<char>& used = cell.is_theta ? used_t : used_p;
    const int size = cell.is_theta ? n : m;
    const int other = cell.is_theta ? m : n;
    for (int val = 1; val < size; ++val) {
      if (used[val]) continue;
      perm[cell.idx] = val;
      used[val] = 1;
      bool ok = cycle_ok(perm, cell.idx, other) && consistent();
      // once a permutation is complete its order must divide the other
      // modulus
      if (ok && cell.idx == size - 1) {
        bool full = true;
        for (int i = 0; i < size; ++i)
          if (perm[i] < 0) full = false;
        if (full && other % perm_order(perm) != 0) ok = false;
      }
      if (ok) self(self, at + 1);
      perm[cell.idx] = -1;
      used[val] = 0;
    }
  };
  dfs(dfs, 0);

  std::sort(out.begin(), out.end(),
            [](const SubstitutionPair& a, const SubstitutionPair& b) {
              return std::tie(a.theta, a.phi) < std::tie(b.theta, b.phi);
            });
  return out;
}

// The two directions of the bijection between substitution pairs and
// matched pairs of cyclic groups.
inline MatchedPair matched_pair_from_substitution(const SubstitutionPair& sp) {
  SubstitutionCheck c = verify_substitution(sp);
  if (!c.ok())
    throw precondition_error("not a valid substitution pair");
  const FiniteGroup H = cyclic_group(sp.n, "a");
  const FiniteGroup G = cyclic_group(sp.m, "b");
  Table alpha(sp.m, std::vector<int>(sp.n));
  Table beta(sp.m, std::vector<int>(sp.n));
  std::vector<int> tpow(sp.n), ppow(sp.m);
  std::iota(tpow.begin(), tpow.end(), 0);
  for (int i = 0; i < sp.m; ++i) {
    for (int x = 0; x < sp.n; ++x) alpha[i][x] = tpow[x];
    std::vector<int> next(sp.n);
    for (int x = 0; x < sp.n; ++x) next[x] = sp.theta[tpow[x]];
    tpow = std::move(next);
  }
  std::iota(ppow.begin(), ppow.end(), 0);
  for (int j = 0; j < sp.n; ++j) {
    for (int y = 0; y < sp.m; ++y) beta[y][j] = ppow[y];
    std::vector<int> next(sp.m);
    for (int y = 0; y < sp.m; ++y) next[y] = sp.phi[ppow[y]];
    ppow = std::move(next);
  }
  return make_matched_pair(H, G, std::move(alpha), std::move(beta));
}

inline SubstitutionPair substitution_from_matched_pair(const MatchedPair& mp) {
  if (!mp.verified) throw precondition_error("matched pair is not verified");
  if (!detail::is_canonical_cyclic(mp.H) || !detail::is_canonical_cyclic(mp.G))
    throw precondition_error(
        "substitution form needs cyclic groups in canonical form");
  SubstitutionPair sp;
  sp.n = mp.H.order;
  sp.m = mp.G.order;
  sp.theta.resize(sp.n);
  sp.phi.resize(sp.m);
  for (int x = 0; x < sp.n; ++x)
    sp.theta[x] = sp.m >= 2 ? mp.alpha[1][x] : x;
  for (int y = 0; y < sp.m; ++y)
    sp.phi[y] = sp.n >= 2 ? mp.beta[y][1] : y;
  SubstitutionCheck c = verify_substitution(sp);
  if (!c.ok())
    throw error("matched pair did not produce a valid substitution pair");
  return sp;
}

}  // namespace knit
