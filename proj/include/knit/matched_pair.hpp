#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knit/group.hpp"

namespace knit {

inline constexpr long long kDefaultSearchCap = 64;

// Two groups with a left action of G on the set H (alpha) and a right
// action of H on the set G (beta), satisfying Takeuchi's compatibility
// conditions. alpha and beta are dense |G| x |H| matrices: alpha[g][h] is
// an H-index (g |> h), beta[g][h] a G-index (g <| h).
struct MatchedPair {
  FiniteGroup H, G;
  Table alpha, beta;
  bool verified = false;

  int act_left(int g, int h) const { return alpha[g][h]; }
  int act_right(int g, int h) const { return beta[g][h]; }
};

inline std::pair<Table, Table> pair_key(const MatchedPair& mp) {
  return {mp.alpha, mp.beta};
}

inline bool same_pair(const MatchedPair& a, const MatchedPair& b) {
  return same_table(a.H, b.H) && same_table(a.G, b.G) &&
         a.alpha == b.alpha && a.beta == b.beta;
}

struct AxiomCheck {
  bool pass = true;
  std::array<int, 3> witness{-1, -1, -1};
  std::string note;
};

// Per-axiom verification result with the lexicographically first
// counterexample for each failure.
struct MatchedPairCheck {
  AxiomCheck left_action;   // 1 |> h = h and (g1 g2) |> h = g1 |> (g2 |> h)
  AxiomCheck right_action;  // g <| 1 = g and g <| (h1 h2) = (g <| h1) <| h2
  AxiomCheck left_compat;   // g |> (h1 h2) = (g |> h1)((g <| h1) |> h2)
  AxiomCheck right_compat;  // (g1 g2) <| h = (g1 <| (g2 |> h))(g2 <| h)
  AxiomCheck units;         // g |> 1 = 1 and 1 <| h = 1

  bool ok() const {
    return left_action.pass && right_action.pass && left_compat.pass &&
           right_compat.pass && units.pass;
  }

  std::string first_failure() const {
    if (!left_action.pass) return "left action: " + left_action.note;
    if (!right_action.pass) return "right action: " + right_action.note;
    if (!left_compat.pass) return "left compatibility: " + left_compat.note;
    if (!right_compat.pass) return "right compatibility: " + right_compat.note;
    if (!units.pass) return "units: " + units.note;
    return "";
  }
};

inline MatchedPairCheck verify_matched_pair(const FiniteGroup& H,
                                            const FiniteGroup& G,
                                            const Table& alpha,
                                            const Table& beta) {
  const int nh = H.order, ng = G.order;
  auto check_dims = [&](const Table& t, int range, const char* name) {
    if (static_cast<int>(t.size()) != ng)
      throw malformed_error(std::string(name) + " has wrong row count");
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != nh)
        throw malformed_error(std::string(name) + " has a ragged row");
      for (int v : row)
        if (v < 0 || v >= range)
          throw malformed_error(std::string(name) + " entry out of range");
    }
  };
  check_dims(alpha, nh, "alpha");
  check_dims(beta, ng, "beta");

  MatchedPairCheck c;
  auto lbl = [&](int g, int h) {
    return "(" + G.labels[g] + ", " + H.labels[h] + ")";
  };

  for (int h = 0; h < nh && c.left_action.pass; ++h)
    if (alpha[0][h] != h) {
      c.left_action = {false, {0, 0, h}, "1 |> h != h at h=" + H.labels[h]};
    }
  for (int g1 = 0; g1 < ng && c.left_action.pass; ++g1)
    for (int g2 = 0; g2 < ng && c.left_action.pass; ++g2)
      for (int h = 0; h < nh; ++h)
        if (alpha[G.table[g1][g2]][h] != alpha[g1][alpha[g2][h]]) {
          c.left_action = {false,
                           {g1, g2, h},
                           "(g1 g2) |> h != g1 |> (g2 |> h) at " +
                               lbl(g1, h) + " with g2=" + G.labels[g2]};
          break;
        }

  for (int g = 0; g < ng && c.right_action.pass; ++g)
    if (beta[g][0] != g) {
      c.right_action = {false, {g, 0, 0}, "g <| 1 != g at g=" + G.labels[g]};
    }
  for (int g = 0; g < ng && c.right_action.pass; ++g)
    for (int h1 = 0; h1 < nh && c.right_action.pass; ++h1)
      for (int h2 = 0; h2 < nh; ++h2)
        if (beta[g][H.table[h1][h2]] != beta[beta[g][h1]][h2]) {
          c.right_action = {false,
                            {g, h1, h2},
                            "g <| (h1 h2) != (g <| h1) <| h2 at " +
                                lbl(g, h1) + " with h2=" + H.labels[h2]};
          break;
        }

  for (int g = 0; g < ng && c.left_compat.pass; ++g)
    for (int h1 = 0; h1 < nh && c.left_compat.pass; ++h1)
      for (int h2 = 0; h2 < nh; ++h2)
        if (alpha[g][H.table[h1][h2]] !=
            H.table[alpha[g][h1]][alpha[beta[g][h1]][h2]]) {
          c.left_compat = {false,
                           {g, h1, h2},
                           "g |> (h1 h2) != (g |> h1)((g <| h1) |> h2) at " +
                               lbl(g, h1) + " with h2=" + H.labels[h2]};
          break;
        }

  for (int g1 = 0; g1 < ng && c.right_compat.pass; ++g1)
    for (int g2 = 0; g2 < ng && c.right_compat.pass; ++g2)
      for (int h = 0; h < nh; ++h)
        if (beta[G.table[g1][g2]][h] !=
            G.table[beta[g1][alpha[g2][h]]][beta[g2][h]]) {
          c.right_compat = {false,
                            {g1, g2, h},
                            "(g1 g2) <| h != (g1 <| (g2 |> h))(g2 <| h) at " +
                                lbl(g1, h) + " with g2=" + G.labels[g2]};
          break;
        }

  for (int g = 0; g < ng && c.units.pass; ++g)
    if (alpha[g][0] != 0) {
      c.units = {false, {g, 0, -1}, "g |> 1 != 1 at g=" + G.labels[g]};
    }
  for (int h = 0; h < nh && c.units.pass; ++h)
    if (beta[0][h] != 0) {
      c.units = {false, {0, h, -1}, "1 <| h != 1 at h=" + H.labels[h]};
    }

  return c;
}

// Returns a verified MatchedPair or throws with the first failing axiom.
inline MatchedPair make_matched_pair(const FiniteGroup& H,
                                     const FiniteGroup& G, Table alpha,
                                     Table beta) {
  MatchedPairCheck c = verify_matched_pair(H, G, alpha, beta);
  if (!c.ok())
    throw precondition_error("not a matched pair: " + c.first_failure());
  MatchedPair mp;
  mp.H = H;
  mp.G = G;
  mp.alpha = std::move(alpha);
  mp.beta = std::move(beta);
  mp.verified = true;
  return mp;
}

inline Table trivial_alpha(const FiniteGroup& H, const FiniteGroup& G) {
  Table t(G.order, std::vector<int>(H.order));
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < H.order; ++h) t[g][h] = h;
  return t;
}

inline Table trivial_beta(const FiniteGroup& H, const FiniteGroup& G) {
  Table t(G.order, std::vector<int>(H.order));
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < H.order; ++h) t[g][h] = g;
  return t;
}

inline MatchedPair trivial_pair(const FiniteGroup& H, const FiniteGroup& G) {
  return make_matched_pair(H, G, trivial_alpha(H, G), trivial_beta(H, G));
}

inline bool alpha_is_trivial(const MatchedPair& mp) {
  for (int g = 0; g < mp.G.order; ++g)
    for (int h = 0; h < mp.H.order; ++h)
      if (mp.alpha[g][h] != h) return false;
  return true;
}

inline bool beta_is_trivial(const MatchedPair& mp) {
  for (int g = 0; g < mp.G.order; ++g)
    for (int h = 0; h < mp.H.order; ++h)
      if (mp.beta[g][h] != g) return false;
  return true;
}

namespace detail {

inline Subgroup invariant_subgroup(const FiniteGroup& parent,
                                   const std::vector<int>& fixed,
                                   const char* what) {
  // the scanned set must itself be closed; the subgroup closure is a check,
  // not a completion
  Subgroup sub = subgroup_generated(parent, fixed);
  if (sub.elements != fixed)
    throw error(std::string(what) + " is not closed under multiplication");
  for (int e : fixed) {
    int inv = parent.inverse(e);
    if (std::find(fixed.begin(), fixed.end(), inv) == fixed.end())
      throw error(std::string(what) + " is not closed under inverses");
  }
  return sub;
}

}  // namespace detail

// Fix(H) = { h : g |> h = h for all g }.
inline Subgroup fix_h(const MatchedPair& mp) {
  if (!mp.verified) throw precondition_error("matched pair is not verified");
  std::vector<int> fixed;
  for (int h = 0; h < mp.H.order; ++h) {
    bool inv = true;
    for (int g = 0; g < mp.G.order; ++g)
      if (mp.alpha[g][h] != h) {
        inv = false;
        break;
      }
    if (inv) fixed.push_back(h);
  }
  return detail::invariant_subgroup(mp.H, fixed, "Fix(H)");
}

// Fix(G) = { g : g <| h = g for all h }.
inline Subgroup fix_g(const MatchedPair& mp) {
  if (!mp.verified) throw precondition_error("matched pair is not verified");
  std::vector<int> fixed;
  for (int g = 0; g < mp.G.order; ++g) {
    bool inv = true;
    for (int h = 0; h < mp.H.order; ++h)
      if (mp.beta[g][h] != g) {
        inv = false;
        break;
      }
    if (inv) fixed.push_back(g);
  }
  return detail::invariant_subgroup(mp.G, fixed, "Fix(G)");
}

// Ker(beta) = { h : g <| h = g for all g }, a subgroup of H.
inline Subgroup ker_beta(const MatchedPair& mp) {
  if (!mp.verified) throw precondition_error("matched pair is not verified");
  std::vector<int> kernel;
  for (int h = 0; h < mp.H.order; ++h) {
    bool trivial = true;
    for (int g = 0; g < mp.G.order; ++g)
      if (mp.beta[g][h] != g) {
        trivial = false;
        break;
      }
    if (trivial) kernel.push_back(h);
  }
  return detail::invariant_subgroup(mp.H, kernel, "Ker(beta)");
}

enum class ActionSide { left, right };

// For a left action table (G acting on the set `acted`): does every g act
// as a group endomorphism of `acted`? For a right action: every h.
inline bool is_action_by_automorphisms(const FiniteGroup& acted,
                                       const Table& action, ActionSide side) {
  if (side == ActionSide::left) {
    for (const auto& row : action) {
      if (static_cast<int>(row.size()) != acted.order)
        throw malformed_error("action row does not match the acted-on group");
      for (int h1 = 0; h1 < acted.order; ++h1)
        for (int h2 = 0; h2 < acted.order; ++h2)
          if (row[acted.table[h1][h2]] != acted.table[row[h1]][row[h2]])
            return false;
    }
    return true;
  }
  const int ng = static_cast<int>(action.size());
  if (ng != acted.order)
    throw malformed_error("action rows do not match the acted-on group");
  const int nh = ng == 0 ? 0 : static_cast<int>(action[0].size());
  for (int h = 0; h < nh; ++h)
    for (int g1 = 0; g1 < ng; ++g1)
      for (int g2 = 0; g2 < ng; ++g2)
        if (action[acted.table[g1][g2]][h] !=
            acted.table[action[g1][h]][action[g2][h]])
          return false;
  return true;
}

namespace detail {

// Backtracking enumeration of matched-pair tables by cellwise assignment
// with constraint propagation. Unknown cells are -1. The rules propagated
// until fixpoint are the two action axioms, both compatibility conditions,
// and the permutation shape of alpha-rows and beta-columns; identity
// behaviour is seeded up front.
struct PairSearch {
  const FiniteGroup* H = nullptr;
  const FiniteGroup* G = nullptr;
  Table A, B;
  bool failed = false;
  bool progress = false;

  int nh() const { return H->order; }
  int ng() const { return G->order; }

  bool set_a(int g, int h, int v) {
    int& cell = A[g][h];
    if (cell >= 0) {
      if (cell != v) failed = true;
      return !failed;
    }
    cell = v;
    progress = true;
    return true;
  }

  bool set_b(int g, int h, int v) {
    int& cell = B[g][h];
    if (cell >= 0) {
      if (cell != v) failed = true;
      return !failed;
    }
    cell = v;
    progress = true;
    return true;
  }

  void seed() {
    for (int h = 0; h < nh(); ++h) {
      set_a(0, h, h);
      set_b(0, h, 0);
    }
    for (int g = 0; g < ng(); ++g) {
      set_a(g, 0, 0);
      set_b(g, 0, g);
    }
  }

  void scan_left_action() {
    for (int g1 = 0; g1 < ng() && !failed; ++g1)
      for (int g2 = 0; g2 < ng() && !failed; ++g2) {
        const int gg = G->table[g1][g2];
        for (int h = 0; h < nh(); ++h) {
          const int t = A[g2][h];
          if (t < 0) continue;
          const int u = A[g1][t];
          const int x = A[gg][h];
          if (u >= 0) {
            if (!set_a(gg, h, u)) return;
          } else if (x >= 0) {
            if (!set_a(g1, t, x)) return;
          }
        }
      }
  }

  void scan_right_action() {
    for (int g = 0; g < ng() && !failed; ++g)
      for (int h1 = 0; h1 < nh() && !failed; ++h1)
        for (int h2 = 0; h2 < nh(); ++h2) {
          const int hh = H->table[h1][h2];
          const int s = B[g][h1];
          if (s < 0) continue;
          const int u = B[s][h2];
          const int x = B[g][hh];
          if (u >= 0) {
            if (!set_b(g, hh, u)) return;
          } else if (x >= 0) {
            if (!set_b(s, h2, x)) return;
          }
        }
  }

  void scan_left_compat() {
    for (int g = 0; g < ng() && !failed; ++g)
      for (int h1 = 0; h1 < nh() && !failed; ++h1) {
        const int b1 = B[g][h1];
        const int a1 = A[g][h1];
        if (b1 < 0) continue;
        for (int h2 = 0; h2 < nh(); ++h2) {
          const int hh = H->table[h1][h2];
          const int a2 = A[b1][h2];
          const int x = A[g][hh];
          if (a1 >= 0 && a2 >= 0) {
            if (!set_a(g, hh, H->table[a1][a2])) return;
          } else if (x >= 0 && a1 >= 0) {
            if (!set_a(b1, h2, H->table[H->inverse(a1)][x])) return;
          } else if (x >= 0 && a2 >= 0) {
            if (!set_a(g, h1, H->table[x][H->inverse(a2)])) return;
          }
        }
      }
  }

  void scan_right_compat() {
    for (int g1 = 0; g1 < ng() && !failed; ++g1)
      for (int g2 = 0; g2 < ng() && !failed; ++g2) {
        const int gg = G->table[g1][g2];
        for (int h = 0; h < nh(); ++h) {
          const int t = A[g2][h];
          if (t < 0) continue;
          const int c1 = B[g1][t];
          const int c2 = B[g2][h];
          const int x = B[gg][h];
          if (c1 >= 0 && c2 >= 0) {
            if (!set_b(gg, h, G->table[c1][c2])) return;
          } else if (x >= 0 && c2 >= 0) {
            if (!set_b(g1, t, G->table[x][G->inverse(c2)])) return;
          } else if (x >= 0 && c1 >= 0) {
            if (!set_b(g2, h, G->table[G->inverse(c1)][x])) return;
          }
        }
      }
  }

  // alpha rows and beta columns are permutations: reject duplicates and
  // fill the last missing cell.
  void scan_permutations() {
    for (int g = 0; g < ng() && !failed; ++g) {
      std::vector<char> seen(nh(), 0);
      int unknown = -1, count = 0;
      for (int h = 0; h < nh(); ++h) {
        if (A[g][h] < 0) {
          unknown = h;
          ++count;
        } else if (seen[A[g][h]]++) {
          failed = true;
          return;
        }
      }
      if (count == 1) {
        for (int v = 0; v < nh(); ++v)
          if (!seen[v]) {
            if (!set_a(g, unknown, v)) return;
            break;
          }
      }
    }
    for (int h = 0; h < nh() && !failed; ++h) {
      std::vector<char> seen(ng(), 0);
      int unknown = -1, count = 0;
      for (int g = 0; g < ng(); ++g) {
        if (B[g][h] < 0) {
          unknown = g;
          ++count;
        } else if (seen[B[g][h]]++) {
          failed = true;
          return;
        }
      }
      if (count == 1) {
        for (int v = 0; v < ng(); ++v)
          if (!seen[v]) {
            if (!set_b(unknown, h, v)) return;
            break;
          }
      }
    }
  }

  void propagate() {
    progress = true;
    while (progress && !failed) {
      progress = false;
      scan_left_action();
      if (failed) return;
      scan_right_action();
      if (failed) return;
      scan_left_compat();
      if (failed) return;
      scan_right_compat();
      if (failed) return;
      scan_permutations();
    }
  }

  // branch the table with the smaller value domain first: its cells are
  // cheap to decide and unlock the compatibility rules for the other side
  std::optional<std::array<int, 3>> first_unknown() const {
    const int order[2] = {ng() < nh() ? 1 : 0, ng() < nh() ? 0 : 1};
    for (int which : order) {
      const Table& t = which == 0 ? A : B;
      for (int g = 0; g < ng(); ++g)
        for (int h = 0; h < nh(); ++h)
          if (t[g][h] < 0) return std::array<int, 3>{which, g, h};
    }
    return std::nullopt;
  }
};

inline void pair_search_dfs(const PairSearch& st,
                            std::vector<MatchedPair>& out) {
  auto cell = st.first_unknown();
  if (!cell) {
    // fully assigned; the final verification is the soundness net
    MatchedPairCheck c =
        verify_matched_pair(*st.H, *st.G, st.A, st.B);
    if (c.ok()) out.push_back(make_matched_pair(*st.H, *st.G, st.A, st.B));
    return;
  }
  auto [which, g, h] = *cell;
  const int domain = which == 0 ? st.nh() : st.ng();
  for (int v = 0; v < domain; ++v) {
    PairSearch child = st;
    bool ok = which == 0 ? child.set_a(g, h, v) : child.set_b(g, h, v);
    if (!ok) continue;
    child.propagate();
    if (!child.failed) pair_search_dfs(child, out);
  }
}

inline void check_enumeration_inputs(const FiniteGroup& H,
                                     const FiniteGroup& G, long long cap) {
  if (!verify_group(H.table).ok() || !verify_group(G.table).ok())
    throw precondition_error("enumeration requires valid groups");
  const long long product =
      static_cast<long long>(H.order) * static_cast<long long>(G.order);
  if (product > cap)
    throw search_limit_error(
        "search cap exceeded: |H|*|G| = " + std::to_string(product) +
            " > cap " + std::to_string(cap),
        cap);
}

}  // namespace detail

// Complete enumeration of all matched pairs on (H, G), sorted by the
// serialized (alpha, beta) tables.
inline std::vector<MatchedPair> enumerate_matched_pairs(
    const FiniteGroup& H, const FiniteGroup& G,
    long long cap = kDefaultSearchCap) {
  detail::check_enumeration_inputs(H, G, cap);
  detail::PairSearch root;
  root.H = &H;
  root.G = &G;
  root.A.assign(G.order, std::vector<int>(H.order, -1));
  root.B.assign(G.order, std::vector<int>(H.order, -1));
  root.seed();
  root.propagate();
  std::vector<MatchedPair> out;
  if (!root.failed) detail::pair_search_dfs(root, out);
  std::sort(out.begin(), out.end(), [](const MatchedPair& a,
                                       const MatchedPair& b) {
    return pair_key(a) < pair_key(b);
  });
  return out;
}

// All matched pairs with a prescribed beta table (the fibre used by the
// fixed-beta classification). beta need not be an action: the search then
// simply comes back empty.
inline std::vector<MatchedPair> enumerate_matched_pairs_with_beta(
    const FiniteGroup& H, const FiniteGroup& G, const Table& beta,
    long long cap = kDefaultSearchCap) {
  detail::check_enumeration_inputs(H, G, cap);
  if (static_cast<int>(beta.size()) != G.order)
    throw malformed_error("beta has wrong row count");
  for (const auto& row : beta) {
    if (static_cast<int>(row.size()) != H.order)
      throw malformed_error("beta has a ragged row");
    for (int v : row)
      if (v < 0 || v >= G.order)
        throw malformed_error("beta entry out of range");
  }
  detail::PairSearch root;
  root.H = &H;
  root.G = &G;
  root.A.assign(G.order, std::vector<int>(H.order, -1));
  root.B = beta;
  root.seed();
  root.propagate();
  std::vector<MatchedPair> out;
  if (!root.failed) detail::pair_search_dfs(root, out);
  std::sort(out.begin(), out.end(), [](const MatchedPair& a,
                                       const MatchedPair& b) {
    return pair_key(a) < pair_key(b);
  });
  return out;
}

}  // namespace knit
