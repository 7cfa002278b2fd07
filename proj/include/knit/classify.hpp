#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knit/deformation.hpp"
#include "knit/morphism.hpp"

namespace knit {

// A partition of matched pairs into equivalence classes with a witness for
// every within-class ordered pair. The partition comes from exhausted
// pairwise searches, so the absence of cross-class witnesses is certified;
// nonequivalence_search_size records how many generator assignments those
// failed searches examined.
struct Classification {
  std::vector<MatchedPair> items;               // sorted by table key
  std::vector<std::vector<int>> classes;        // sorted members, sorted by head
  std::map<std::pair<int, int>, RVDatum> witnesses;
  std::optional<int> basepoint_class;           // class of the trivial pair
  long long nonequivalence_search_size = 0;

  int class_of(int item) const {
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int m : classes[c])
        if (m == item) return static_cast<int>(c);
    return -1;
  }

  // lexicographically smallest member; items are sorted, so this is the head
  std::vector<int> representatives() const {
    std::vector<int> reps;
    reps.reserve(classes.size());
    for (const auto& cls : classes) reps.push_back(cls.front());
    return reps;
  }
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

inline std::vector<std::vector<int>> partition_from(UnionFind& uf, int n) {
  std::map<int, std::vector<int>> buckets;
  for (int i = 0; i < n; ++i) buckets[uf.find(i)].push_back(i);
  std::vector<std::vector<int>> classes;
  for (auto& [root, members] : buckets) {
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

}  // namespace detail

// Homomorphism r : G -> H determines the conjugation action
// g |>_r h = r(g) h r(g)^-1; the class of the trivial pair consists
// exactly of the pairs (|>_r, trivial beta).
inline Table conjugation_action(const FiniteGroup& H, const FiniteGroup& G,
                                const std::vector<int>& r) {
  Table t(G.order, std::vector<int>(H.order));
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < H.order; ++h)
      t[g][h] = H.table[H.table[r[g]][h]][H.inverse(r[g])];
  return t;
}

// Witness that a matched pair is isomorphic (fixing H) to the direct
// product: a homomorphism r with beta trivial and alpha the conjugation
// action of r.
inline std::optional<std::vector<int>> recognize_direct_product(
    const MatchedPair& mp) {
  if (!mp.verified) throw precondition_error("matched pair is not verified");
  if (!beta_is_trivial(mp)) return std::nullopt;
  for (const GroupMap& r : homomorphisms(mp.G, mp.H))
    if (conjugation_action(mp.H, mp.G, r.images) == mp.alpha)
      return r.images;
  return std::nullopt;
}

// Classification of all matched pairs on (H, G) by isomorphism of their
// bicrossed products fixing H (sigma = id). The basepoint class is the
// class of the pair of trivial actions, whose members are checked to be
// exactly the conjugation-action pairs.
inline Classification classify_k2(const FiniteGroup& H, const FiniteGroup& G,
                                  long long cap = kDefaultSearchCap) {
  Classification out;
  out.items = enumerate_matched_pairs(H, G, cap);
  const int n = static_cast<int>(out.items.size());
  const GroupMap id = identity_map(H);

  detail::UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        out.witnesses.emplace(std::make_pair(i, i), identity_rv(out.items[i]));
        continue;
      }
      auto w = is_sigma_isomorphic(out.items[i], out.items[j], id);
      if (w) {
        uf.merge(i, j);
        out.witnesses.emplace(std::make_pair(i, j), std::move(*w));
      } else {
        out.nonequivalence_search_size +=
            sigma_morphism_search_space(out.items[i], out.items[j]);
      }
    }
  out.classes = detail::partition_from(uf, n);

  const Table ta = trivial_alpha(H, G), tb = trivial_beta(H, G);
  for (int i = 0; i < n; ++i)
    if (out.items[i].alpha == ta && out.items[i].beta == tb) {
      out.basepoint_class = out.class_of(i);
      break;
    }
  if (out.basepoint_class) {
    for (int m : out.classes[*out.basepoint_class])
      if (!recognize_direct_product(out.items[m]))
        throw error(
            "basepoint class member is not a conjugation-action pair");
  }
  return out;
}

// Classification of the matched pairs sharing a prescribed right action
// beta, by the fixed-beta morphisms (maps r : G -> Ker(beta)). The item
// list can be empty; the basepoint is the class of the trivial alpha when
// that pair exists.
inline Classification classify_b2(const FiniteGroup& H, const FiniteGroup& G,
                                  const Table& beta,
                                  long long cap = kDefaultSearchCap) {
  // beta must itself be a right action of H on the set G
  if (static_cast<int>(beta.size()) != G.order)
    throw malformed_error("beta has wrong row count");
  for (const auto& row : beta)
    if (static_cast<int>(row.size()) != H.order)
      throw malformed_error("beta has a ragged row");
  for (int g = 0; g < G.order; ++g)
    if (beta[g][0] != g)
      throw precondition_error("beta is not a right action: g <| 1 != g");
  for (int g = 0; g < G.order; ++g)
    for (int h1 = 0; h1 < H.order; ++h1)
      for (int h2 = 0; h2 < H.order; ++h2)
        if (beta[g][H.table[h1][h2]] != beta[beta[g][h1]][h2])
          throw precondition_error(
              "beta is not a right action of H on the set G");

  Classification out;
  out.items = enumerate_matched_pairs_with_beta(H, G, beta, cap);
  const int n = static_cast<int>(out.items.size());
  const GroupMap id = identity_map(H);

  detail::UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const long long kernel_space = [&] {
        const std::size_t gens =
            detail::generators_or_default(G).size();
        long long t = 1;
        const long long k = ker_beta(out.items[i]).group.order;
        for (std::size_t s = 0; s < gens; ++s) t *= k;
        return t;
      }();
      auto ms = enumerate_b2_morphisms(out.items[i], out.items[j]);
      if (!ms.empty()) {
        uf.merge(i, j);
        // a fixed-beta witness is a sigma = id witness with v = id
        RVDatum d;
        d.source = out.items[i];
        d.target = out.items[j];
        d.sigma = id;
        d.r = ms.front().r;
        d.v.resize(G.order);
        std::iota(d.v.begin(), d.v.end(), 0);
        d.v_bijective = true;
        out.witnesses.emplace(std::make_pair(i, j), std::move(d));
      } else {
        out.nonequivalence_search_size += kernel_space;
      }
    }
  out.classes = detail::partition_from(uf, n);

  const Table ta = trivial_alpha(H, G);
  for (int i = 0; i < n; ++i)
    if (out.items[i].alpha == ta) {
      out.basepoint_class = out.class_of(i);
      break;
    }
  return out;
}

// Witness for isomorphism (fixing H) with a semidirect product.
struct SemidirectWitness {
  std::vector<int> r;
  std::vector<int> v;
  MatchedPair target;  // the semidirect matched pair reached
};

// Is the bicrossed product of mp isomorphic, fixing H, to a left
// semidirect product H x| G? Requires trivial beta; searches over all
// actions of G on H by automorphisms.
inline std::optional<SemidirectWitness> recognize_semidirect_left(
    const MatchedPair& mp) {
  if (!mp.verified) throw precondition_error("matched pair is not verified");
  if (!beta_is_trivial(mp)) return std::nullopt;
  const GroupMap id = identity_map(mp.H);
  const AutomorphismGroup aut = automorphism_group(mp.H);
  for (const GroupMap& phi : homomorphisms(mp.G, aut.group)) {
    Table action(mp.G.order, std::vector<int>(mp.H.order));
    for (int g = 0; g < mp.G.order; ++g)
      for (int h = 0; h < mp.H.order; ++h)
        action[g][h] = aut.elements[phi.images[g]].images[h];
    MatchedPair target = make_matched_pair(
        mp.H, mp.G, std::move(action), trivial_beta(mp.H, mp.G));
    if (auto w = is_sigma_isomorphic(mp, target, id))
      return SemidirectWitness{w->r, w->v, std::move(target)};
  }
  return std::nullopt;
}

// Is the bicrossed product of mp isomorphic, fixing H, to a right
// semidirect product H |x G? When no target action is supplied, searches
// over all actions of H on G by automorphisms.
inline std::optional<SemidirectWitness> recognize_semidirect_right(
    const MatchedPair& mp, const std::optional<Table>& target_beta = {}) {
  if (!mp.verified) throw precondition_error("matched pair is not verified");
  const GroupMap id = identity_map(mp.H);

  std::vector<Table> candidates;
  if (target_beta) {
    if (!is_action_by_automorphisms(mp.G, *target_beta, ActionSide::right))
      throw precondition_error("supplied beta is not by automorphisms");
    candidates.push_back(*target_beta);
  } else {
    // right actions correspond to antihomomorphisms into Aut(G), i.e.
    // homomorphisms precomposed with inversion
    const AutomorphismGroup aut = automorphism_group(mp.G);
    for (const GroupMap& phi : homomorphisms(mp.H, aut.group)) {
      Table beta(mp.G.order, std::vector<int>(mp.H.order));
      for (int g = 0; g < mp.G.order; ++g)
        for (int h = 0; h < mp.H.order; ++h)
          beta[g][h] = aut.elements[phi.images[mp.H.inverse(h)]].images[g];
      candidates.push_back(std::move(beta));
    }
  }
  for (Table& beta : candidates) {
    MatchedPair target = make_matched_pair(
        mp.H, mp.G, trivial_alpha(mp.H, mp.G), std::move(beta));
    if (auto w = is_sigma_isomorphic(mp, target, id))
      return SemidirectWitness{w->r, w->v, std::move(target)};
  }
  return std::nullopt;
}

// Plain-text identification of a bicrossed product: the direct product
// when the pair is trivial up to conjugation, otherwise a presentation
// rendered from the embedded generators.
inline std::string describe_group(const BicrossedGroup& bx) {
  const FiniteGroup& H = bx.mp.H;
  const FiniteGroup& G = bx.mp.G;
  const StructuralReport sr = structural_report(bx.base);
  if (sr.is_cyclic) return "C" + std::to_string(bx.base.order);
  if (sr.is_abelian && structural_report(H).is_cyclic &&
      structural_report(G).is_cyclic)
    return "C" + std::to_string(H.order) + " x C" + std::to_string(G.order);
  std::string out = "< ";
  bool first = true;
  for (int h : H.generators) {
    if (!first) out += ", ";
    out += H.labels[h];
    first = false;
  }
  for (int g : G.generators) {
    if (!first) out += ", ";
    out += G.labels[g];
    first = false;
  }
  out += " | ";
  first = true;
  for (int h : H.generators) {
    if (!first) out += ", ";
    out += H.labels[h] + "^" + std::to_string(H.element_order(h)) + " = 1";
    first = false;
  }
  for (int g : G.generators) {
    if (!first) out += ", ";
    out += G.labels[g] + "^" + std::to_string(G.element_order(g)) + " = 1";
    first = false;
  }
  for (const std::string& rel : generator_relations(bx)) out += ", " + rel;
  out += " >";
  return out;
}

}  // namespace knit
