#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "knit/morphism.hpp"

namespace knit {

// A deformation triple (sigma, v, r): an automorphism of H, a permutation
// of the set G fixing the identity, and a normalized transition map
// r : G -> H satisfying the compatibility condition
//   r(v^-1((v(g1) <| r(g2)) v(g2))) = r(g1)(v(g1) |> r(g2)).
struct DeformationDatum {
  GroupMap sigma;
  std::vector<int> v;
  std::vector<int> r;
};

struct DatumCheck {
  AxiomCheck shape;          // v is a permutation, r in range
  AxiomCheck normalization;  // v(1) = 1 and r(1) = 1
  AxiomCheck compatibility;  // the displayed condition, all (g1, g2)

  bool ok() const {
    return shape.pass && normalization.pass && compatibility.pass;
  }

  std::string first_failure() const {
    if (!shape.pass) return "shape: " + shape.note;
    if (!normalization.pass) return "normalization: " + normalization.note;
    if (!compatibility.pass) return "compatibility: " + compatibility.note;
    return "";
  }
};

inline DatumCheck verify_datum(const MatchedPair& mp,
                               const DeformationDatum& d) {
  if (!mp.verified) throw precondition_error("matched pair is not verified");
  detail::require_automorphism(d.sigma, mp.H);
  const int ng = mp.G.order;
  DatumCheck c;
  if (!detail::is_permutation(d.v, ng)) {
    c.shape = {false, {-1, -1, -1}, "v is not a permutation of G"};
    return c;
  }
  if (static_cast<int>(d.r.size()) != ng) {
    c.shape = {false, {-1, -1, -1}, "r is not defined on all of G"};
    return c;
  }
  for (int x : d.r)
    if (x < 0 || x >= mp.H.order) {
      c.shape = {false, {-1, -1, -1}, "r value out of range"};
      return c;
    }
  if (d.v[0] != 0)
    c.normalization = {false, {0, -1, -1}, "v(1) != 1"};
  else if (d.r[0] != 0)
    c.normalization = {false, {0, -1, -1}, "r(1) != 1"};
  if (!c.normalization.pass) return c;

  std::vector<int> vinv(ng);
  for (int g = 0; g < ng; ++g) vinv[d.v[g]] = g;
  for (int g1 = 0; g1 < ng && c.compatibility.pass; ++g1)
    for (int g2 = 0; g2 < ng; ++g2) {
      const int inner = mp.G.table[mp.beta[d.v[g1]][d.r[g2]]][d.v[g2]];
      const int lhs = d.r[vinv[inner]];
      const int rhs = mp.H.table[d.r[g1]][mp.alpha[d.v[g1]][d.r[g2]]];
      if (lhs != rhs) {
        c.compatibility = {false,
                           {g1, g2, -1},
                           "fails at g1=" + mp.G.labels[g1] +
                               ", g2=" + mp.G.labels[g2]};
        break;
      }
    }
  return c;
}

// Result of deforming a matched pair: the new pair on (G, *), the
// isomorphism psi onto the original bicrossed product, and the carrier
// identification (index i of the deformed group is element i of the
// original set G).
struct Deformed {
  MatchedPair pair;
  GroupMap psi;  // bicrossed(pair) -> bicrossed(original)
  std::vector<int> carrier;
};

inline Deformed deform(const MatchedPair& mp, const DeformationDatum& d) {
  DatumCheck c = verify_datum(mp, d);
  if (!c.ok())
    throw precondition_error("invalid deformation datum: " +
                             c.first_failure());
  const int ng = mp.G.order, nh = mp.H.order;
  std::vector<int> vinv(ng), siginv(nh);
  for (int g = 0; g < ng; ++g) vinv[d.v[g]] = g;
  for (int h = 0; h < nh; ++h) siginv[d.sigma.images[h]] = h;

  Table star(ng, std::vector<int>(ng));
  for (int g1 = 0; g1 < ng; ++g1)
    for (int g2 = 0; g2 < ng; ++g2)
      star[g1][g2] = vinv[mp.G.table[mp.beta[d.v[g1]][d.r[g2]]][d.v[g2]]];

  Table beta2(ng, std::vector<int>(nh));
  Table alpha2(ng, std::vector<int>(nh));
  for (int g = 0; g < ng; ++g)
    for (int h = 0; h < nh; ++h) {
      const int sh = d.sigma.images[h];
      beta2[g][h] = vinv[mp.beta[d.v[g]][sh]];
      const int u = d.r[g];
      const int w = mp.alpha[d.v[g]][sh];
      const int z = d.r[vinv[mp.beta[d.v[g]][sh]]];
      alpha2[g][h] = siginv[mp.H.table[mp.H.table[u][w]][mp.H.inverse(z)]];
    }

  GroupCheck gc = verify_group(star);
  if (!gc.ok())
    throw error("deformed multiplication is not a group: " + gc.first_failure);
  FiniteGroup gstar;
  gstar.order = ng;
  gstar.table = std::move(star);
  gstar.labels = mp.G.labels;
  gstar.generators = find_generators(gstar.table);

  Deformed out;
  out.pair = make_matched_pair(mp.H, gstar, std::move(alpha2),
                               std::move(beta2));
  out.carrier.resize(ng);
  std::iota(out.carrier.begin(), out.carrier.end(), 0);

  const BicrossedGroup src = bicrossed(out.pair);
  const BicrossedGroup tgt = bicrossed(mp);
  std::vector<int> images(src.base.order);
  for (int h = 0; h < nh; ++h)
    for (int g = 0; g < ng; ++g)
      images[h * ng + g] =
          mp.H.table[d.sigma.images[h]][d.r[g]] * ng + d.v[g];
  out.psi = make_map(src.base, tgt.base, std::move(images));
  if (!out.psi.is_homomorphism || !out.psi.is_bijective)
    throw error("deformation isomorphism failed");
  for (int h = 0; h < nh; ++h)
    if (out.psi.images[src.embed_h.images[h]] !=
        tgt.embed_h.images[d.sigma.images[h]])
      throw error("deformation isomorphism does not restrict to sigma");
  return out;
}

// All deformation data (v, r) for a fixed sigma, sorted by (v, r). v runs
// over permutations of G fixing the identity, r over normalized maps; the
// compatibility condition is checked incrementally as r fills in.
inline std::vector<DeformationDatum> enumerate_deformation_data(
    const MatchedPair& mp, const GroupMap& sigma,
    long long cap = 10'000'000) {
  if (!mp.verified) throw precondition_error("matched pair is not verified");
  detail::require_automorphism(sigma, mp.H);
  const int ng = mp.G.order, nh = mp.H.order;

  // raw candidate count (|G|-1)! * |H|^(|G|-1), capped before any work
  long long raw = 1;
  auto bump = [&](long long f) {
    raw *= f;
    if (raw > cap)
      throw search_limit_error(
          "deformation search space exceeds cap " + std::to_string(cap), cap);
  };
  for (int k = 2; k < ng; ++k) bump(k);
  for (int k = 1; k < ng; ++k) bump(nh);

  std::vector<DeformationDatum> out;
  std::vector<int> v(ng, -1), r(ng, -1), vinv(ng, -1);
  v[0] = 0;
  vinv[0] = 0;
  r[0] = 0;

  // with v fixed, reports whether the compatibility instance (g1, g2) is
  // fully determined by the assigned part of r, and whether it holds
  auto instance_ok = [&](int g1, int g2) {
    if (r[g1] < 0 || r[g2] < 0) return true;
    const int inner = mp.G.table[mp.beta[v[g1]][r[g2]]][v[g2]];
    const int pre = vinv[inner];
    if (r[pre] < 0) return true;
    return r[pre] == mp.H.table[r[g1]][mp.alpha[v[g1]][r[g2]]];
  };

  auto assign_r = [&](auto&& self, int pos) -> void {
    if (pos == ng) {
      DeformationDatum d;
      d.sigma = sigma;
      d.v = v;
      d.r = r;
      if (verify_datum(mp, d).ok()) out.push_back(std::move(d));
      return;
    }
    for (int val = 0; val < nh; ++val) {
      r[pos] = val;
      bool ok = true;
      for (int g1 = 0; g1 < ng && ok; ++g1)
        for (int g2 = 0; g2 < ng; ++g2)
          if (!instance_ok(g1, g2)) {
            ok = false;
            break;
          }
      if (ok) self(self, pos + 1);
      r[pos] = -1;
    }
  };

  std::vector<char> used(ng, 0);
  used[0] = 1;
  auto assign_v = [&](auto&& self, int pos) -> void {
    if (pos == ng) {
      std::fill(r.begin() + 1, r.end(), -1);
      assign_r(assign_r, 1);
      return;
    }
    for (int val = 1; val < ng; ++val) {
      if (used[val]) continue;
      used[val] = 1;
      v[pos] = val;
      vinv[val] = pos;
      self(self, pos + 1);
      used[val] = 0;
      v[pos] = -1;
      vinv[val] = -1;
    }
  };

  if (ng == 1) {
    std::fill(r.begin() + 1, r.end(), -1);
    assign_r(assign_r, 1);
  } else {
    assign_v(assign_v, 1);
  }

  std::sort(out.begin(), out.end(),
            [](const DeformationDatum& a, const DeformationDatum& b) {
              return std::tie(a.v, a.r) < std::tie(b.v, b.r);
            });
  return out;
}

// For every ordered pair of matched pairs on (H, G) related by a
// sigma-invariant isomorphism, reproduces the source from the target by a
// deformation datum extracted from the witness, and checks the converse:
// every enumerated datum deforms to a pair that is sigma-isomorphic back.
struct ClosureReport {
  int pair_count = 0;
  int sigma_count = 0;
  long long related_ordered_pairs = 0;
  long long data_checked = 0;
  bool witnesses_reproduce = true;
  bool data_invert = true;
  // datum reproducing mps[i] from mps[j] under sigma index s
  std::map<std::tuple<int, int, int>, DeformationDatum> exhibited;

  bool ok() const { return witnesses_reproduce && data_invert; }
};

inline ClosureReport deformation_closure(const FiniteGroup& H,
                                         const FiniteGroup& G,
                                         long long cap = kDefaultSearchCap) {
  const std::vector<MatchedPair> mps = enumerate_matched_pairs(H, G, cap);
  const std::vector<GroupMap> sigmas = automorphisms(H);
  ClosureReport rep;
  rep.pair_count = static_cast<int>(mps.size());
  rep.sigma_count = static_cast<int>(sigmas.size());

  for (std::size_t s = 0; s < sigmas.size(); ++s)
    for (std::size_t i = 0; i < mps.size(); ++i)
      for (std::size_t j = 0; j < mps.size(); ++j) {
        auto w = is_sigma_isomorphic(mps[i], mps[j], sigmas[s]);
        if (!w) continue;
        ++rep.related_ordered_pairs;
        DeformationDatum d;
        d.sigma = sigmas[s];
        d.v = w->v;
        d.r = w->r;
        if (!verify_datum(mps[j], d).ok()) {
          rep.witnesses_reproduce = false;
          continue;
        }
        Deformed def = deform(mps[j], d);
        if (def.pair.alpha != mps[i].alpha || def.pair.beta != mps[i].beta ||
            def.pair.G.table != mps[i].G.table)
          rep.witnesses_reproduce = false;
        else
          rep.exhibited.emplace(
              std::tuple<int, int, int>(static_cast<int>(i),
                                        static_cast<int>(j),
                                        static_cast<int>(s)),
              std::move(d));
      }

  for (std::size_t s = 0; s < sigmas.size(); ++s)
    for (const MatchedPair& mp : mps)
      for (const DeformationDatum& d :
           enumerate_deformation_data(mp, sigmas[s])) {
        ++rep.data_checked;
        Deformed def = deform(mp, d);
        RVDatum back = rv_from_psi(def.pair, mp, sigmas[s], def.psi);
        if (!back.v_bijective || !verify_rv(back).ok())
          rep.data_invert = false;
      }
  return rep;
}

}  // namespace knit
