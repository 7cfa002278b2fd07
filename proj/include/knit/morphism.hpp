#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knit/bicrossed.hpp"

namespace knit {

// Data for a homomorphism between two bicrossed products over the same H
// that restricts to sigma on the embedded copy of H. The map itself is
// psi(h, g') = (sigma(h) r(g'), v(g')); it is an isomorphism exactly when
// v is bijective.
struct RVDatum {
  MatchedPair source;  // (H, G', alpha', beta')
  MatchedPair target;  // (H, G, alpha, beta)
  GroupMap sigma;      // automorphism of the shared H
  std::vector<int> r;  // G' -> H
  std::vector<int> v;  // G' -> G
  bool v_bijective = false;
};

struct RVCheck {
  AxiomCheck normalization;  // r(1) = 1 and v(1) = 1
  AxiomCheck alpha_compat;   // sigma(g'|>'h) r(g'<|'h) = r(g')(v(g')|>sigma(h))
  AxiomCheck beta_compat;    // v(g' <|' h) = v(g') <| sigma(h)
  AxiomCheck r_product;      // r(g1 g2) = r(g1)(v(g1) |> r(g2))
  AxiomCheck v_product;      // v(g1 g2) = (v(g1) <| r(g2)) v(g2)

  bool ok() const {
    return normalization.pass && alpha_compat.pass && beta_compat.pass &&
           r_product.pass && v_product.pass;
  }

  std::string first_failure() const {
    if (!normalization.pass) return "normalization: " + normalization.note;
    if (!alpha_compat.pass) return "alpha compatibility: " + alpha_compat.note;
    if (!beta_compat.pass) return "beta compatibility: " + beta_compat.note;
    if (!r_product.pass) return "r multiplicativity: " + r_product.note;
    if (!v_product.pass) return "v multiplicativity: " + v_product.note;
    return "";
  }
};

namespace detail {

inline void require_shared_h(const MatchedPair& src, const MatchedPair& tgt) {
  if (!src.verified || !tgt.verified)
    throw precondition_error("matched pairs must be verified");
  if (!same_table(src.H, tgt.H))
    throw precondition_error("matched pairs do not share the group H");
}

inline void require_automorphism(const GroupMap& sigma,
                                 const FiniteGroup& h) {
  if (!same_table(sigma.source, h) || !same_table(sigma.target, h) ||
      !sigma.is_homomorphism || !sigma.is_bijective)
    throw precondition_error("sigma must be an automorphism of H");
}

}  // namespace detail

inline RVCheck verify_rv(const RVDatum& d) {
  detail::require_shared_h(d.source, d.target);
  detail::require_automorphism(d.sigma, d.source.H);
  const FiniteGroup& H = d.source.H;
  const FiniteGroup& Gs = d.source.G;
  const FiniteGroup& Gt = d.target.G;
  if (static_cast<int>(d.r.size()) != Gs.order ||
      static_cast<int>(d.v.size()) != Gs.order)
    throw malformed_error("r and v must be defined on all of G'");
  for (int x : d.r)
    if (x < 0 || x >= H.order) throw malformed_error("r value out of range");
  for (int x : d.v)
    if (x < 0 || x >= Gt.order) throw malformed_error("v value out of range");

  RVCheck c;
  if (d.r[0] != 0)
    c.normalization = {false, {0, -1, -1}, "r(1) != 1"};
  else if (d.v[0] != 0)
    c.normalization = {false, {0, -1, -1}, "v(1) != 1"};

  const auto& sig = d.sigma.images;
  for (int g = 0; g < Gs.order && c.alpha_compat.pass; ++g)
    for (int h = 0; h < H.order; ++h) {
      const int lhs = H.table[sig[d.source.alpha[g][h]]][d.r[d.source.beta[g][h]]];
      const int rhs = H.table[d.r[g]][d.target.alpha[d.v[g]][sig[h]]];
      if (lhs != rhs) {
        c.alpha_compat = {false, {g, h, -1},
                          "fails at g'=" + Gs.labels[g] + ", h=" + H.labels[h]};
        break;
      }
    }
  for (int g = 0; g < Gs.order && c.beta_compat.pass; ++g)
    for (int h = 0; h < H.order; ++h) {
      if (d.v[d.source.beta[g][h]] != d.target.beta[d.v[g]][sig[h]]) {
        c.beta_compat = {false, {g, h, -1},
                         "fails at g'=" + Gs.labels[g] + ", h=" + H.labels[h]};
        break;
      }
    }
  for (int g1 = 0; g1 < Gs.order && c.r_product.pass; ++g1)
    for (int g2 = 0; g2 < Gs.order; ++g2) {
      const int lhs = d.r[Gs.table[g1][g2]];
      const int rhs = H.table[d.r[g1]][d.target.alpha[d.v[g1]][d.r[g2]]];
      if (lhs != rhs) {
        c.r_product = {false, {g1, g2, -1},
                       "fails at g1'=" + Gs.labels[g1] +
                           ", g2'=" + Gs.labels[g2]};
        break;
      }
    }
  for (int g1 = 0; g1 < Gs.order && c.v_product.pass; ++g1)
    for (int g2 = 0; g2 < Gs.order; ++g2) {
      const int lhs = d.v[Gs.table[g1][g2]];
      const int rhs = Gt.table[d.target.beta[d.v[g1]][d.r[g2]]][d.v[g2]];
      if (lhs != rhs) {
        c.v_product = {false, {g1, g2, -1},
                       "fails at g1'=" + Gs.labels[g1] +
                           ", g2'=" + Gs.labels[g2]};
        break;
      }
    }
  return c;
}

// psi(h, g') = (sigma(h) r(g'), v(g')) as a map between the two bicrossed
// products. Throws naming the first failing datum equation; the result is
// checked to be a homomorphism restricting to sigma on H.
inline GroupMap psi_from_rv(const RVDatum& d) {
  RVCheck c = verify_rv(d);
  if (!c.ok())
    throw precondition_error("invalid morphism datum: " + c.first_failure());
  const BicrossedGroup src = bicrossed(d.source);
  const BicrossedGroup tgt = bicrossed(d.target);
  const int ngs = d.source.G.order, ngt = d.target.G.order;
  std::vector<int> images(src.base.order);
  for (int h = 0; h < d.source.H.order; ++h)
    for (int g = 0; g < ngs; ++g)
      images[h * ngs + g] =
          d.source.H.table[d.sigma.images[h]][d.r[g]] * ngt + d.v[g];
  GroupMap psi = make_map(src.base, tgt.base, std::move(images));
  if (!psi.is_homomorphism)
    throw error("morphism datum produced a non-homomorphism");
  for (int h = 0; h < d.source.H.order; ++h)
    if (psi.images[src.embed_h.images[h]] !=
        tgt.embed_h.images[d.sigma.images[h]])
      throw error("psi does not restrict to sigma on H");
  return psi;
}

// Decomposes a homomorphism between the two bicrossed products into its
// (r, v) datum via psi(1, g') = (r(g'), v(g')).
inline RVDatum rv_from_psi(const MatchedPair& src, const MatchedPair& tgt,
                           const GroupMap& sigma, const GroupMap& psi) {
  detail::require_shared_h(src, tgt);
  detail::require_automorphism(sigma, src.H);
  const int ngs = src.G.order, ngt = tgt.G.order;
  if (static_cast<int>(psi.images.size()) != src.H.order * ngs)
    throw malformed_error("psi does not match the source product");
  RVDatum d;
  d.source = src;
  d.target = tgt;
  d.sigma = sigma;
  d.r.resize(ngs);
  d.v.resize(ngs);
  for (int g = 0; g < ngs; ++g) {
    const int img = psi.images[g];  // index of (1, g')
    d.r[g] = img / ngt;
    d.v[g] = img % ngt;
  }
  d.v_bijective = ngs == ngt && detail::is_permutation(d.v, ngt);
  return d;
}

// All (r, v) data for morphisms src -> tgt restricting to sigma on H,
// sorted by (v, r). Values are chosen on a generating set of G' and
// extended along the Cayley graph by the product rules; every candidate is
// then re-verified in full.
inline std::vector<RVDatum> enumerate_sigma_morphisms(const MatchedPair& src,
                                                      const MatchedPair& tgt,
                                                      const GroupMap& sigma) {
  detail::require_shared_h(src, tgt);
  detail::require_automorphism(sigma, src.H);
  const FiniteGroup& H = src.H;
  const FiniteGroup& Gs = src.G;
  const FiniteGroup& Gt = tgt.G;
  const std::vector<int> gens = detail::generators_or_default(Gs);

  std::vector<RVDatum> out;
  auto try_candidate = [&](const std::vector<int>& gen_r,
                           const std::vector<int>& gen_v) {
    std::vector<int> r(Gs.order, -1), v(Gs.order, -1);
    r[0] = 0;
    v[0] = 0;
    std::vector<int> work{0};
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int g = gens[i];
      if (r[g] < 0) {
        r[g] = gen_r[i];
        v[g] = gen_v[i];
        work.push_back(g);
      } else if (r[g] != gen_r[i] || v[g] != gen_v[i]) {
        return;
      }
    }
    for (std::size_t i = 0; i < work.size(); ++i) {
      const int x = work[i];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const int g = gens[k];
        const int y = Gs.table[x][g];
        const int cr = H.table[r[x]][tgt.alpha[v[x]][r[g]]];
        const int cv = Gt.table[tgt.beta[v[x]][r[g]]][v[g]];
        if (r[y] < 0) {
          r[y] = cr;
          v[y] = cv;
          work.push_back(y);
        } else if (r[y] != cr || v[y] != cv) {
          return;
        }
      }
    }
    for (int x : r)
      if (x < 0) return;
    RVDatum d;
    d.source = src;
    d.target = tgt;
    d.sigma = sigma;
    d.r = std::move(r);
    d.v = std::move(v);
    if (!verify_rv(d).ok()) return;
    d.v_bijective =
        Gs.order == Gt.order && detail::is_permutation(d.v, Gt.order);
    out.push_back(std::move(d));
  };

  if (gens.empty()) {
    try_candidate({}, {});
  } else {
    std::vector<int> gen_r(gens.size(), 0), gen_v(gens.size(), 0);
    const long long total = [&] {
      long long t = 1;
      for (std::size_t i = 0; i < gens.size(); ++i)
        t *= static_cast<long long>(H.order) * Gt.order;
      return t;
    }();
    for (long long idx = 0; idx < total; ++idx) {
      long long rest = idx;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        gen_v[i] = static_cast<int>(rest % Gt.order);
        rest /= Gt.order;
        gen_r[i] = static_cast<int>(rest % H.order);
        rest /= H.order;
      }
      try_candidate(gen_r, gen_v);
    }
  }

  std::sort(out.begin(), out.end(), [](const RVDatum& a, const RVDatum& b) {
    return std::tie(a.v, a.r) < std::tie(b.v, b.r);
  });
  return out;
}

// Number of generator assignments an exhaustive morphism search examines;
// used to audit negative classification results.
inline long long sigma_morphism_search_space(const MatchedPair& src,
                                             const MatchedPair& tgt) {
  const std::size_t gens = detail::generators_or_default(src.G).size();
  long long t = 1;
  for (std::size_t i = 0; i < gens; ++i)
    t *= static_cast<long long>(src.H.order) * tgt.G.order;
  return t;
}

// First datum with v bijective in the (v, r) order, or nullopt.
inline std::optional<RVDatum> is_sigma_isomorphic(const MatchedPair& src,
                                                  const MatchedPair& tgt,
                                                  const GroupMap& sigma) {
  for (RVDatum& d : enumerate_sigma_morphisms(src, tgt, sigma))
    if (d.v_bijective) return std::move(d);
  return std::nullopt;
}

inline RVDatum identity_rv(const MatchedPair& mp) {
  RVDatum d;
  d.source = mp;
  d.target = mp;
  d.sigma = identity_map(mp.H);
  d.r.assign(mp.G.order, 0);
  d.v.resize(mp.G.order);
  std::iota(d.v.begin(), d.v.end(), 0);
  d.v_bijective = true;
  return d;
}

// Datum of then.psi composed with first.psi (first, then `then`).
inline RVDatum compose_rv(const RVDatum& first, const RVDatum& then) {
  if (!same_pair(first.target, then.source))
    throw precondition_error("morphism data are not composable");
  RVDatum d;
  d.source = first.source;
  d.target = then.target;
  d.sigma = compose_maps(then.sigma, first.sigma);
  const int n = first.source.G.order;
  d.r.resize(n);
  d.v.resize(n);
  for (int g = 0; g < n; ++g) {
    d.r[g] = then.source.H.table[then.sigma.images[first.r[g]]]
                                [then.r[first.v[g]]];
    d.v[g] = then.v[first.v[g]];
  }
  d.v_bijective = d.source.G.order == d.target.G.order &&
                  detail::is_permutation(d.v, d.target.G.order);
  return d;
}

inline RVDatum invert_rv(const RVDatum& d) {
  if (!d.v_bijective)
    throw precondition_error("only data with bijective v can be inverted");
  RVDatum inv;
  inv.source = d.target;
  inv.target = d.source;
  inv.sigma = inverse_map(d.sigma);
  const int n = d.target.G.order;
  inv.r.resize(n);
  inv.v.resize(n);
  std::vector<int> vinv(n);
  for (int g = 0; g < n; ++g) vinv[d.v[g]] = g;
  for (int y = 0; y < n; ++y) {
    inv.v[y] = vinv[y];
    inv.r[y] =
        inv.sigma.images[d.source.H.inverse(d.r[vinv[y]])];
  }
  inv.v_bijective = true;
  return inv;
}

// Morphism in the fixed-beta groupoid: a map r : G -> Ker(beta) with
// (g |>' h) r(g <| h) = r(g)(g |> h) and r(g1 g2) = r(g1)(g1 |> r(g2)).
// Every such morphism is an isomorphism.
struct B2Morphism {
  MatchedPair source, target;  // share H, G and beta
  std::vector<int> r;
};

inline GroupMap psi_from_b2(const B2Morphism& m) {
  const BicrossedGroup src = bicrossed(m.source);
  const BicrossedGroup tgt = bicrossed(m.target);
  const int ng = m.source.G.order;
  std::vector<int> images(src.base.order);
  for (int h = 0; h < m.source.H.order; ++h)
    for (int g = 0; g < ng; ++g)
      images[h * ng + g] = m.source.H.table[h][m.r[g]] * ng + g;
  GroupMap psi = make_map(src.base, tgt.base, std::move(images));
  if (!psi.is_homomorphism || !psi.is_bijective)
    throw error("fixed-beta morphism failed to be an isomorphism");
  return psi;
}

inline std::vector<B2Morphism> enumerate_b2_morphisms(const MatchedPair& src,
                                                      const MatchedPair& tgt) {
  detail::require_shared_h(src, tgt);
  if (!same_table(src.G, tgt.G))
    throw precondition_error("matched pairs do not share the group G");
  if (src.beta != tgt.beta)
    throw precondition_error("fixed-beta morphisms need identical beta tables");
  const FiniteGroup& H = src.H;
  const FiniteGroup& G = src.G;
  const std::vector<int> kernel = ker_beta(src).elements;
  std::vector<char> in_kernel(H.order, 0);
  for (int k : kernel) in_kernel[k] = 1;
  const std::vector<int> gens = detail::generators_or_default(G);

  std::vector<B2Morphism> out;
  auto try_candidate = [&](const std::vector<int>& gen_r) {
    std::vector<int> r(G.order, -1);
    r[0] = 0;
    std::vector<int> work{0};
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int g = gens[i];
      if (r[g] < 0) {
        r[g] = gen_r[i];
        work.push_back(g);
      } else if (r[g] != gen_r[i]) {
        return;
      }
    }
    for (std::size_t i = 0; i < work.size(); ++i) {
      const int x = work[i];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const int g = gens[k];
        const int y = G.table[x][g];
        const int cr = H.table[r[x]][tgt.alpha[x][r[g]]];
        if (r[y] < 0) {
          if (!in_kernel[cr]) return;
          r[y] = cr;
          work.push_back(y);
        } else if (r[y] != cr) {
          return;
        }
      }
    }
    for (int x : r)
      if (x < 0) return;
    // full re-check of both conditions
    for (int g1 = 0; g1 < G.order; ++g1)
      for (int g2 = 0; g2 < G.order; ++g2)
        if (r[G.table[g1][g2]] != H.table[r[g1]][tgt.alpha[g1][r[g2]]])
          return;
    for (int g = 0; g < G.order; ++g)
      for (int h = 0; h < H.order; ++h)
        if (H.table[src.alpha[g][h]][r[src.beta[g][h]]] !=
            H.table[r[g]][tgt.alpha[g][h]])
          return;
    B2Morphism m;
    m.source = src;
    m.target = tgt;
    m.r = std::move(r);
    psi_from_b2(m);  // groupoid property: every morphism is an isomorphism
    out.push_back(std::move(m));
  };

  if (gens.empty()) {
    try_candidate({});
  } else {
    std::vector<std::size_t> pos(gens.size(), 0);
    while (true) {
      std::vector<int> gen_r(gens.size());
      for (std::size_t i = 0; i < gens.size(); ++i) gen_r[i] = kernel[pos[i]];
      try_candidate(gen_r);
      std::size_t i = gens.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++pos[i] < kernel.size()) {
          done = false;
          break;
        }
        pos[i] = 0;
      }
      if (done) break;
    }
  }

  std::sort(out.begin(), out.end(),
            [](const B2Morphism& a, const B2Morphism& b) { return a.r < b.r; });
  return out;
}

}  // namespace knit
