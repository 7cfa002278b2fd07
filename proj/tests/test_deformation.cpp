#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "knit/deformation.hpp"

using namespace knit;

namespace {

std::vector<MatchedPair> c3c6_pairs() {
  return enumerate_matched_pairs(cyclic_group(3, "a"), cyclic_group(6, "b"));
}

DeformationDatum identity_datum(const MatchedPair& mp) {
  DeformationDatum d;
  d.sigma = identity_map(mp.H);
  d.v.resize(mp.G.order);
  std::iota(d.v.begin(), d.v.end(), 0);
  d.r.assign(mp.G.order, 0);
  return d;
}

DeformationDatum b5_datum(const MatchedPair& mp) {
  DeformationDatum d;
  d.sigma = identity_map(mp.H);
  d.v = {0, 5, 4, 3, 2, 1};
  d.r.assign(6, 0);
  return d;
}

}  // namespace

TEST_CASE("datum verification", "[deformation]") {
  const auto pairs = c3c6_pairs();
  for (const MatchedPair& mp : pairs)
    REQUIRE(verify_datum(mp, identity_datum(mp)).ok());

  REQUIRE(verify_datum(pairs[2], b5_datum(pairs[2])).ok());

  DeformationDatum bad = identity_datum(pairs[0]);
  bad.r[0] = 1;  // r(1) = a violates normalization
  const DatumCheck c = verify_datum(pairs[0], bad);
  REQUIRE_FALSE(c.ok());
  REQUIRE_FALSE(c.normalization.pass);
}

TEST_CASE("deforming by the identity datum changes nothing", "[deformation]") {
  for (const MatchedPair& mp : c3c6_pairs()) {
    const Deformed def = deform(mp, identity_datum(mp));
    REQUIRE(def.pair.alpha == mp.alpha);
    REQUIRE(def.pair.beta == mp.beta);
    REQUIRE(def.pair.G.table == mp.G.table);
    std::vector<int> iota(def.psi.images.size());
    std::iota(iota.begin(), iota.end(), 0);
    REQUIRE(def.psi.images == iota);
  }
}

TEST_CASE("the b^5 datum deforms one proper pair into the other",
          "[deformation]") {
  const auto pairs = c3c6_pairs();
  const Deformed def = deform(pairs[2], b5_datum(pairs[2]));
  // v is an automorphism and r is trivial, so the group is unchanged
  REQUIRE(def.pair.G.table == pairs[2].G.table);
  REQUIRE(def.pair.alpha == pairs[3].alpha);
  REQUIRE(def.pair.beta == pairs[3].beta);
  REQUIRE(def.psi.is_bijective);
}

TEST_CASE("automorphism v with trivial r leaves the multiplication alone",
          "[deformation]") {
  const auto pairs = c3c6_pairs();
  // pairs[1] has trivial beta, so the deformed multiplication collapses to
  // v^-1(v(g1) v(g2))
  const Deformed def = deform(pairs[1], b5_datum(pairs[1]));
  REQUIRE(def.pair.G.table == pairs[1].G.table);
}

TEST_CASE("invalid data are rejected by deform", "[deformation]") {
  const auto pairs = c3c6_pairs();
  // on the trivial pair the compatibility condition says r is
  // multiplicative; this r is not
  DeformationDatum bad = identity_datum(pairs[0]);
  bad.r = {0, 1, 1, 0, 0, 0};
  const DatumCheck c = verify_datum(pairs[0], bad);
  REQUIRE_FALSE(c.ok());
  REQUIRE_FALSE(c.compatibility.pass);
  REQUIRE_THROWS_AS(deform(pairs[0], bad), precondition_error);
}

TEST_CASE("with trivial r any permutation v is a valid datum",
          "[deformation]") {
  const auto pairs = c3c6_pairs();
  DeformationDatum d = identity_datum(pairs[2]);
  d.v = {0, 2, 1, 3, 4, 5};  // not an automorphism of C6
  REQUIRE(verify_datum(pairs[2], d).ok());
  const Deformed def = deform(pairs[2], d);
  // the deformed group is a relabelling of C6, not C6 itself
  REQUIRE(def.pair.G.table != pairs[2].G.table);
  REQUIRE(is_isomorphic(def.pair.G, pairs[2].G).has_value());
  REQUIRE(def.psi.is_bijective);
}

TEST_CASE("enumerated data on (C2, C2) match brute force", "[deformation]") {
  const MatchedPair mp = trivial_pair(cyclic_group(2, "a"),
                                      cyclic_group(2, "b"));
  const GroupMap id = identity_map(mp.H);
  const auto data = enumerate_deformation_data(mp, id);

  // independent oracle: v must fix both elements, r(1) = 1, so only r(b)
  // is free; check the compatibility condition directly for both choices
  int expected = 0;
  for (int rb = 0; rb < 2; ++rb) {
    const std::vector<int> v{0, 1}, r{0, rb};
    bool ok = true;
    for (int g1 = 0; g1 < 2 && ok; ++g1)
      for (int g2 = 0; g2 < 2; ++g2) {
        const int inner = (v[g1] + v[g2]) % 2;  // trivial actions
        if (r[inner] != (r[g1] + r[g2]) % 2) {
          ok = false;
          break;
        }
      }
    if (ok) ++expected;
  }
  REQUIRE(expected == 2);
  REQUIRE(data.size() == 2);
}

TEST_CASE("enumeration contains the named data", "[deformation]") {
  const auto pairs = c3c6_pairs();
  const GroupMap id = identity_map(pairs[0].H);

  const auto data = enumerate_deformation_data(pairs[2], id);
  const DeformationDatum b5 = b5_datum(pairs[2]);
  bool found = false;
  for (const auto& d : data)
    if (d.v == b5.v && d.r == b5.r) found = true;
  REQUIRE(found);

  for (const MatchedPair& mp : pairs) {
    bool has_id = false;
    for (const auto& d : enumerate_deformation_data(mp, id))
      if (d.v == identity_datum(mp).v && d.r == identity_datum(mp).r)
        has_id = true;
    REQUIRE(has_id);
  }
}

TEST_CASE("a nontrivial sigma self-deforms the trivial pair", "[deformation]") {
  const auto pairs = c3c6_pairs();
  const auto sigmas = automorphisms(pairs[0].H);
  REQUIRE(sigmas.size() == 2);
  DeformationDatum d = identity_datum(pairs[0]);
  d.sigma = sigmas[1];
  REQUIRE(verify_datum(pairs[0], d).ok());
  const Deformed def = deform(pairs[0], d);
  REQUIRE(def.pair.alpha == pairs[0].alpha);
  REQUIRE(def.pair.beta == pairs[0].beta);
  REQUIRE(def.pair.G.table == pairs[0].G.table);
}

TEST_CASE("every enumerated datum deforms validly and inverts",
          "[deformation]") {
  const auto pairs = c3c6_pairs();
  for (const GroupMap& sigma : automorphisms(pairs[0].H))
    for (const MatchedPair& mp : pairs)
      for (const DeformationDatum& d : enumerate_deformation_data(mp, sigma)) {
        const Deformed def = deform(mp, d);
        REQUIRE(verify_group(def.pair.G.table).ok());
        REQUIRE(verify_matched_pair(def.pair.H, def.pair.G, def.pair.alpha,
                                    def.pair.beta)
                    .ok());
        REQUIRE(def.psi.is_homomorphism);
        REQUIRE(def.psi.is_bijective);
        const RVDatum back = rv_from_psi(def.pair, mp, sigma, def.psi);
        REQUIRE(back.v_bijective);
        REQUIRE(verify_rv(back).ok());
      }
}

TEST_CASE("deformation closure on (C3, C6)", "[deformation]") {
  const ClosureReport rep =
      deformation_closure(cyclic_group(3, "a"), cyclic_group(6, "b"));
  REQUIRE(rep.pair_count == 4);
  REQUIRE(rep.sigma_count == 2);
  REQUIRE(rep.witnesses_reproduce);
  REQUIRE(rep.data_invert);
  REQUIRE(rep.ok());

  // the only cross-pair relations are between the two proper pairs
  for (const auto& [key, datum] : rep.exhibited) {
    auto [i, j, s] = key;
    if (i != j) {
      REQUIRE(((i == 2 && j == 3) || (i == 3 && j == 2)));
    }
  }
  // and they are indeed exhibited
  bool cross = false;
  for (const auto& [key, datum] : rep.exhibited) {
    auto [i, j, s] = key;
    if (i == 3 && j == 2) cross = true;
  }
  REQUIRE(cross);
}

TEST_CASE("deformation closure on (C2, C4)", "[deformation]") {
  const ClosureReport rep =
      deformation_closure(cyclic_group(2, "a"), cyclic_group(4, "b"));
  REQUIRE(rep.pair_count == 2);
  REQUIRE(rep.ok());
  // the two pairs give non-isomorphic products, so only self-relations
  for (const auto& [key, datum] : rep.exhibited) {
    auto [i, j, s] = key;
    REQUIRE(i == j);
  }
}

TEST_CASE("deformation data on (C2, Cm) small cases", "[deformation]") {
  for (int m : {1, 2, 3, 4, 5, 6, 7, 8}) {
    const auto pairs =
        enumerate_matched_pairs(cyclic_group(2, "a"), cyclic_group(m, "b"));
    for (const GroupMap& sigma : automorphisms(cyclic_group(2, "a")))
      for (const MatchedPair& mp : pairs)
        for (const DeformationDatum& d :
             enumerate_deformation_data(mp, sigma)) {
          const Deformed def = deform(mp, d);
          REQUIRE(def.psi.is_bijective);
        }
  }
}

TEST_CASE("the deformation cap is enforced", "[deformation]") {
  const MatchedPair mp = trivial_pair(cyclic_group(3, "a"),
                                      cyclic_group(6, "b"));
  REQUIRE_THROWS_AS(
      enumerate_deformation_data(mp, identity_map(mp.H), 100),
      search_limit_error);
}
