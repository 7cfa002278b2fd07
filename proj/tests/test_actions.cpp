#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "knit/bicrossed.hpp"
#include "knit/matched_pair.hpp"

using namespace knit;

namespace {

const FiniteGroup& C3() {
  static const FiniteGroup g = cyclic_group(3, "a");
  return g;
}
const FiniteGroup& C6() {
  static const FiniteGroup g = cyclic_group(6, "b");
  return g;
}

// the inversion action of C6 on C3: odd powers of b invert
Table alpha_inversion() {
  Table a(6, std::vector<int>(3));
  for (int j = 0; j < 6; ++j) {
    a[j][0] = 0;
    a[j][1] = j % 2 == 0 ? 1 : 2;
    a[j][2] = j % 2 == 0 ? 2 : 1;
  }
  return a;
}

// b^j <| a = b^(j+2) for odd j, b^j <| a^2 = b^(j+4) for odd j
Table beta_shift2() {
  Table b(6, std::vector<int>(3));
  for (int j = 0; j < 6; ++j) {
    b[j][0] = j;
    b[j][1] = j % 2 == 0 ? j : (j + 2) % 6;
    b[j][2] = j % 2 == 0 ? j : (j + 4) % 6;
  }
  return b;
}

// b^j <| a = b^(j+4) for odd j, b^j <| a^2 = b^(j+2) for odd j
Table beta_shift4() {
  Table b(6, std::vector<int>(3));
  for (int j = 0; j < 6; ++j) {
    b[j][0] = j;
    b[j][1] = j % 2 == 0 ? j : (j + 4) % 6;
    b[j][2] = j % 2 == 0 ? j : (j + 2) % 6;
  }
  return b;
}

std::vector<MatchedPair> four_reference_pairs() {
  std::vector<MatchedPair> out;
  out.push_back(trivial_pair(C3(), C6()));
  out.push_back(make_matched_pair(C3(), C6(), alpha_inversion(),
                                  trivial_beta(C3(), C6())));
  out.push_back(make_matched_pair(C3(), C6(), alpha_inversion(), beta_shift2()));
  out.push_back(make_matched_pair(C3(), C6(), alpha_inversion(), beta_shift4()));
  return out;
}

}  // namespace

TEST_CASE("trivial actions always match", "[actions]") {
  REQUIRE(verify_matched_pair(C3(), C6(), trivial_alpha(C3(), C6()),
                              trivial_beta(C3(), C6()))
              .ok());
  REQUIRE(verify_matched_pair(cyclic_group(4), cyclic_group(5),
                              trivial_alpha(cyclic_group(4), cyclic_group(5)),
                              trivial_beta(cyclic_group(4), cyclic_group(5)))
              .ok());
}

TEST_CASE("the four reference pairs verify", "[actions]") {
  for (const MatchedPair& mp : four_reference_pairs()) REQUIRE(mp.verified);
}

TEST_CASE("mixing trivial alpha with a nontrivial beta fails", "[actions]") {
  const MatchedPairCheck c = verify_matched_pair(
      C3(), C6(), trivial_alpha(C3(), C6()), beta_shift2());
  REQUIRE_FALSE(c.ok());
  REQUIRE_FALSE(c.right_compat.pass);
  // first counterexample at g1 = g2 = b, h = a:
  // (b b) <| a = b^2 but (b <| a)(b <| a) = b^3 b^3 = 1
  REQUIRE(c.right_compat.witness == std::array<int, 3>{1, 1, 1});
}

TEST_CASE("semidirect pairs from one-sided actions", "[actions]") {
  // trivial beta with an action by automorphisms on the other side
  REQUIRE(verify_matched_pair(C3(), C6(), alpha_inversion(),
                              trivial_beta(C3(), C6()))
              .ok());
  // trivial alpha with a beta acting by automorphisms
  Table beta(6, std::vector<int>(2));
  const FiniteGroup c2 = cyclic_group(2, "a");
  for (int i = 0; i < 6; ++i) {
    beta[i][0] = i;
    beta[i][1] = i * 5 % 6;
  }
  REQUIRE(verify_matched_pair(c2, C6(), trivial_alpha(c2, C6()), beta).ok());
}

TEST_CASE("dimension mismatches throw", "[actions]") {
  Table alpha = trivial_alpha(C3(), C6());
  alpha.pop_back();
  REQUIRE_THROWS_AS(
      verify_matched_pair(C3(), C6(), alpha, trivial_beta(C3(), C6())),
      malformed_error);
  Table beta = trivial_beta(C3(), C6());
  beta[2][1] = 17;
  REQUIRE_THROWS_AS(
      verify_matched_pair(C3(), C6(), trivial_alpha(C3(), C6()), beta),
      malformed_error);
}

TEST_CASE("fixed subgroups", "[actions]") {
  const auto pairs = four_reference_pairs();

  const Subgroup fh = fix_h(pairs[2]);
  REQUIRE(fh.elements == std::vector<int>{0});
  const Subgroup fg = fix_g(pairs[2]);
  REQUIRE(fg.elements == std::vector<int>{0, 2, 4});

  REQUIRE(fix_h(pairs[0]).elements == std::vector<int>{0, 1, 2});
  REQUIRE(fix_g(pairs[0]).elements == std::vector<int>{0, 1, 2, 3, 4, 5});

  REQUIRE(fix_h(pairs[1]).elements == std::vector<int>{0});
  REQUIRE(fix_g(pairs[1]).elements == std::vector<int>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("kernel of beta", "[actions]") {
  const auto pairs = four_reference_pairs();
  REQUIRE(ker_beta(pairs[1]).elements == std::vector<int>{0, 1, 2});
  REQUIRE(ker_beta(pairs[2]).elements == std::vector<int>{0});

  // (C2, C8) with b <| a = b^3
  const FiniteGroup c2 = cyclic_group(2, "a");
  const FiniteGroup c8 = cyclic_group(8, "b");
  Table beta(8, std::vector<int>(2));
  for (int i = 0; i < 8; ++i) {
    beta[i][0] = i;
    beta[i][1] = i * 3 % 8;
  }
  const MatchedPair mp =
      make_matched_pair(c2, c8, trivial_alpha(c2, c8), beta);
  REQUIRE(ker_beta(mp).elements == std::vector<int>{0});
}

TEST_CASE("actions by automorphisms", "[actions]") {
  REQUIRE(is_action_by_automorphisms(C3(), alpha_inversion(),
                                     ActionSide::left));
  REQUIRE_FALSE(
      is_action_by_automorphisms(C6(), beta_shift2(), ActionSide::right));
  REQUIRE(is_action_by_automorphisms(C3(), trivial_alpha(C3(), C6()),
                                     ActionSide::left));
  REQUIRE(is_action_by_automorphisms(C6(), trivial_beta(C3(), C6()),
                                     ActionSide::right));
}

TEST_CASE("enumerating (C3, C6) finds exactly the four pairs", "[actions]") {
  const auto found = enumerate_matched_pairs(C3(), C6());
  const auto expected = four_reference_pairs();
  REQUIRE(found.size() == 4);
  std::set<std::pair<Table, Table>> found_keys, expected_keys;
  for (const auto& mp : found) found_keys.insert(pair_key(mp));
  for (const auto& mp : expected) expected_keys.insert(pair_key(mp));
  REQUIRE(found_keys == expected_keys);
}

TEST_CASE("enumeration counts on small cyclic pairs", "[actions]") {
  REQUIRE(enumerate_matched_pairs(cyclic_group(2), cyclic_group(8)).size() ==
          4);
  REQUIRE(enumerate_matched_pairs(cyclic_group(3), cyclic_group(5)).size() ==
          1);
}

TEST_CASE("the search cap is enforced", "[actions]") {
  REQUIRE_THROWS_AS(enumerate_matched_pairs(C3(), C6(), 1),
                    search_limit_error);
  try {
    enumerate_matched_pairs(C3(), C6(), 17);
  } catch (const search_limit_error& e) {
    REQUIRE(e.cap == 17);
    REQUIRE(std::string(e.what()).find("17") != std::string::npos);
  }
}

TEST_CASE("unit behaviour holds on every enumerated pair", "[actions]") {
  for (const MatchedPair& mp : enumerate_matched_pairs(C3(), C6())) {
    for (int g = 0; g < 6; ++g) REQUIRE(mp.alpha[g][0] == 0);
    for (int h = 0; h < 3; ++h) REQUIRE(mp.beta[0][h] == 0);
  }
}

TEST_CASE("fixed sets are closed", "[actions]") {
  for (const MatchedPair& mp : enumerate_matched_pairs(C3(), C6())) {
    const Subgroup fh = fix_h(mp);
    for (int a : fh.elements)
      for (int b : fh.elements) {
        const int prod = mp.H.table[a][b];
        REQUIRE(std::find(fh.elements.begin(), fh.elements.end(), prod) !=
                fh.elements.end());
      }
    const Subgroup fg = fix_g(mp);
    for (int a : fg.elements)
      REQUIRE(std::find(fg.elements.begin(), fg.elements.end(),
                        mp.G.inverse(a)) != fg.elements.end());
  }
}

TEST_CASE("trivial-beta pairs are exactly the automorphism actions",
          "[actions]") {
  const FiniteGroup H = C3();
  const FiniteGroup G = C6();

  std::set<Table> from_enumeration;
  for (const MatchedPair& mp : enumerate_matched_pairs(H, G))
    if (beta_is_trivial(mp)) from_enumeration.insert(mp.alpha);

  std::set<Table> from_hom_search;
  const AutomorphismGroup aut = automorphism_group(H);
  for (const GroupMap& phi : homomorphisms(G, aut.group)) {
    Table action(G.order, std::vector<int>(H.order));
    for (int g = 0; g < G.order; ++g)
      for (int h = 0; h < H.order; ++h)
        action[g][h] = aut.elements[phi.images[g]].images[h];
    from_hom_search.insert(std::move(action));
  }
  REQUIRE(from_enumeration == from_hom_search);
}

TEST_CASE("the two roles are symmetric at the level of counts", "[actions]") {
  const std::vector<std::pair<FiniteGroup, FiniteGroup>> cases = {
      {cyclic_group(3), cyclic_group(6)},
      {cyclic_group(2), cyclic_group(4)},
      {cyclic_group(2), cyclic_group(6)},
      {direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(3)}};
  for (const auto& [h, g] : cases)
    REQUIRE(enumerate_matched_pairs(h, g).size() ==
            enumerate_matched_pairs(g, h).size());
}

TEST_CASE("fixed-beta enumeration", "[actions]") {
  const auto with_trivial = enumerate_matched_pairs_with_beta(
      C3(), C6(), trivial_beta(C3(), C6()));
  REQUIRE(with_trivial.size() == 2);
  const auto with_shift2 =
      enumerate_matched_pairs_with_beta(C3(), C6(), beta_shift2());
  REQUIRE(with_shift2.size() == 1);
  REQUIRE(with_shift2[0].alpha == alpha_inversion());
}
