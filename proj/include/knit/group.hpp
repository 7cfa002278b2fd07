#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "knit/error.hpp"

namespace knit {

using Table = std::vector<std::vector<int>>;

// A finite group given by its Cayley table. Element 0 is always the
// identity; table[i][j] is the index of the product g_i * g_j.
// Values are immutable after construction and safe to share.
struct FiniteGroup {
  int order = 1;
  Table table{{0}};
  std::vector<std::string> labels{"1"};
  std::vector<int> generators{};

  int mul(int a, int b) const { return table[a][b]; }

  int inverse(int a) const {
    for (int x = 0; x < order; ++x)
      if (table[a][x] == 0 && table[x][a] == 0) return x;
    throw error("no two-sided inverse for element " + std::to_string(a));
  }

  int element_order(int a) const {
    int x = a, k = 1;
    while (x != 0) {
      x = table[x][a];
      ++k;
    }
    return k;
  }
};

inline bool same_table(const FiniteGroup& a, const FiniteGroup& b) {
  return a.order == b.order && a.table == b.table;
}

// Validation report for a candidate Cayley table. Checks run in a fixed
// order (latin square, associativity, identity position, inverses) and
// first_failure names the first one that failed.
struct GroupCheck {
  bool latin_square = true;
  bool associative = true;
  bool identity_at_zero = true;
  bool two_sided_inverses = true;
  std::string first_failure;
  std::array<int, 3> witness{-1, -1, -1};

  bool ok() const {
    return latin_square && associative && identity_at_zero &&
           two_sided_inverses;
  }
};

// Throws malformed_error on a ragged or out-of-range matrix; every other
// defect is reported, not thrown.
inline GroupCheck verify_group(const Table& t) {
  const int n = static_cast<int>(t.size());
  if (n == 0) throw malformed_error("empty multiplication table");
  for (const auto& row : t) {
    if (static_cast<int>(row.size()) != n)
      throw malformed_error("ragged multiplication table");
    for (int v : row)
      if (v < 0 || v >= n) throw malformed_error("table entry out of range");
  }

  GroupCheck c;
  auto fail = [&](std::string what, std::array<int, 3> w) {
    if (c.first_failure.empty()) {
      c.first_failure = std::move(what);
      c.witness = w;
    }
  };

  for (int i = 0; i < n && c.latin_square; ++i) {
    std::vector<char> row_seen(n, 0), col_seen(n, 0);
    for (int j = 0; j < n; ++j) {
      if (row_seen[t[i][j]]++) {
        c.latin_square = false;
        fail("row " + std::to_string(i) + " repeats entry " +
                 std::to_string(t[i][j]),
             {i, j, -1});
        break;
      }
      if (col_seen[t[j][i]]++) {
        c.latin_square = false;
        fail("column " + std::to_string(i) + " repeats entry " +
                 std::to_string(t[j][i]),
             {j, i, -1});
        break;
      }
    }
  }

  for (int a = 0; a < n && c.associative; ++a)
    for (int b = 0; b < n && c.associative; ++b)
      for (int x = 0; x < n; ++x)
        if (t[t[a][b]][x] != t[a][t[b][x]]) {
          c.associative = false;
          fail("associativity fails at (" + std::to_string(a) + "," +
                   std::to_string(b) + "," + std::to_string(x) + ")",
               {a, b, x});
          break;
        }

  for (int i = 0; i < n; ++i)
    if (t[0][i] != i || t[i][0] != i) {
      c.identity_at_zero = false;
      fail("element 0 is not a two-sided identity at index " +
               std::to_string(i),
           {i, -1, -1});
      break;
    }

  for (int a = 0; a < n && c.two_sided_inverses; ++a) {
    bool found = false;
    for (int x = 0; x < n; ++x)
      if (t[a][x] == 0 && t[x][a] == 0) {
        found = true;
        break;
      }
    if (!found) {
      c.two_sided_inverses = false;
      fail("element " + std::to_string(a) + " has no two-sided inverse",
           {a, -1, -1});
    }
  }
  return c;
}

namespace detail {

inline std::vector<int> closure_of(const Table& t,
                                   const std::vector<int>& seed) {
  const int n = static_cast<int>(t.size());
  std::vector<char> in(n, 0);
  std::vector<int> work;
  auto push = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      work.push_back(x);
    }
  };
  push(0);
  for (int s : seed) push(s);
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t j = 0; j < work.size(); ++j) {
      push(t[work[i]][work[j]]);
      if (in[t[work[j]][work[i]]] == 0) push(t[work[j]][work[i]]);
    }
  std::vector<int> out;
  for (int x = 0; x < n; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

}  // namespace detail

// Smallest-first greedy generating set; deterministic.
inline std::vector<int> find_generators(const Table& t) {
  const int n = static_cast<int>(t.size());
  std::vector<int> gens;
  std::vector<int> closed = detail::closure_of(t, {});
  while (static_cast<int>(closed.size()) < n) {
    int next = -1;
    std::vector<char> in(n, 0);
    for (int x : closed) in[x] = 1;
    for (int x = 0; x < n; ++x)
      if (!in[x]) {
        next = x;
        break;
      }
    gens.push_back(next);
    closed = detail::closure_of(t, gens);
  }
  return gens;
}

// Builds a validated group from a raw table, relabelling so the identity
// sits at index 0. Labels and generators are filled in when omitted.
inline FiniteGroup make_group(Table table, std::vector<std::string> labels = {},
                              std::vector<int> generators = {}) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw malformed_error("empty multiplication table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw malformed_error("ragged multiplication table");
    for (int v : row)
      if (v < 0 || v >= n) throw malformed_error("table entry out of range");
  }

  int e = -1;
  for (int cand = 0; cand < n && e < 0; ++cand) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      if (table[cand][a] != a || table[a][cand] != a) ok = false;
    if (ok) e = cand;
  }
  if (e < 0) throw precondition_error("table has no identity element");
  if (e != 0) {
    // swap indices 0 and e so the identity lands at 0
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[0], perm[e]);
    Table fixed(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        fixed[perm[i]][perm[j]] = perm[table[i][j]];
    table = std::move(fixed);
    if (!labels.empty()) std::swap(labels[0], labels[e]);
    for (int& g : generators) g = perm[g];
  }

  GroupCheck check = verify_group(table);
  if (!check.ok())
    throw precondition_error("table is not a group: " + check.first_failure);

  if (labels.empty()) {
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  }
  if (static_cast<int>(labels.size()) != n)
    throw malformed_error("label list does not match the group order");

  if (generators.empty() && n > 1) generators = find_generators(table);
  for (int g : generators)
    if (g < 0 || g >= n) throw malformed_error("generator index out of range");
  if (static_cast<int>(detail::closure_of(table, generators).size()) != n)
    throw precondition_error("generators do not generate the group");

  FiniteGroup out;
  out.order = n;
  out.table = std::move(table);
  out.labels = std::move(labels);
  out.generators = std::move(generators);
  return out;
}

inline FiniteGroup cyclic_group(int n, const std::string& symbol = "b") {
  if (n < 1) throw precondition_error("cyclic group order must be positive");
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int k = 0; k < n; ++k) {
    if (k == 0)
      labels.push_back("1");
    else if (k == 1)
      labels.push_back(symbol);
    else
      labels.push_back(symbol + "^" + std::to_string(k));
  }
  FiniteGroup g;
  g.order = n;
  g.table = std::move(t);
  g.labels = std::move(labels);
  if (n > 1) g.generators = {1};
  return g;
}

// Componentwise product on pairs; (i, j) gets index i*|B| + j.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int n = a.order * b.order;
  Table t(n, std::vector<int>(n));
  for (int i1 = 0; i1 < a.order; ++i1)
    for (int j1 = 0; j1 < b.order; ++j1)
      for (int i2 = 0; i2 < a.order; ++i2)
        for (int j2 = 0; j2 < b.order; ++j2)
          t[i1 * b.order + j1][i2 * b.order + j2] =
              a.table[i1][i2] * b.order + b.table[j1][j2];
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < a.order; ++i)
    for (int j = 0; j < b.order; ++j)
      labels.push_back("(" + a.labels[i] + "," + b.labels[j] + ")");
  std::vector<int> gens;
  for (int g : a.generators) gens.push_back(g * b.order);
  for (int g : b.generators) gens.push_back(g);
  FiniteGroup out;
  out.order = n;
  out.table = std::move(t);
  out.labels = std::move(labels);
  out.generators = std::move(gens);
  return out;
}

// A map between two groups together with its checked properties.
struct GroupMap {
  FiniteGroup source, target;
  std::vector<int> images;
  bool is_homomorphism = false;
  bool is_bijective = false;

  int operator()(int x) const { return images[x]; }
};

inline GroupMap make_map(const FiniteGroup& src, const FiniteGroup& tgt,
                         std::vector<int> images) {
  if (static_cast<int>(images.size()) != src.order)
    throw malformed_error("image list does not match the source order");
  for (int v : images)
    if (v < 0 || v >= tgt.order)
      throw malformed_error("image index out of range");
  GroupMap m;
  m.source = src;
  m.target = tgt;
  m.images = std::move(images);
  m.is_homomorphism = true;
  for (int x = 0; x < src.order && m.is_homomorphism; ++x)
    for (int y = 0; y < src.order; ++y)
      if (m.images[src.table[x][y]] !=
          tgt.table[m.images[x]][m.images[y]]) {
        m.is_homomorphism = false;
        break;
      }
  if (src.order == tgt.order) {
    std::vector<char> seen(tgt.order, 0);
    bool bij = true;
    for (int v : m.images)
      if (seen[v]++) {
        bij = false;
        break;
      }
    m.is_bijective = bij;
  }
  return m;
}

inline GroupMap identity_map(const FiniteGroup& g) {
  std::vector<int> im(g.order);
  std::iota(im.begin(), im.end(), 0);
  return make_map(g, g, std::move(im));
}

// compose(outer, inner)(x) = outer(inner(x))
inline GroupMap compose_maps(const GroupMap& outer, const GroupMap& inner) {
  if (inner.target.order != outer.source.order ||
      !same_table(inner.target, outer.source))
    throw precondition_error("maps are not composable");
  std::vector<int> im(inner.source.order);
  for (int x = 0; x < inner.source.order; ++x)
    im[x] = outer.images[inner.images[x]];
  return make_map(inner.source, outer.target, std::move(im));
}

inline GroupMap inverse_map(const GroupMap& f) {
  if (!f.is_bijective)
    throw precondition_error("only bijective maps can be inverted");
  std::vector<int> im(f.source.order);
  for (int x = 0; x < f.source.order; ++x) im[f.images[x]] = x;
  return make_map(f.target, f.source, std::move(im));
}

namespace detail {

inline bool is_permutation(const std::vector<int>& v, int n) {
  if (static_cast<int>(v.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : v) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

// Extends images on a generating set to the whole group along the Cayley
// graph; nullopt on an inconsistency or if the set does not generate.
inline std::optional<std::vector<int>> extend_by_generators(
    const FiniteGroup& src, const FiniteGroup& tgt,
    const std::vector<int>& gens, const std::vector<int>& gen_images) {
  std::vector<int> im(src.order, -1);
  im[0] = 0;
  std::vector<int> work{0};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    int g = gens[i], v = gen_images[i];
    if (im[g] < 0) {
      im[g] = v;
      work.push_back(g);
    } else if (im[g] != v) {
      return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    int x = work[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int y = src.table[x][gens[k]];
      int v = tgt.table[im[x]][im[gens[k]]];
      if (im[y] < 0) {
        im[y] = v;
        work.push_back(y);
      } else if (im[y] != v) {
        return std::nullopt;
      }
    }
  }
  for (int v : im)
    if (v < 0) return std::nullopt;
  return im;
}

inline std::vector<int> generators_or_default(const FiniteGroup& g) {
  if (!g.generators.empty() || g.order == 1) return g.generators;
  return find_generators(g.table);
}

// Runs fn on every homomorphic extension of generator-image assignments,
// iterating image tuples in ascending order. candidate_filter restricts
// the images tried for each generator.
template <typename Filter, typename Fn>
void for_each_hom(const FiniteGroup& src, const FiniteGroup& tgt,
                  Filter candidate_filter, Fn fn) {
  std::vector<int> gens = generators_or_default(src);
  if (gens.empty()) {
    fn(std::vector<int>(src.order, 0));
    return;
  }
  std::vector<std::vector<int>> cands(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (int x = 0; x < tgt.order; ++x)
      if (candidate_filter(gens[i], x)) cands[i].push_back(x);
    if (cands[i].empty()) return;
  }
  std::vector<std::size_t> pos(gens.size(), 0);
  while (true) {
    std::vector<int> gen_images(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
      gen_images[i] = cands[i][pos[i]];
    if (auto im = extend_by_generators(src, tgt, gens, gen_images)) {
      bool hom = true;
      for (int x = 0; x < src.order && hom; ++x)
        for (int y = 0; y < src.order; ++y)
          if ((*im)[src.table[x][y]] != tgt.table[(*im)[x]][(*im)[y]]) {
            hom = false;
            break;
          }
      if (hom) fn(*im);
    }
    std::size_t i = gens.size();
    while (i > 0) {
      --i;
      if (++pos[i] < cands[i].size()) break;
      pos[i] = 0;
      if (i == 0) return;
    }
  }
}

}  // namespace detail

// All homomorphisms src -> tgt, sorted by image list.
inline std::vector<GroupMap> homomorphisms(const FiniteGroup& src,
                                           const FiniteGroup& tgt) {
  std::vector<std::vector<int>> found;
  detail::for_each_hom(
      src, tgt,
      [&](int gen, int x) {
        return src.element_order(gen) % tgt.element_order(x) == 0;
      },
      [&](const std::vector<int>& im) { found.push_back(im); });
  std::sort(found.begin(), found.end());
  std::vector<GroupMap> out;
  out.reserve(found.size());
  for (auto& im : found) out.push_back(make_map(src, tgt, std::move(im)));
  return out;
}

// All automorphisms, sorted lexicographically by image list. The identity
// is always first in that order.
inline std::vector<GroupMap> automorphisms(const FiniteGroup& g) {
  std::vector<std::vector<int>> found;
  detail::for_each_hom(
      g, g,
      [&](int gen, int x) { return g.element_order(gen) == g.element_order(x); },
      [&](const std::vector<int>& im) {
        std::vector<char> seen(g.order, 0);
        for (int v : im)
          if (seen[v]++) return;
        found.push_back(im);
      });
  std::sort(found.begin(), found.end());
  std::vector<GroupMap> out;
  out.reserve(found.size());
  for (auto& im : found) out.push_back(make_map(g, g, std::move(im)));
  return out;
}

inline std::vector<int> order_vector(const FiniteGroup& g) {
  std::vector<int> v(g.order);
  for (int x = 0; x < g.order; ++x) v[x] = g.element_order(x);
  std::sort(v.begin(), v.end());
  return v;
}

// First isomorphism witness in generator-image order, or nullopt. The
// element-order multiset is used as a cheap complete-at-this-scale filter
// before any backtracking.
inline std::optional<GroupMap> is_isomorphic(const FiniteGroup& a,
                                             const FiniteGroup& b) {
  if (a.order != b.order) return std::nullopt;
  if (order_vector(a) != order_vector(b)) return std::nullopt;
  std::optional<std::vector<int>> best;
  detail::for_each_hom(
      a, b,
      [&](int gen, int x) { return a.element_order(gen) == b.element_order(x); },
      [&](const std::vector<int>& im) {
        std::vector<char> seen(b.order, 0);
        for (int v : im)
          if (seen[v]++) return;
        if (!best || im < *best) best = im;
      });
  if (!best) return std::nullopt;
  return make_map(a, b, std::move(*best));
}

struct StructuralReport {
  bool is_abelian = true;
  bool is_cyclic = false;
  std::vector<int> center;
  std::vector<int> order_vector;
};

inline StructuralReport structural_report(const FiniteGroup& g) {
  StructuralReport r;
  for (int z = 0; z < g.order; ++z) {
    bool central = true;
    for (int x = 0; x < g.order; ++x)
      if (g.table[z][x] != g.table[x][z]) {
        central = false;
        break;
      }
    if (central) r.center.push_back(z);
  }
  r.is_abelian = static_cast<int>(r.center.size()) == g.order;
  r.order_vector = knit::order_vector(g);
  r.is_cyclic = r.order_vector.back() == g.order;
  return r;
}

// A subgroup materialized as a group of its own plus the inclusion map.
struct Subgroup {
  FiniteGroup group;
  GroupMap inclusion;            // subgroup -> parent
  std::vector<int> elements;     // sorted parent indices
};

inline Subgroup subgroup_generated(const FiniteGroup& g,
                                   const std::vector<int>& seeds) {
  for (int s : seeds)
    if (s < 0 || s >= g.order)
      throw malformed_error("subgroup seed out of range");
  std::vector<int> elems = detail::closure_of(g.table, seeds);
  const int k = static_cast<int>(elems.size());
  std::vector<int> pos(g.order, -1);
  for (int i = 0; i < k; ++i) pos[elems[i]] = i;

  Table t(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t[i][j] = pos[g.table[elems[i]][elems[j]]];
  std::vector<std::string> labels;
  labels.reserve(k);
  for (int e : elems) labels.push_back(g.labels[e]);
  std::vector<int> gens;
  for (int s : seeds)
    if (pos[s] > 0 &&
        std::find(gens.begin(), gens.end(), pos[s]) == gens.end())
      gens.push_back(pos[s]);
  std::sort(gens.begin(), gens.end());

  Subgroup out;
  out.group = make_group(std::move(t), std::move(labels), std::move(gens));
  out.inclusion = make_map(out.group, g, elems);
  out.elements = std::move(elems);
  return out;
}

// The automorphism group as a Cayley table; element i corresponds to
// elements[i] and composition is (f, g) -> f after g. The identity map is
// index 0 by the lexicographic ordering of automorphisms().
struct AutomorphismGroup {
  FiniteGroup group;
  std::vector<GroupMap> elements;
};

inline AutomorphismGroup automorphism_group(const FiniteGroup& g) {
  std::vector<GroupMap> auts = automorphisms(g);
  const int k = static_cast<int>(auts.size());
  auto index_of = [&](const std::vector<int>& im) {
    for (int i = 0; i < k; ++i)
      if (auts[i].images == im) return i;
    throw error("automorphism set is not closed under composition");
  };
  Table t(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      std::vector<int> comp(g.order);
      for (int x = 0; x < g.order; ++x)
        comp[x] = auts[i].images[auts[j].images[x]];
      t[i][j] = index_of(comp);
    }
  std::vector<std::string> labels;
  labels.reserve(k);
  for (int i = 0; i < k; ++i) labels.push_back("s" + std::to_string(i));
  AutomorphismGroup out;
  out.group = make_group(std::move(t), std::move(labels));
  out.elements = std::move(auts);
  return out;
}

}  // namespace knit
