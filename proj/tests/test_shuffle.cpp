#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "dendro/shuffle.hpp"
#include "generators.hpp"

using namespace dendro;

namespace {

using NameSet = std::vector<std::string>;

NameSet sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Shuffles of S (x) L_n built directly from monotone level assignments:
// a vertex sits at a level no higher up than every vertex above it.
std::set<NameSet> shuffles_by_levels(const Tree& s, int n) {
  std::set<NameSet> out;
  if (s.is_eta()) {
    NameSet v;
    for (int i = 0; i <= n; ++i) v.push_back(pair_name(s, 0, i, n));
    out.insert(sorted(v));
    return out;
  }
  std::vector<int> level(s.vertex_count(), 0);
  while (true) {
    bool monotone = true;
    for (VertexId v = 0; v < s.vertex_count(); ++v)
      for (EdgeId in : s.vertex(v).inputs)
        if (s.producer(in) >= 0 && level[s.producer(in)] > level[v]) monotone = false;
    if (monotone) {
      NameSet names;
      for (EdgeId e = 0; e < s.edge_count(); ++e) {
        int lo = s.producer(e) < 0 ? 0 : level[s.producer(e)];
        int hi = s.consumer(e) < 0 ? n : level[s.consumer(e)];
        for (int i = lo; i <= hi; ++i) names.push_back(pair_name(s, e, i, n));
      }
      out.insert(sorted(names));
    }
    int k = 0;
    while (k < s.vertex_count() && ++level[k] > n) level[k++] = 0;
    if (k == s.vertex_count()) return out;
  }
}

bool in_a0_by_definition(const Ambient& amb, EdgeMask m, int n) {
  std::set<char> letters;
  std::set<int> levels;
  for (const auto& name : amb.names_of(m)) {
    letters.insert(name[0]);
    levels.insert(std::stoi(name.substr(2)));
  }
  if (int(levels.size()) < n + 1) return true;
  return letters == std::set<char>{'a'} || letters == std::set<char>{'c'};
}

EdgeMask names(const Ambient& a, std::vector<std::string> v) { return a.mask_of(v); }

}  // namespace

TEST_CASE("shuffle counts of the corolla C_2 and binary extended corollas") {
  for (int n = 0; n <= 4; ++n) {
    auto shs = shuffles(corolla(2), n);
    CHECK(shs.size() == std::size_t(n + 1));
    auto ext = shuffles(extended_corolla(n, 1), 1);
    CHECK(ext.size() == std::size_t(n + 2));
  }
  auto lin = shuffles(eta_tree("e"), 3);
  REQUIRE(lin.size() == 1);
  CHECK(lin[0].tree.is_linear());
  CHECK(lin[0].tree.edge_count() == 4);
}

TEST_CASE("shuffles agree with monotone level assignments") {
  std::mt19937 rng(5);
  std::vector<std::pair<Tree, int>> cases;
  for (int n = 0; n <= 3; ++n) {
    cases.push_back({corolla(2), n});
    cases.push_back({corolla(3), n});
    cases.push_back({linear(2), n});
    cases.push_back({extended_corolla(2, 1), n});
  }
  for (int trial = 0; trial < 30; ++trial)
    cases.push_back({testgen::random_tree(rng, testgen::uniform(rng, 1, 4), 3),
                     testgen::uniform(rng, 0, 3)});
  for (const auto& [s, n] : cases) {
    std::set<NameSet> got;
    for (const auto& st : shuffles(s, n)) got.insert(sorted(st.tree.names()));
    CHECK(got.size() == shuffles(s, n).size());
    CHECK(got == shuffles_by_levels(s, n));
  }
}

TEST_CASE("every shuffle projects onto both factors") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Tree s = testgen::random_tree(rng, testgen::uniform(rng, 1, 3), 3);
    int n = testgen::uniform(rng, 0, 3);
    for (const auto& st : shuffles(s, n)) {
      const Tree& t = st.tree;
      int s_vertices = 0;
      for (const auto& v : t.vertices()) {
        auto [o, lo] = st.label[v.output];
        bool linear_step = v.inputs.size() == 1 && st.label[v.inputs[0]].first == o;
        if (linear_step) {
          CHECK(st.label[v.inputs[0]].second == lo - 1);
          continue;
        }
        // An S-vertex at one level: its inputs are the inputs of the
        // corresponding vertex of S.
        ++s_vertices;
        VertexId sv = s.producer(o);
        REQUIRE(sv >= 0);
        std::vector<EdgeId> ins, expect = s.vertex(sv).inputs;
        for (EdgeId in : v.inputs) {
          ins.push_back(st.label[in].first);
          CHECK(st.label[in].second == lo);
        }
        std::sort(ins.begin(), ins.end());
        std::sort(expect.begin(), expect.end());
        CHECK(ins == expect);
      }
      CHECK(s_vertices == s.vertex_count());
      CHECK(st.label[t.root()] == std::pair<EdgeId, int>{s.root(), n});
      for (EdgeId l : t.leaves()) {
        CHECK(st.label[l].second == 0);
        CHECK(s.is_leaf(st.label[l].first));
      }
    }
  }
}

TEST_CASE("shuffles of C_2 with L_n") {
  for (int n = 0; n <= 4; ++n) {
    auto amb = tensor_ambient(corolla(2), n);
    CHECK(amb->maximal().size() == std::size_t(n + 1));
    for (int k = 0; k <= n; ++k) {
      EdgeMask tk = c2_shuffle(*amb, n, k);
      REQUIRE(amb->is_cell(tk));
      const Tree& t = amb->tree(tk);
      int binary = 0;
      for (const auto& v : t.vertices())
        if (v.inputs.size() == 2) ++binary;
      CHECK(binary == 1);
      CHECK(t.vertex_count() == n + k + 1);
      // Every leaf-to-root path crosses n linear vertices and the binary one.
      for (EdgeId l : t.leaves()) {
        int steps = 0;
        for (EdgeId e = l; !t.is_root(e); e = t.vertex(t.consumer(e)).output) ++steps;
        CHECK(steps == n + 1);
      }
    }
  }
  // The shape of T_0 for n = 2 is the corolla grafted onto a linear tree.
  auto amb = tensor_ambient(corolla(2), 2);
  Tree expect = graft(linear(2), "0", corolla(2));
  CHECK(isomorphic(amb->tree(c2_shuffle(*amb, 2, 0)), expect));
}

TEST_CASE("pair names of the binary extended corolla follow the primed notation") {
  auto amb = tensor_ambient(extended_corolla(2, 1), 1);
  // F: everything at level 0 above the root step c -> c'.
  CHECK(amb->is_cell(names(*amb, {"a_0", "a_1", "a_2", "b_1", "c", "c'"})));
  // E_0: a_0 -> a'_0 and the rest at level 1.
  CHECK(amb->is_cell(names(*amb, {"a_0", "a_0'", "a_1'", "a_2'", "b_1", "b_1'", "c'"})));
}

TEST_CASE("cells of C_2 (x) L_1") {
  auto amb = tensor_ambient(corolla(2), 1);
  CHECK(amb->is_cell(c2_shuffle(*amb, 1, 0)));
  CHECK(amb->is_cell(c2_shuffle(*amb, 1, 1)));
  EdgeMask beta = names(*amb, {"a_0", "b_0", "c_0", "c_1"});
  CHECK(amb->is_cell(beta));
  CHECK(named_cell(*amb, NamedKind::Beta, 1).mask == beta);
  CHECK(amb->cell_string(beta) == "(a_0,b_0,c_0,c_1)");
  // Common faces of the two shuffles.
  EdgeMask common = names(*amb, {"a_0", "b_0", "c_1"});
  CHECK(amb->is_cell(common));
  auto t0 = amb->subcells(c2_shuffle(*amb, 1, 0));
  auto t1 = amb->subcells(c2_shuffle(*amb, 1, 1));
  CHECK(std::count(t0.begin(), t0.end(), common) == 1);
  CHECK(std::count(t1.begin(), t1.end(), common) == 1);
  CHECK_FALSE(amb->is_cell(names(*amb, {"a_0", "a_1", "c_1"})));
}

TEST_CASE("named cells") {
  auto amb = tensor_ambient(corolla(2), 1);
  CHECK(named_cell(*amb, NamedKind::Pi, 1, 0).mask == names(*amb, {"a_1", "b_1", "c_1"}));
  CHECK(named_cell(*amb, NamedKind::Alpha, 1).mask ==
        names(*amb, {"a_0", "b_0", "b_1", "c_1"}));
  auto sa = named_cell(*amb, NamedKind::SigmaAlpha, 1, 0);
  CHECK(sa.doubled == "a_0");
  CHECK(named_cell(*amb, NamedKind::Gamma, 1).mask ==
        names(*amb, {"a_0", "a_1", "b_1", "c_1"}));
  CHECK(named_cell(*amb, NamedKind::DT, 1, 1, 0).mask == names(*amb, {"a_0", "b_0", "c_0"}));
  CHECK(named_cell(*amb, NamedKind::DT, 1, 0, 1).mask == names(*amb, {"a_1", "b_1", "c_1"}));
  CHECK_THROWS_AS(named_cell(*amb, NamedKind::DT, 1, 1, 1), std::out_of_range);
  CHECK_THROWS_AS(named_cell(*amb, NamedKind::SigmaAlpha, 1, 1), std::out_of_range);

  auto amb3 = tensor_ambient(corolla(2), 3);
  // D_1 T_0 removes c_1, merging the two linear vertices around it.
  EdgeMask d = named_cell(*amb3, NamedKind::DT, 3, 1, 0).mask;
  CHECK(d == (c2_shuffle(*amb3, 3, 0) & ~names(*amb3, {"c_1"})));
  CHECK(amb3->tree(d).vertex_count() == amb3->tree(c2_shuffle(*amb3, 3, 0)).vertex_count() - 1);
  CHECK(named_cell(*amb3, NamedKind::Pi, 3, 3).mask ==
        names(*amb3, {"a_0", "a_1", "a_2", "b_2", "c_2"}));
}

TEST_CASE("the pushout-product base A_0") {
  for (int n = 1; n <= 3; ++n) {
    auto amb = tensor_ambient(corolla(2), n);
    Subcomplex a0 = c2_base(amb, n);
    Subcomplex full = Subcomplex::full(amb);

    std::set<EdgeMask> oracle;
    for (EdgeMask c : amb->cells())
      if (in_a0_by_definition(*amb, c, n)) oracle.insert(c);
    CHECK(a0.cells() == oracle);

    CHECK(a0.is_face_closed());
    CHECK(a0.subset_of(full));
    CHECK_FALSE(a0 == full);

    std::vector<EdgeMask> gens;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        if (i != j) {
          EdgeMask dij = named_cell(*amb, NamedKind::DT, n, i, j).mask;
          CHECK(a0.contains(dij));
          gens.push_back(dij);
        }
    std::vector<std::string> ca, cc;
    for (int i = 0; i <= n; ++i) {
      ca.push_back("a_" + std::to_string(i));
      cc.push_back("c_" + std::to_string(i));
    }
    gens.push_back(amb->mask_of(ca));
    gens.push_back(amb->mask_of(cc));
    CHECK(Subcomplex::closure(amb, gens) == a0);

    EdgeMask t0 = c2_shuffle(*amb, n, 0);
    EdgeMask c0_face = t0 & ~names(*amb, {"c_0"});
    Subcomplex rep = Subcomplex::closure(amb, std::vector<EdgeMask>{t0});
    CHECK((rep & a0) == Subcomplex::horn(amb, t0, c0_face));
  }
}

TEST_CASE("subcomplex algebra against plain set operations") {
  std::mt19937 rng(11);
  auto amb = tensor_ambient(corolla(2), 2);
  const auto& cells = amb->cells();
  auto random_sub = [&] {
    std::vector<EdgeMask> gens;
    int k = testgen::uniform(rng, 0, 4);
    for (int i = 0; i < k; ++i) gens.push_back(cells[testgen::uniform(rng, 0, int(cells.size()) - 1)]);
    return std::pair{Subcomplex::closure(amb, gens), gens};
  };
  for (int trial = 0; trial < 40; ++trial) {
    auto [x, gx] = random_sub();
    auto [y, gy] = random_sub();
    // Closure oracle: every cell whose edges lie inside some generator.
    std::set<EdgeMask> cx;
    for (EdgeMask c : cells)
      for (EdgeMask g : gx)
        if ((c & ~g) == 0) cx.insert(c);
    CHECK(x.cells() == cx);
    CHECK(x.is_face_closed());
    CHECK(Subcomplex::closure(amb, x.maximal_cells()) == x);

    std::set<EdgeMask> u, in;
    std::set_union(x.cells().begin(), x.cells().end(), y.cells().begin(), y.cells().end(),
                   std::inserter(u, u.end()));
    std::set_intersection(x.cells().begin(), x.cells().end(), y.cells().begin(),
                          y.cells().end(), std::inserter(in, in.end()));
    CHECK((x | y).cells() == u);
    CHECK((x & y).cells() == in);
    CHECK((x & y).is_face_closed());
    CHECK((x | y).is_face_closed());
    CHECK((x & y).subset_of(x));
  }
  auto other = tensor_ambient(corolla(2), 2);
  CHECK_THROWS_AS(Subcomplex(amb) | Subcomplex(other), std::invalid_argument);
  CHECK_THROWS_AS(Subcomplex(amb) & Subcomplex(other), std::invalid_argument);
  auto open = Subcomplex::from_cells(amb, {c2_shuffle(*amb, 2, 1)});
  CHECK_FALSE(open.is_face_closed());
}
