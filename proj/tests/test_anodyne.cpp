#include <algorithm>
#include <random>

#include "doctest.h"
#include "dendro/anodyne.hpp"
#include "generators.hpp"

using namespace dendro;

namespace {

FaceDescriptor face_named(const Tree& t, const std::string& label) {
  for (const auto& f : faces(t))
    if (f.label(t) == label) return f;
  throw std::invalid_argument("no face " + label);
}

std::vector<AnodyneClass> all_classes() {
  return {AnodyneClass::Inner, AnodyneClass::Left, AnodyneClass::BinaryExtendedLeft,
          AnodyneClass::ExtendedLeft, AnodyneClass::Outer};
}

int count_of(const std::vector<AnodyneClass>& v, AnodyneClass k) {
  return int(std::count(v.begin(), v.end(), k));
}

// Brute-force closure: every ambient cell below some generator.
std::set<EdgeMask> closure_oracle(const Ambient& amb, const std::set<EdgeMask>& gens) {
  std::set<EdgeMask> out;
  for (EdgeMask m : amb.cells())
    for (EdgeMask g : gens)
      if ((m & ~g) == 0) {
        out.insert(m);
        break;
      }
  return out;
}

// The pictured U of the root-horn filtration: tree top with inputs
// d_1..d_4, two of them carrying unary vertices, stem a_0, a_1, a_2, and a
// root corolla with leaves a_2, b_1, b_2.
Tree example_u() {
  return Tree::from_named(
      {"c", "a_2", "b_1", "b_2", "a_1", "a_0", "d_1", "d_2", "d_3", "d_4", "e_1", "e_2"},
      {{{"a_2", "b_1", "b_2"}, "c"},
       {{"a_1"}, "a_2"},
       {{"a_0"}, "a_1"},
       {{"d_1", "d_2", "d_3", "d_4"}, "a_0"},
       {{"e_1"}, "d_1"},
       {{"e_2"}, "d_2"}},
      "c");
}

// A binary root vertex with a ternary corolla on its first leaf.
Tree stacked() { return graft(corolla(2), "a", corolla(3)); }

}  // namespace

TEST_CASE("anodyne classes are ordered and parse") {
  auto cs = all_classes();
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) CHECK(cs[i] < cs[i + 1]);
  for (auto c : cs) CHECK(parse_anodyne_class(to_string(c)) == c);
  CHECK_THROWS_AS(parse_anodyne_class("sideways"), std::invalid_argument);
}

TEST_CASE("extended corolla shapes") {
  CHECK(extended_corolla_shape(corolla(2)) == std::pair{0, 1});
  CHECK(extended_corolla_shape(corolla(4)) == std::pair{0, 3});
  CHECK(extended_corolla_shape(linear(3)) == std::pair{2, 0});
  for (int n = 0; n <= 3; ++n)
    for (int k = 1; k <= 3; ++k) CHECK(extended_corolla_shape(extended_corolla(n, k)) == std::pair{n, k});
  CHECK_FALSE(extended_corolla_shape(eta_tree()));
  CHECK_FALSE(extended_corolla_shape(stacked()));
  CHECK_FALSE(extended_corolla_shape(example_u()));
}

TEST_CASE("generator classes") {
  Tree c2 = corolla(2);
  CHECK(generator_class(horn(c2, face_named(c2, "colour(b)"))) ==
        AnodyneClass::BinaryExtendedLeft);
  CHECK(generator_class(horn(c2, face_named(c2, "colour(a)"))) ==
        AnodyneClass::BinaryExtendedLeft);
  CHECK(generator_class(horn(c2, face_named(c2, "colour(c)"))) == AnodyneClass::Left);

  Tree ec = extended_corolla(2, 1);
  CHECK(generator_class(horn(ec, face_named(ec, "root"))) == AnodyneClass::BinaryExtendedLeft);
  CHECK(generator_class(horn(ec, face_named(ec, "inner(a_1)"))) == AnodyneClass::Inner);
  CHECK(generator_class(horn(ec, face_named(ec, "top(a_1)"))) == AnodyneClass::Left);
  Tree ec3 = extended_corolla(1, 3);
  CHECK(generator_class(horn(ec3, face_named(ec3, "root"))) == AnodyneClass::ExtendedLeft);
  Tree c3 = corolla(3);
  CHECK(generator_class(horn(c3, face_named(c3, "colour(l_1)"))) == AnodyneClass::ExtendedLeft);

  Tree u = example_u();
  CHECK(generator_class(horn(u, face_named(u, "root"))) == AnodyneClass::Outer);
  CHECK(generator_class(horn(u, face_named(u, "inner(a_0)"))) == AnodyneClass::Inner);

  // The shuffle T_0 of C_2 (x) L_1 at its inner edge c_0.
  AmbientPtr amb = tensor_ambient(c2, 1);
  EdgeMask t0 = c2_shuffle(*amb, 1, 0);
  EdgeMask c0 = amb->mask_of({"c_0"});
  CHECK(generator_class({amb->tree(t0), amb->face_descriptor(t0, t0 & ~c0)}) ==
        AnodyneClass::Inner);
}

TEST_CASE("root horn faces") {
  CHECK(root_horn_face(corolla(2)).label(corolla(2)) == "colour(a)");
  CHECK(root_horn_face(extended_corolla(1, 1)).kind == FaceKind::Root);
  CHECK_THROWS_AS(root_horn_face(graft(graft(corolla(2), "a", corolla(3)), "b", linear(1))),
                  std::invalid_argument);
  CHECK(has_root_horn(example_u()));
}

TEST_CASE("root-horn example trees have the pictured sizes") {
  Tree u = example_u();
  CHECK(u.vertex_count() == 6);
  CHECK(u.edge_count() == 12);
  Certificate c = root_horn_certificate(u);
  CHECK(c.ambient->maximal()[0].vertex_count() == 7);
  CHECK(c.ambient->maximal()[0].edge_count() == 13);
}

TEST_CASE("verify_step on the first shuffle") {
  AmbientPtr amb = tensor_ambient(corolla(2), 1);
  Subcomplex a0 = c2_base(amb, 1);
  EdgeMask t0 = c2_shuffle(*amb, 1, 0);
  EdgeMask c0 = amb->mask_of({"c_0"});
  EdgeMask c1 = amb->mask_of({"c_1"});

  auto ok = verify_step(a0, {{t0, t0 & ~c0}}, AnodyneClass::Inner);
  REQUIRE(ok.stage);
  CHECK_FALSE(ok.violation);
  CHECK(ok.classes == std::vector{AnodyneClass::Inner});
  CHECK(ok.stage->contains(t0));
  CHECK(ok.stage->contains(t0 & ~c0));

  // c_1 is the root: dropping it is the root face of T_0, not the horn.
  auto wrong = verify_step(a0, {{t0, t0 & ~c1}}, AnodyneClass::Outer);
  CHECK_FALSE(wrong.stage);
  REQUIRE(wrong.violation);
  CHECK(wrong.violation->addition == 0);
  CHECK_FALSE(wrong.violation->missing.empty());
  CHECK_FALSE(wrong.violation->extra.empty());

  auto twice = verify_step(a0, {{t0, t0 & ~c0}, {t0, t0 & ~c0}}, AnodyneClass::Inner);
  REQUIRE(twice.violation);
  CHECK(twice.violation->addition == 1);
  CHECK(twice.violation->message.find("already present") != std::string::npos);

  auto present = verify_step(*ok.stage, {{t0, t0 & ~c0}}, AnodyneClass::Inner);
  REQUIRE(present.violation);

  auto not_face = verify_step(a0, {{t0, amb->mask_of({"a_0"})}}, AnodyneClass::Outer);
  REQUIRE(not_face.violation);
  CHECK(not_face.violation->message.find("not a face") != std::string::npos);
}

TEST_CASE("verify_step rejects horns outside the class") {
  AmbientPtr amb = Ambient::representable(corolla(2));
  Subcomplex start = Subcomplex::closure(amb, std::vector<EdgeMask>{amb->mask_of({"b"}),
                                                                  amb->mask_of({"c"})});
  EdgeMask full = amb->full_mask();
  auto out = verify_step(start, {{full, amb->mask_of({"a"})}}, AnodyneClass::Left);
  REQUIRE(out.violation);
  CHECK(out.violation->message.find("binary-extended-left") != std::string::npos);
  auto in = verify_step(start, {{full, amb->mask_of({"a"})}}, AnodyneClass::BinaryExtendedLeft);
  CHECK(in.stage);
}

TEST_CASE("step soundness against closure recomputation") {
  std::mt19937 rng(11);
  for (int n = 1; n <= 3; ++n) {
    Certificate c = pushout_product_certificate(n);
    Subcomplex cur = Subcomplex::closure(c.ambient, c.start);
    for (const auto& st : c.steps) {
      auto o = verify_step(cur, st.horns, c.claimed);
      REQUIRE(o.stage);
      std::set<EdgeMask> gens = cur.cells();
      for (const auto& a : st.horns) gens.insert(a.cell);
      CHECK(o.stage->cells() == closure_oracle(*c.ambient, gens));
      CHECK(o.stage->is_face_closed());
      cur = *o.stage;
    }
  }
}

TEST_CASE("pushout product filtration") {
  for (int n = 0; n <= 3; ++n) {
    CAPTURE(n);
    Certificate c = pushout_product_certificate(n);
    VerifyReport r = verify_certificate(c);
    REQUIRE(r.valid);
    CHECK(count_of(r.classes, AnodyneClass::BinaryExtendedLeft) == 1);
    CHECK(count_of(r.classes, AnodyneClass::ExtendedLeft) == 0);
    CHECK(count_of(r.classes, AnodyneClass::Outer) == 0);
    CHECK(r.final_stage.size() == c.ambient->cells().size());
    // The binary step attaches the tree (a_0, b_0..b_n, c_n).
    for (const auto& st : c.steps)
      for (const auto& a : st.horns) {
        auto k = generator_class({c.ambient->tree(a.cell), c.ambient->face_descriptor(a.cell, a.omitted)});
        if (k == AnodyneClass::BinaryExtendedLeft) {
          std::vector<std::string> w{"a_0", "c_" + std::to_string(n)};
          for (int i = 0; i <= n; ++i) w.push_back("b_" + std::to_string(i));
          CHECK(a.cell == c.ambient->mask_of(w));
        }
      }
  }
  CHECK_THROWS_AS(pushout_product_certificate(4), std::out_of_range);
  CHECK_THROWS_AS(pushout_product_certificate(-1), std::out_of_range);
}

TEST_CASE("pushout product filtration for n = 2 uses left horns") {
  VerifyReport r = verify_certificate(pushout_product_certificate(2));
  REQUIRE(r.valid);
  CHECK(count_of(r.classes, AnodyneClass::Left) > 0);
  CHECK(count_of(r.classes, AnodyneClass::Inner) > 0);
}

TEST_CASE("extended corolla filtration") {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {1, 2}, {2, 2}, {3, 3}}) {
    CAPTURE(n);
    CAPTURE(k);
    Certificate c = extended_corolla_certificate(n, k);
    VerifyReport r = verify_certificate(c);
    REQUIRE(r.valid);
    REQUIRE(r.final_step_class);
    CHECK(*r.final_step_class == AnodyneClass::Inner);
    CHECK(count_of(r.classes, AnodyneClass::BinaryExtendedLeft) == 1);
    // First step: the corolla on b_1..b_k glued along its leaves.
    const auto& first = c.steps.front().horns;
    REQUIRE(first.size() == 1);
    CHECK(c.ambient->tree(first[0].cell).is_corolla());
    CHECK(c.ambient->names_of(first[0].omitted) == std::vector<std::string>{"d"});
  }
  CHECK_THROWS_AS(extended_corolla_certificate(1, 0), std::out_of_range);
  CHECK_THROWS_AS(extended_corolla_certificate(4, 1), std::out_of_range);
}

TEST_CASE("codimension filtration") {
  // The tree with an initial segment of one vertex v and three branches.
  Tree t = Tree::from_named(
      {"a", "a_1", "a_2", "a_3", "a_4", "e", "f_1", "f_2", "g_1", "g_2", "g_3"},
      {{{"a_1", "a_2", "a_3", "a_4"}, "a"},
       {{"e"}, "a_1"},
       {{"f_1", "f_2"}, "e"},
       {{"g_1", "g_2", "g_3"}, "a_4"}},
      "a");
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    CAPTURE(v);
    Certificate c = codimension_certificate(t, v);
    VerifyReport r = verify_certificate(c);
    REQUIRE(r.valid);
    CHECK(count_of(r.classes, AnodyneClass::Inner) == int(r.classes.size()));
  }
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Tree s = testgen::random_tree(rng, testgen::uniform(rng, 2, 5), 3);
    VertexId v = testgen::uniform(rng, 0, s.vertex_count() - 1);
    CAPTURE(canonical_form(s));
    CAPTURE(v);
    CHECK(verify_certificate(codimension_certificate(s, v)).valid);
  }
}

TEST_CASE("root-horn filtration through the doubled stem") {
  Certificate c = root_horn_certificate(example_u());
  VerifyReport r = verify_certificate(c);
  REQUIRE(r.valid);
  CHECK(count_of(r.classes, AnodyneClass::Outer) == 0);
  CHECK(c.steps.back().kind == Step::Kind::Retract);
  CHECK(r.final_ambient->maximal()[0] == example_u());

  int checked = 0;
  for (const Tree& u : enumerate_shapes(4, 3)) {
    if (!has_root_horn(u)) continue;
    CAPTURE(canonical_form(u));
    VerifyReport ru = verify_certificate(root_horn_certificate(u));
    CHECK(ru.valid);
    CHECK(count_of(ru.classes, AnodyneClass::Outer) == 0);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("class monotonicity") {
  std::vector<Certificate> cs{pushout_product_certificate(1), pushout_product_certificate(2),
                              extended_corolla_certificate(1, 2),
                              codimension_certificate(extended_corolla(1, 2), 0),
                              root_horn_certificate(stacked())};
  // Valid at K iff K contains every generator used.
  for (auto c : cs) {
    CAPTURE(c.name);
    auto base = verify_certificate(c);
    REQUIRE(base.valid);
    AnodyneClass used = AnodyneClass::Inner;
    for (auto k : base.classes) used = std::max(used, k);
    for (auto k : all_classes()) {
      c.claimed = k;
      CHECK(verify_certificate(c).valid == (k >= used));
    }
  }
}

TEST_CASE("reordering additions within a step keeps validity") {
  std::mt19937 rng(3);
  std::vector<Certificate> cs{pushout_product_certificate(2), pushout_product_certificate(3),
                              extended_corolla_certificate(2, 2),
                              codimension_certificate(extended_corolla(2, 2), 0)};
  for (const auto& base : cs)
    for (int trial = 0; trial < 3; ++trial) {
      Certificate c = base;
      for (auto& st : c.steps) std::shuffle(st.horns.begin(), st.horns.end(), rng);
      CHECK(verify_certificate(c).valid);
    }
}

TEST_CASE("fault injection is pinpointed") {
  Certificate base = pushout_product_certificate(2);
  REQUIRE(verify_certificate(base).valid);
  for (std::size_t s = 0; s < base.steps.size(); ++s) {
    CAPTURE(s);
    Certificate dropped = base;
    dropped.steps.erase(dropped.steps.begin() + long(s));
    VerifyReport r = verify_certificate(dropped);
    REQUIRE_FALSE(r.valid);
    CHECK(r.violation->step >= int(s));
  }
  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    Certificate c = base;
    int s = testgen::uniform(rng, 0, int(c.steps.size()) - 1);
    auto& adds = c.steps[s].horns;
    int j = testgen::uniform(rng, 0, int(adds.size()) - 1);
    auto fs = c.ambient->faces_of(adds[j].cell);
    EdgeMask other = adds[j].omitted;
    while (other == adds[j].omitted) other = fs[testgen::uniform(rng, 0, int(fs.size()) - 1)];
    adds[j].omitted = other;
    VerifyReport r = verify_certificate(c);
    CAPTURE(s);
    CAPTURE(j);
    REQUIRE_FALSE(r.valid);
    CHECK(r.violation->step == s);
    CHECK(r.violation->addition == j);
  }
}

TEST_CASE("retract steps are checked") {
  Tree u = stacked();
  Certificate c = root_horn_certificate(u);
  REQUIRE(verify_certificate(c).valid);
  Step& rt = c.steps.back();
  REQUIRE(rt.kind == Step::Kind::Retract);

  Certificate bad_section = c;
  auto& sec = bad_section.steps.back().section;
  std::string some = sec.begin()->first;
  sec[some] = sec.rbegin()->second;
  CHECK_FALSE(verify_certificate(bad_section).valid);

  Certificate bad_retraction = c;
  auto& ret = bad_retraction.steps.back().retraction;
  for (auto& [from, to] : ret)
    if (from != to) to = from == "c" ? "a" : "c";
  CHECK_FALSE(verify_certificate(bad_retraction).valid);

  Certificate missing = c;
  missing.steps.back().section.erase(missing.steps.back().section.begin());
  VerifyReport r = verify_certificate(missing);
  REQUIRE_FALSE(r.valid);
  CHECK(r.violation->message.find("section misses") != std::string::npos);
}

TEST_CASE("search: start equal to target gives an empty certificate") {
  AmbientSpec spec{false, corolla(3), 0};
  AmbientPtr amb = make_ambient(spec);
  auto r = search_certificate(spec, {amb->full_mask()}, std::nullopt, AnodyneClass::Inner);
  REQUIRE(r.certificate);
  CHECK(r.certificate->steps.empty());
  CHECK(verify_certificate(*r.certificate).valid);
}

TEST_CASE("search: pushout product base to the full tensor") {
  for (int n = 1; n <= 2; ++n) {
    AmbientSpec spec{true, corolla(2), n};
    AmbientPtr amb = make_ambient(spec);
    auto start = c2_base(amb, n).maximal_cells();
    auto r = search_certificate(spec, start, std::nullopt, AnodyneClass::BinaryExtendedLeft);
    REQUIRE(r.certificate);
    VerifyReport v = verify_certificate(*r.certificate);
    CHECK(v.valid);
    CHECK(count_of(v.classes, AnodyneClass::BinaryExtendedLeft) >= 1);
    // Left horns alone cannot do it.
    auto left = search_certificate(spec, start, std::nullopt, AnodyneClass::Left);
    CHECK_FALSE(left.certificate);
  }
}

TEST_CASE("search: codimension base is inner anodyne") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    Tree t = testgen::random_tree(rng, testgen::uniform(rng, 3, 5), 3);
    VertexId v = testgen::uniform(rng, 0, t.vertex_count() - 1);
    AmbientSpec spec{false, t, 0};
    AmbientPtr amb = make_ambient(spec);
    auto r = search_certificate(spec, codimension_base(*amb, t, v), std::nullopt,
                                AnodyneClass::Inner);
    CAPTURE(canonical_form(t));
    REQUIRE(r.certificate);
    CHECK(r.expanded <= 100000);
    CHECK(verify_certificate(*r.certificate).valid);
  }
}

TEST_CASE("search respects the budget and the start") {
  AmbientSpec spec{true, corolla(2), 2};
  AmbientPtr amb = make_ambient(spec);
  auto start = c2_base(amb, 2).maximal_cells();
  SearchOptions tight;
  tight.budget = 2;
  auto r = search_certificate(spec, start, std::nullopt, AnodyneClass::BinaryExtendedLeft, tight);
  CHECK_FALSE(r.certificate);
  CHECK(r.failure == "budget exhausted");

  AmbientSpec rep{false, corolla(2), 0};
  AmbientPtr ra = make_ambient(rep);
  auto outside = search_certificate(rep, {ra->full_mask()}, std::vector<EdgeMask>{ra->mask_of({"a"})},
                                    AnodyneClass::Outer);
  CHECK_FALSE(outside.certificate);
}

TEST_CASE("search for root horns") {
  for (const Tree& u : enumerate_shapes(3, 3)) {
    if (!has_root_horn(u)) continue;
    CAPTURE(canonical_form(u));
    auto r = search_root_horn_certificate(u, AnodyneClass::ExtendedLeft);
    REQUIRE(r.certificate);
    VerifyReport v = verify_certificate(*r.certificate);
    CHECK(v.valid);
    CHECK(count_of(v.classes, AnodyneClass::Outer) == 0);
    CHECK(v.final_ambient->maximal()[0] == u);
  }
  auto no = search_root_horn_certificate(stacked(), AnodyneClass::Left);
  CHECK_FALSE(no.certificate);
}
