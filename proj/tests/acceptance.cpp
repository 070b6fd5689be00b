// Acceptance criteria: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "dendro/anodyne.hpp"
#include "dendro/kan.hpp"
#include "dendro/shuffle.hpp"

using namespace dendro;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) note << what;
    ok = false;
  }
};

using Check = std::function<void(Outcome&)>;

struct Criterion {
  const char* name;
  double limit_s;
  Check run;
};

long long count_class(const VerifyReport& r, AnodyneClass c) {
  return std::count(r.classes.begin(), r.classes.end(), c);
}

void corolla_faces(Outcome& o) {
  for (int n = 1; n <= 6; ++n)
    o.expect(faces(corolla(n)).size() == std::size_t(n + 1),
             "C_" + std::to_string(n) + " has " + std::to_string(faces(corolla(n)).size()) +
                 " faces");
}

void shuffle_counts(Outcome& o) {
  for (int n = 0; n <= 4; ++n) {
    o.expect(shuffles(corolla(2), n).size() == std::size_t(n + 1),
             "C_2 (x) L_" + std::to_string(n));
    o.expect(shuffles(extended_corolla(n, 1), 1).size() == std::size_t(n + 2),
             "EC_{" + std::to_string(n) + ",1} (x) L_1");
  }
}

void discrete_abelian_groups(Outcome& o) {
  std::vector<std::pair<std::string, std::vector<std::vector<int>>>> groups{
      {"Z/2", cyclic_table(2)},
      {"Z/3", cyclic_table(3)},
      {"Z/4", cyclic_table(4)},
      {"Z/2xZ/2", product_table(cyclic_table(2), cyclic_table(2))}};
  for (const auto& [name, table] : groups) {
    SmcOperad p(discrete_abelian(table));
    KanOptions opts;
    opts.bound = 3;
    opts.jobs = 4;
    KanReport r = kan_report(p, opts);
    o.expect(r.fully_kan && r.fully_unique, name + " is not fully Kan with unique fillers");
  }
}

void picard_strictness(Outcome& o) {
  SmcOperad p(one_object_groupoid(cyclic_table(2)));
  KanOptions opts;
  opts.bound = 3;
  opts.jobs = 4;
  KanReport r = kan_report(p, opts);
  o.expect(r.fully_kan, "not fully Kan");
  o.expect(r.strict, "not strict");
  o.expect(!r.fully_unique, "unexpectedly fully unique");
  bool corolla_witness = false;
  for (const auto& w : r.witnesses)
    corolla_witness = corolla_witness || (w.tree.is_corolla() && w.fillers == 2);
  o.expect(corolla_witness, "no corolla horn with exactly 2 fillers");
}

void monoid_non_example(Outcome& o) {
  SmcOperad p(discrete_monoid({{0, 0}, {0, 1}}));
  KanOptions opts;
  opts.bound = 3;
  opts.jobs = 4;
  KanReport r = kan_report(p, opts);
  o.expect(r.inner_kan, "not inner Kan");
  o.expect(!r.fully_kan, "unexpectedly fully Kan");
  bool found = false;
  std::vector<std::pair<std::string, std::string>> want{{"c", "1"}, {"a", "0"}};
  for (const auto& w : r.witnesses)
    found = found || (w.tree == corolla(2) && w.type == HornType::Root && w.fillers == 0 &&
                      w.colours == want);
  o.expect(found, "root horn of C_2 at a=0, c=1 is not a witness");
}

void pushout_product(Outcome& o) {
  for (int n = 1; n <= 2; ++n) {
    Certificate c = pushout_product_certificate(n);
    VerifyReport r = verify_certificate(c);
    std::string tag = "n=" + std::to_string(n) + ": ";
    o.expect(r.valid, tag + "invalid");
    o.expect(count_class(r, AnodyneClass::BinaryExtendedLeft) == 1, tag + "BEL count != 1");
    o.expect(count_class(r, AnodyneClass::Inner) + count_class(r, AnodyneClass::Left) + 1 ==
                 (long long)r.classes.size(),
             tag + "classes beyond inner/left");
    std::vector<std::string> w{"a_0", "c_" + std::to_string(n)};
    for (int i = 0; i <= n; ++i) w.push_back("b_" + std::to_string(i));
    bool w_step = false;
    for (const auto& st : c.steps)
      for (const auto& h : st.horns) {
        HornSpec hs{c.ambient->tree(h.cell), c.ambient->face_descriptor(h.cell, h.omitted)};
        if (generator_class(hs) == AnodyneClass::BinaryExtendedLeft)
          w_step = h.cell == c.ambient->mask_of(w);
      }
    o.expect(w_step, tag + "the binary extended left step is not the W cell");
  }
}

void extended_corolla_split(Outcome& o) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}}) {
    VerifyReport r = verify_certificate(extended_corolla_certificate(n, k));
    std::string tag = "(" + std::to_string(n) + "," + std::to_string(k) + "): ";
    o.expect(r.valid, tag + "invalid");
    o.expect(r.final_step_class == AnodyneClass::Inner, tag + "final step not inner");
  }
}

void codimension(Outcome& o) {
  Tree stacked = graft(corolla(2), "a", corolla(3));
  std::vector<Tree> samples{extended_corolla(2, 1), graft(stacked, "b", linear(1)),
                            graft(stacked, "b", extended_corolla(2, 1))};
  std::size_t steps = 0;
  for (const Tree& t : samples) {
    VertexId v = t.root_vertex();
    AmbientSpec spec{false, t, 0};
    AmbientPtr amb = make_ambient(spec);
    SearchOptions opts;
    opts.budget = 100000;
    auto r = search_certificate(spec, codimension_base(*amb, t, v), std::nullopt,
                                AnodyneClass::Inner, opts);
    std::string tag = canonical_form(t) + ": ";
    o.expect(t.vertex_count() >= 3 && t.vertex_count() <= 5, tag + "sample size");
    o.expect(bool(r.certificate), tag + r.failure);
    if (!r.certificate) continue;
    o.expect(!r.certificate->steps.empty(), tag + "base is already the whole tree");
    o.expect(verify_certificate(*r.certificate).valid, tag + "invalid");
    steps += r.certificate->steps.size();
  }
  o.note << steps << " steps";
}

void root_horns(Outcome& o) {
  int checked = 0;
  for (const Tree& u : enumerate_shapes(4, 3)) {
    if (!has_root_horn(u)) continue;
    SearchOptions opts;
    opts.nested_root_horns = true;
    auto r = search_root_horn_certificate(u, AnodyneClass::ExtendedLeft, opts);
    std::string tag = canonical_form(u) + ": ";
    o.expect(bool(r.certificate), tag + r.failure);
    if (!r.certificate) continue;
    VerifyReport v = verify_certificate(*r.certificate);
    o.expect(v.valid, tag + "invalid");
    o.expect(count_class(v, AnodyneClass::Outer) == 0, tag + "outer generator used");
    ++checked;
  }
  o.note << checked << " trees";
}

void subcomplex_algebra(Outcome& o) {
  for (int n = 1; n <= 3; ++n) {
    auto amb = tensor_ambient(corolla(2), n);
    Subcomplex a0 = c2_base(amb, n);
    Subcomplex full = Subcomplex::full(amb);
    std::string tag = "n=" + std::to_string(n) + ": ";
    o.expect(a0.is_face_closed(), tag + "A_0 not face closed");
    o.expect(a0.subset_of(full) && !(a0 == full), tag + "A_0 not proper");
    EdgeMask t0 = c2_shuffle(*amb, n, 0);
    Subcomplex rep = Subcomplex::closure(amb, std::vector<EdgeMask>{t0});
    EdgeMask c0_face = t0 & ~amb->mask_of({"c_0"});
    o.expect((rep & a0) == Subcomplex::horn(amb, t0, c0_face), tag + "T_0 meets A_0 wrongly");
  }
}

void fault_injection(Outcome& o) {
  std::mt19937 rng(11);
  std::vector<Certificate> certs{pushout_product_certificate(2), extended_corolla_certificate(2, 2),
                                 root_horn_certificate(graft(corolla(2), "a", corolla(3)))};
  int trials = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Certificate c = certs[rng() % certs.size()];
    std::vector<int> horn_steps;
    for (std::size_t s = 0; s < c.steps.size(); ++s)
      if (c.steps[s].kind == Step::Kind::Horn) horn_steps.push_back(int(s));
    int s = horn_steps[rng() % horn_steps.size()];
    auto& adds = c.steps[s].horns;
    int j = int(rng() % adds.size());
    auto fs = c.ambient->faces_of(adds[j].cell);
    if (fs.size() < 2) continue;
    EdgeMask other = adds[j].omitted;
    while (other == adds[j].omitted) other = fs[rng() % fs.size()];
    adds[j].omitted = other;
    VerifyReport r = verify_certificate(c);
    ++trials;
    o.expect(!r.valid, c.name + ": corruption accepted");
    if (!r.valid)
      o.expect(r.violation->step == s && r.violation->addition == j,
               c.name + ": violation not at the corrupted addition");
  }

  SmcOperad op(one_object_groupoid(cyclic_table(2)));
  TableOperad clean = TableOperad::materialize(op, 3);
  auto entries = clean.compose_entries();
  for (int trial = 0; trial < 20; ++trial) {
    const auto& e = entries[rng() % entries.size()];
    TableOperad bad = clean;
    bad.set_compose(e.pf, e.f, e.i, e.pg, e.g, 1 - e.result);
    std::string label = compose_entry_label(bad, e.pf, e.f, e.i, e.pg, e.g);
    auto v = validate_operad(bad, 3);
    ++trials;
    o.expect(!v.empty(), "table corruption accepted: " + label);
    for (const auto& x : v)
      o.expect(std::find(x.entries.begin(), x.entries.end(), label) != x.entries.end(),
               "violation does not name " + label);
  }
  auto acts = clean.act_entries();
  for (int trial = 0; trial < 10; ++trial) {
    const auto& e = acts[rng() % acts.size()];
    if (clean.op_count(e.p) < 2) continue;
    TableOperad bad = clean;
    bad.set_act(e.p, e.f, e.sigma, 1 - e.result);
    std::string label = act_entry_label(bad, e.p, e.f, e.sigma);
    auto v = validate_operad(bad, 3);
    ++trials;
    o.expect(!v.empty(), "action corruption accepted: " + label);
    for (const auto& x : v)
      o.expect(std::find(x.entries.begin(), x.entries.end(), label) != x.entries.end(),
               "violation does not name " + label);
  }
  o.expect(trials >= 20, "fewer than 20 corruptions");
  if (o.ok) o.note << trials << " corruptions";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"corolla faces", 1, corolla_faces},
      {"shuffle counts", 5, shuffle_counts},
      {"discrete abelian groups are fully Kan with unique fillers", 120, discrete_abelian_groups},
      {"Z/2 one-object groupoid is strictly but not uniquely fully Kan", 60, picard_strictness},
      {"multiplicative monoid is inner Kan but not fully Kan", 60, monoid_non_example},
      {"pushout product filtration replays", 30, pushout_product},
      {"extended corolla filtration replays", 30, extended_corolla_split},
      {"codimension base is inner anodyne", 120, codimension},
      {"root horns of trees with at most 4 vertices are extended left", 300, root_horns},
      {"pushout product base is a sound subcomplex", 10, subcomplex_algebra},
      {"fault injection is pinpointed", 60, fault_injection},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) o.expect(false, "time limit exceeded");
    failed += !o.ok;
    std::printf("%s %2zu %s (%.2f s / %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, c.name, secs,
                c.limit_s, o.note.str().empty() ? "" : ": ", o.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
