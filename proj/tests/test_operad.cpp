#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "dendro/operad.hpp"

using namespace dendro;

namespace {

// Multiplication table of S_3 acting on {0,1,2}, elements in lexicographic
// order of their one-line notation.
std::vector<std::vector<int>> s3_table() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::vector<int> c(3);
      for (int k = 0; k < 3; ++k) c[k] = perms[a][perms[b][k]];
      t[a][b] = int(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return t;
}

std::vector<std::vector<int>> multiplicative_01() { return {{0, 0}, {0, 1}}; }

std::vector<FiniteSMC> corpus() {
  return {discrete_abelian(cyclic_table(2)),
          discrete_abelian(cyclic_table(3)),
          discrete_abelian(cyclic_table(4)),
          discrete_abelian(product_table(cyclic_table(2), cyclic_table(2))),
          one_object_groupoid(cyclic_table(2)),
          codiscrete_groupoid(cyclic_table(2)),
          discrete_monoid(multiplicative_01())};
}

template <class Fn>
void each_tuple(int colours, int n, Fn fn) {
  std::vector<int> t(n, 0);
  while (true) {
    fn(t);
    int k = n - 1;
    while (k >= 0 && ++t[k] == colours) t[k--] = 0;
    if (k < 0) return;
  }
}

}  // namespace

TEST_CASE("discrete abelian groups") {
  FiniteSMC z2 = discrete_abelian(cyclic_table(2));
  CHECK(z2.object_count() == 2);
  CHECK(z2.morphism_count() == 2);
  CHECK(validate_smc(z2).empty());

  FiniteSMC z3 = discrete_abelian(cyclic_table(3));
  CHECK(z3.tensor[1][2] == 0);

  CHECK_THROWS_AS(discrete_abelian(s3_table()), std::invalid_argument);
  CHECK_THROWS_AS(discrete_abelian(multiplicative_01()), std::invalid_argument);
  CHECK_THROWS_AS(discrete_abelian({{0, 1}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("operad of a discrete abelian group: profile-sum law") {
  for (int n : {2, 3, 4}) {
    SmcOperad op(discrete_abelian(cyclic_table(n)));
    for (int ar = 0; ar <= 4; ++ar)
      each_tuple(n, ar, [&](const std::vector<int>& t) {
        int sum = std::accumulate(t.begin(), t.end(), 0) % n;
        for (int c = 0; c < n; ++c)
          CHECK(op.op_count(Profile{t, c}) == (sum == c ? 1 : 0));
      });
  }
}

TEST_CASE("one-object groupoid with hom group Z/2") {
  SmcOperad op(one_object_groupoid(cyclic_table(2)));
  for (int ar = 0; ar <= 4; ++ar)
    CHECK(op.op_count(Profile{std::vector<int>(ar, 0), 0}) == 2);
  CHECK(picard_check(op.smc()));
  CHECK_FALSE(is_discrete_abelian(op.smc()));
}

TEST_CASE("nullary operations are maps out of the unit") {
  for (const auto& c : corpus()) {
    SmcOperad op(c);
    for (int x = 0; x < c.object_count(); ++x)
      CHECK(op.op_count(Profile{{}, x}) == int(c.hom(c.unit, x).size()));
  }
}

TEST_CASE("Picard check") {
  CHECK(picard_check(discrete_abelian(cyclic_table(2))));
  CHECK(picard_check(one_object_groupoid(cyclic_table(2))));
  CHECK(picard_check(codiscrete_groupoid(cyclic_table(2))));
  CHECK_FALSE(picard_check(discrete_monoid(multiplicative_01())));
  CHECK(is_discrete_abelian(discrete_abelian(cyclic_table(3))));
  CHECK_FALSE(is_discrete_abelian(codiscrete_groupoid(cyclic_table(2))));
}

TEST_CASE("SMC validation catches broken tables") {
  FiniteSMC c = one_object_groupoid(cyclic_table(2));
  c.symmetry[0][0] = 1;  // symmetry with the unit must be trivial
  CHECK_FALSE(validate_smc(c).empty());

  FiniteSMC d = discrete_abelian(cyclic_table(3));
  d.tensor[1][1] = 0;
  CHECK_FALSE(validate_smc(d).empty());

  FiniteSMC e = codiscrete_groupoid(cyclic_table(2));
  e.compose[0][0] = 1;
  CHECK_FALSE(validate_smc(e).empty());
  CHECK_THROWS_AS(SmcOperad{e}, std::invalid_argument);
}

TEST_CASE("operad axioms hold for the corpus") {
  for (const auto& c : corpus()) {
    SmcOperad op(c);
    auto v = validate_operad(op, 3);
    CHECK(v.empty());
    if (!v.empty()) MESSAGE(v[0].law << ": " << v[0].instance);
  }
  CHECK(validate_operad(trivial_operad(), 3).empty());
}

TEST_CASE("materialized tables agree with the source operad") {
  SmcOperad op(discrete_abelian(product_table(cyclic_table(2), cyclic_table(2))));
  TableOperad t = TableOperad::materialize(op, 3);
  CHECK(validate_operad(t, 3).empty());
  for (const auto& e : t.compose_entries())
    CHECK(e.result == op.compose(e.pf, e.f, e.i, e.pg, e.g));
  CHECK_THROWS_AS(t.op_count(Profile{{0, 0, 0, 0}, 0}), std::out_of_range);
}

TEST_CASE("fault injection in composition tables") {
  SmcOperad op(one_object_groupoid(cyclic_table(2)));
  TableOperad clean = TableOperad::materialize(op, 3);
  auto entries = clean.compose_entries();
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const auto& e = entries[rng() % entries.size()];
    TableOperad bad = clean;
    bad.set_compose(e.pf, e.f, e.i, e.pg, e.g, 1 - e.result);
    std::string label = compose_entry_label(bad, e.pf, e.f, e.i, e.pg, e.g);
    auto v = validate_operad(bad, 3);
    CHECK(!v.empty());
    for (const auto& x : v) {
      bool touches =
          std::find(x.entries.begin(), x.entries.end(), label) != x.entries.end();
      CHECK(touches);
      if (!touches) MESSAGE(x.law << " " << x.instance);
    }
  }
}

TEST_CASE("fault injection in action tables") {
  SmcOperad op(one_object_groupoid(cyclic_table(2)));
  TableOperad bad = TableOperad::materialize(op, 3);
  Profile p{{0, 0}, 0};
  bad.set_act(p, 0, {1, 0}, 1);
  std::string label = act_entry_label(bad, p, 0, {1, 0});
  auto v = validate_operad(bad, 3);
  CHECK(!v.empty());
  for (const auto& x : v)
    CHECK(std::find(x.entries.begin(), x.entries.end(), label) != x.entries.end());
}
