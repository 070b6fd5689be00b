#include "dendro/operad.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dendro {

Profile permute(const Profile& p, const Perm& sigma) {
  if (sigma.size() != p.inputs.size())
    throw std::invalid_argument("permutation size does not match arity");
  Profile out;
  out.output = p.output;
  for (int s : sigma) out.inputs.push_back(p.inputs.at(s));
  return out;
}

Profile compose_profile(const Profile& f, int i, const Profile& g) {
  if (i < 0 || i >= f.arity() || f.inputs[i] != g.output)
    throw std::invalid_argument("profiles are not composable at this input");
  Profile out;
  out.output = f.output;
  out.inputs.insert(out.inputs.end(), f.inputs.begin(), f.inputs.begin() + i);
  out.inputs.insert(out.inputs.end(), g.inputs.begin(), g.inputs.end());
  out.inputs.insert(out.inputs.end(), f.inputs.begin() + i + 1, f.inputs.end());
  return out;
}

Colour Operad::colour(const std::string& name) const {
  for (Colour c = 0; c < colour_count(); ++c)
    if (colour_name(c) == name) return c;
  throw std::invalid_argument("unknown colour '" + name + "'");
}

namespace {

std::vector<int> encode(const Profile& p) {
  std::vector<int> k{p.arity()};
  k.insert(k.end(), p.inputs.begin(), p.inputs.end());
  k.push_back(p.output);
  return k;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Calls fn on every input tuple of length n over `colours` colours.
template <class Fn>
void for_each_tuple(int colours, int n, Fn&& fn) {
  std::vector<Colour> t(n, 0);
  if (colours == 0 && n > 0) return;
  while (true) {
    fn(t);
    int k = n - 1;
    while (k >= 0 && ++t[k] == colours) t[k--] = 0;
    if (k < 0) return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

TableOperad::TableOperad(std::vector<std::string> colours, int max_arity)
    : colours_(std::move(colours)),
      max_arity_(max_arity),
      identity_(colours_.size(), -1) {}

OpId TableOperad::add_op(const Profile& p, std::string name) {
  if (p.arity() > max_arity_)
    throw std::invalid_argument("operation arity exceeds the table bound");
  for (Colour c : p.inputs)
    if (c < 0 || c >= colour_count()) throw std::invalid_argument("bad colour");
  if (p.output < 0 || p.output >= colour_count())
    throw std::invalid_argument("bad colour");
  auto& v = ops_[p];
  v.push_back(std::move(name));
  return static_cast<OpId>(v.size()) - 1;
}

void TableOperad::set_identity(Colour c, OpId f) { identity_.at(c) = f; }

void TableOperad::set_compose(const Profile& pf, OpId f, int i,
                              const Profile& pg, OpId g, OpId result) {
  Key k = encode(pf);
  k.push_back(f);
  k.push_back(i);
  auto kg = encode(pg);
  k.insert(k.end(), kg.begin(), kg.end());
  k.push_back(g);
  compose_[k] = result;
}

void TableOperad::set_act(const Profile& p, OpId f, const Perm& sigma,
                          OpId result) {
  Key k = encode(p);
  k.push_back(f);
  k.insert(k.end(), sigma.begin(), sigma.end());
  act_[k] = result;
}

int TableOperad::op_count(const Profile& p) const {
  if (p.arity() > max_arity_)
    throw std::out_of_range("profile arity exceeds the table bound");
  auto it = ops_.find(p);
  return it == ops_.end() ? 0 : static_cast<int>(it->second.size());
}

std::string TableOperad::op_name(const Profile& p, OpId f) const {
  return ops_.at(p).at(f);
}

OpId TableOperad::identity(Colour c) const {
  OpId id = identity_.at(c);
  if (id < 0) throw std::out_of_range("no identity for colour " + colours_[c]);
  return id;
}

OpId TableOperad::compose(const Profile& pf, OpId f, int i, const Profile& pg,
                          OpId g) const {
  Key k = encode(pf);
  k.push_back(f);
  k.push_back(i);
  auto kg = encode(pg);
  k.insert(k.end(), kg.begin(), kg.end());
  k.push_back(g);
  auto it = compose_.find(k);
  if (it == compose_.end())
    throw std::out_of_range("missing composition " +
                            compose_entry_label(*this, pf, f, i, pg, g));
  return it->second;
}

OpId TableOperad::act(const Profile& p, OpId f, const Perm& sigma) const {
  bool trivial = true;
  for (size_t j = 0; j < sigma.size(); ++j) trivial = trivial && sigma[j] == int(j);
  Key k = encode(p);
  k.push_back(f);
  k.insert(k.end(), sigma.begin(), sigma.end());
  auto it = act_.find(k);
  if (it == act_.end()) {
    if (trivial) return f;
    throw std::out_of_range("missing action entry for " + op_name(p, f));
  }
  return it->second;
}

std::vector<TableOperad::ComposeEntry> TableOperad::compose_entries() const {
  std::vector<ComposeEntry> out;
  for (const auto& [k, r] : compose_) {
    ComposeEntry e;
    size_t pos = 0;
    auto read_profile = [&](Profile& p) {
      int n = k[pos++];
      p.inputs.assign(k.begin() + pos, k.begin() + pos + n);
      pos += n;
      p.output = k[pos++];
    };
    read_profile(e.pf);
    e.f = k[pos++];
    e.i = k[pos++];
    read_profile(e.pg);
    e.g = k[pos++];
    e.result = r;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<TableOperad::ActEntry> TableOperad::act_entries() const {
  std::vector<ActEntry> out;
  for (const auto& [k, r] : act_) {
    ActEntry e;
    int n = k[0];
    e.p.inputs.assign(k.begin() + 1, k.begin() + 1 + n);
    e.p.output = k[1 + n];
    e.f = k[2 + n];
    e.sigma.assign(k.begin() + 3 + n, k.end());
    e.result = r;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Profile> TableOperad::profiles() const {
  std::vector<Profile> out;
  for (const auto& [p, names] : ops_)
    if (!names.empty()) out.push_back(p);
  return out;
}

TableOperad TableOperad::materialize(const Operad& p, int max_arity) {
  std::vector<std::string> names;
  for (Colour c = 0; c < p.colour_count(); ++c) names.push_back(p.colour_name(c));
  TableOperad t(names, max_arity);
  auto profiles = nonempty_profiles(p, max_arity);
  for (const auto& pr : profiles)
    for (OpId f = 0; f < p.op_count(pr); ++f) t.add_op(pr, p.op_name(pr, f));
  for (Colour c = 0; c < p.colour_count(); ++c) t.set_identity(c, p.identity(c));
  std::map<Colour, std::vector<Profile>> by_output;
  for (const auto& pr : profiles) by_output[pr.output].push_back(pr);
  for (const auto& pf : profiles) {
    int nf = p.op_count(pf);
    for (OpId f = 0; f < nf; ++f) {
      for (const auto& sigma : all_perms(pf.arity()))
        t.set_act(pf, f, sigma, p.act(pf, f, sigma));
      for (int i = 0; i < pf.arity(); ++i) {
        for (const auto& pg : by_output[pf.inputs[i]]) {
          if (pf.arity() + pg.arity() - 1 > max_arity) continue;
          for (OpId g = 0; g < p.op_count(pg); ++g)
            t.set_compose(pf, f, i, pg, g, p.compose(pf, f, i, pg, g));
        }
      }
    }
  }
  return t;
}

TableOperad trivial_operad() {
  TableOperad t({"*"}, 3);
  Profile p{{0}, 0};
  OpId id = t.add_op(p, "id");
  t.set_identity(0, id);
  t.set_compose(p, id, 0, p, id, id);
  return t;
}

// ---------------------------------------------------------------------------

int FiniteSMC::tensor_all(const std::vector<int>& objs) const {
  int acc = unit;
  for (int x : objs) acc = tensor.at(acc).at(x);
  return acc;
}

int FiniteSMC::tensor_mor_all(const std::vector<int>& mors) const {
  int acc = identity.at(unit);
  for (int f : mors) acc = tensor_mor.at(acc).at(f);
  return acc;
}

std::vector<int> FiniteSMC::hom(int x, int y) const {
  std::vector<int> out;
  for (int f = 0; f < morphism_count(); ++f)
    if (morphisms[f].source == x && morphisms[f].target == y) out.push_back(f);
  return out;
}

std::vector<std::string> validate_smc(const FiniteSMC& c) {
  std::vector<std::string> v;
  const int n = c.object_count();
  const int m = c.morphism_count();
  auto bad = [&](std::string s) { v.push_back(std::move(s)); };
  if (n == 0) {
    bad("no objects");
    return v;
  }
  if (c.unit < 0 || c.unit >= n) bad("unit out of range");
  if (int(c.tensor.size()) != n) bad("tensor table has wrong size");
  if (int(c.identity.size()) != n) bad("identity table has wrong size");
  if (int(c.compose.size()) != m || int(c.tensor_mor.size()) != m)
    bad("morphism tables have wrong size");
  if (int(c.symmetry.size()) != n) bad("symmetry table has wrong size");
  for (const auto& row : c.tensor)
    if (int(row.size()) != n) bad("tensor table has wrong size");
  for (const auto& row : c.compose)
    if (int(row.size()) != m) bad("composition table has wrong size");
  for (const auto& row : c.tensor_mor)
    if (int(row.size()) != m) bad("morphism tensor table has wrong size");
  for (const auto& row : c.symmetry)
    if (int(row.size()) != n) bad("symmetry table has wrong size");
  if (!v.empty()) return v;
  for (const auto& row : c.tensor)
    for (int x : row)
      if (x < 0 || x >= n) bad("tensor value out of range");
  for (const auto& mor : c.morphisms)
    if (mor.source < 0 || mor.source >= n || mor.target < 0 || mor.target >= n)
      bad("morphism '" + mor.name + "' has endpoints out of range");
  for (int x = 0; x < n; ++x) {
    int id = c.identity[x];
    if (id < 0 || id >= m || c.morphisms[id].source != x ||
        c.morphisms[id].target != x)
      bad("identity of " + c.objects[x] + " is not an endomorphism");
  }
  if (!v.empty()) return v;

  const auto& M = c.morphisms;
  auto name = [&](int f) { return M[f].name; };
  // Category.
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      int gf = c.compose[g][f];
      bool composable = M[f].target == M[g].source;
      if (composable != (gf >= 0))
        bad("composition defined wrongly for " + name(g) + " o " + name(f));
      else if (composable && (gf >= m || M[gf].source != M[f].source ||
                              M[gf].target != M[g].target))
        bad("composite " + name(g) + " o " + name(f) + " has wrong endpoints");
    }
  if (!v.empty()) return v;
  for (int f = 0; f < m; ++f) {
    if (c.compose[f][c.identity[M[f].source]] != f ||
        c.compose[c.identity[M[f].target]][f] != f)
      bad("unit law fails for " + name(f));
  }
  for (int h = 0; h < m; ++h)
    for (int g = 0; g < m; ++g) {
      if (c.compose[h][g] < 0) continue;
      for (int f = 0; f < m; ++f) {
        if (c.compose[g][f] < 0) continue;
        if (c.compose[c.compose[h][g]][f] != c.compose[h][c.compose[g][f]])
          bad("composition not associative at " + name(h) + "," + name(g) +
              "," + name(f));
      }
    }
  // Tensor on objects: strict monoid.
  for (int x = 0; x < n; ++x) {
    if (c.tensor[c.unit][x] != x || c.tensor[x][c.unit] != x)
      bad("unit is not strict for " + c.objects[x]);
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (c.tensor[c.tensor[x][y]][z] != c.tensor[x][c.tensor[y][z]])
          bad("tensor not associative at " + c.objects[x] + "," +
              c.objects[y] + "," + c.objects[z]);
  }
  // Tensor on morphisms: functor, strict.
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      int fg = c.tensor_mor[f][g];
      if (fg < 0 || fg >= m ||
          M[fg].source != c.tensor[M[f].source][M[g].source] ||
          M[fg].target != c.tensor[M[f].target][M[g].target])
        bad("tensor " + name(f) + " (x) " + name(g) + " has wrong endpoints");
    }
  if (!v.empty()) return v;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (c.tensor_mor[c.identity[x]][c.identity[y]] !=
          c.identity[c.tensor[x][y]])
        bad("tensor of identities is not an identity");
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g)
      for (int h = 0; h < m; ++h)
        if (c.tensor_mor[c.tensor_mor[f][g]][h] != c.tensor_mor[f][c.tensor_mor[g][h]])
          bad("morphism tensor not associative at " + name(f) + "," + name(g) +
              "," + name(h));
  for (int f = 0; f < m; ++f)
    if (c.tensor_mor[c.identity[c.unit]][f] != f ||
        c.tensor_mor[f][c.identity[c.unit]] != f)
      bad("unit is not strict for morphism " + name(f));
  for (int f2 = 0; f2 < m; ++f2)
    for (int f1 = 0; f1 < m; ++f1) {
      int a = c.compose[f2][f1];
      if (a < 0) continue;
      for (int g2 = 0; g2 < m; ++g2)
        for (int g1 = 0; g1 < m; ++g1) {
          int b = c.compose[g2][g1];
          if (b < 0) continue;
          int lhs = c.tensor_mor[a][b];
          int rhs = c.compose[c.tensor_mor[f2][g2]][c.tensor_mor[f1][g1]];
          if (lhs != rhs) bad("interchange law fails");
        }
    }
  // Symmetry.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int s = c.symmetry[x][y];
      if (s < 0 || s >= m || M[s].source != c.tensor[x][y] ||
          M[s].target != c.tensor[y][x]) {
        bad("symmetry " + c.objects[x] + "," + c.objects[y] +
            " has wrong endpoints");
      }
    }
  if (!v.empty()) return v;
  for (int x = 0; x < n; ++x) {
    if (c.symmetry[x][c.unit] != c.identity[x])
      bad("symmetry with the unit is not the identity");
    for (int y = 0; y < n; ++y) {
      if (c.compose[c.symmetry[y][x]][c.symmetry[x][y]] !=
          c.identity[c.tensor[x][y]])
        bad("symmetry is not involutive at " + c.objects[x] + "," +
            c.objects[y]);
      for (int z = 0; z < n; ++z) {
        int lhs = c.symmetry[x][c.tensor[y][z]];
        int rhs = c.compose[c.tensor_mor[c.identity[y]][c.symmetry[x][z]]]
                           [c.tensor_mor[c.symmetry[x][y]][c.identity[z]]];
        if (lhs != rhs) bad("hexagon fails");
      }
    }
  }
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      int lhs = c.compose[c.symmetry[M[f].target][M[g].target]][c.tensor_mor[f][g]];
      int rhs = c.compose[c.tensor_mor[g][f]][c.symmetry[M[f].source][M[g].source]];
      if (lhs != rhs) bad("symmetry is not natural at " + name(f) + "," + name(g));
    }
  return v;
}

namespace {

void check_table(const std::vector<std::vector<int>>& t) {
  const int n = static_cast<int>(t.size());
  if (n == 0) throw std::invalid_argument("empty operation table");
  for (const auto& row : t) {
    if (int(row.size()) != n) throw std::invalid_argument("table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw std::invalid_argument("table value out of range");
  }
}

int monoid_unit(const std::vector<std::vector<int>>& t) {
  const int n = static_cast<int>(t.size());
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = t[e][x] == x && t[x][e] == x;
    if (ok) return e;
  }
  throw std::invalid_argument("table has no unit element");
}

void check_commutative_monoid(const std::vector<std::vector<int>>& t) {
  check_table(t);
  monoid_unit(t);
  const int n = static_cast<int>(t.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (t[x][y] != t[y][x])
        throw std::invalid_argument("table is not commutative");
      for (int z = 0; z < n; ++z)
        if (t[t[x][y]][z] != t[x][t[y][z]])
          throw std::invalid_argument("table is not associative");
    }
}

void check_abelian_group(const std::vector<std::vector<int>>& t) {
  check_commutative_monoid(t);
  int e = monoid_unit(t);
  const int n = static_cast<int>(t.size());
  for (int x = 0; x < n; ++x) {
    bool inv = false;
    for (int y = 0; y < n && !inv; ++y) inv = t[x][y] == e;
    if (!inv) throw std::invalid_argument("table has an element without inverse");
  }
}

FiniteSMC discrete(const std::vector<std::vector<int>>& t,
                   std::vector<std::string> names) {
  const int n = static_cast<int>(t.size());
  if (names.empty())
    for (int x = 0; x < n; ++x) names.push_back(std::to_string(x));
  if (int(names.size()) != n) throw std::invalid_argument("wrong number of names");
  FiniteSMC c;
  c.objects = names;
  c.unit = monoid_unit(t);
  c.tensor = t;
  for (int x = 0; x < n; ++x) {
    c.morphisms.push_back({"id_" + names[x], x, x});
    c.identity.push_back(x);
  }
  c.compose.assign(n, std::vector<int>(n, -1));
  c.tensor_mor = t;
  c.symmetry = t;
  for (int x = 0; x < n; ++x) c.compose[x][x] = x;
  return c;
}

}  // namespace

FiniteSMC discrete_abelian(const std::vector<std::vector<int>>& table,
                           std::vector<std::string> names) {
  check_abelian_group(table);
  return discrete(table, std::move(names));
}

FiniteSMC discrete_monoid(const std::vector<std::vector<int>>& table,
                          std::vector<std::string> names) {
  check_commutative_monoid(table);
  return discrete(table, std::move(names));
}

FiniteSMC one_object_groupoid(const std::vector<std::vector<int>>& table) {
  check_abelian_group(table);
  const int n = static_cast<int>(table.size());
  int e = monoid_unit(table);
  FiniteSMC c;
  c.objects = {"*"};
  c.unit = 0;
  c.tensor = {{0}};
  for (int g = 0; g < n; ++g) c.morphisms.push_back({"g" + std::to_string(g), 0, 0});
  c.identity = {e};
  c.compose = table;
  c.tensor_mor = table;
  c.symmetry = {{e}};
  return c;
}

FiniteSMC codiscrete_groupoid(const std::vector<std::vector<int>>& table) {
  check_abelian_group(table);
  const int n = static_cast<int>(table.size());
  FiniteSMC c;
  for (int x = 0; x < n; ++x) c.objects.push_back(std::to_string(x));
  c.unit = monoid_unit(table);
  c.tensor = table;
  auto id_of = [n](int x, int y) { return x * n + y; };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      c.morphisms.push_back({std::to_string(x) + "->" + std::to_string(y), x, y});
  for (int x = 0; x < n; ++x) c.identity.push_back(id_of(x, x));
  const int m = n * n;
  c.compose.assign(m, std::vector<int>(m, -1));
  c.tensor_mor.assign(m, std::vector<int>(m, -1));
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      const auto& F = c.morphisms[f];
      const auto& G = c.morphisms[g];
      if (F.source == G.target) c.compose[f][g] = id_of(G.source, F.target);
      c.tensor_mor[f][g] =
          id_of(table[F.source][G.source], table[F.target][G.target]);
    }
  c.symmetry.assign(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      c.symmetry[x][y] = id_of(table[x][y], table[y][x]);
  return c;
}

std::vector<std::vector<int>> cyclic_table(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return t;
}

std::vector<std::vector<int>> product_table(const std::vector<std::vector<int>>& a,
                                            const std::vector<std::vector<int>>& b) {
  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y)
      t[x][y] = a[x / nb][y / nb] * nb + b[x % nb][y % nb];
  return t;
}

bool picard_check(const FiniteSMC& c) {
  if (!validate_smc(c).empty()) return false;
  for (int f = 0; f < c.morphism_count(); ++f) {
    const auto& F = c.morphisms[f];
    bool inv = false;
    for (int g : c.hom(F.target, F.source))
      inv = inv || (c.compose[g][f] == c.identity[F.source] &&
                    c.compose[f][g] == c.identity[F.target]);
    if (!inv) return false;
  }
  for (int x = 0; x < c.object_count(); ++x) {
    bool inv = false;
    for (int y = 0; y < c.object_count() && !inv; ++y)
      inv = !c.hom(c.tensor[x][y], c.unit).empty();
    if (!inv) return false;
  }
  return true;
}

bool is_discrete_abelian(const FiniteSMC& c) {
  if (!validate_smc(c).empty()) return false;
  if (c.morphism_count() != c.object_count()) return false;
  for (int x = 0; x < c.object_count(); ++x) {
    bool inv = false;
    for (int y = 0; y < c.object_count() && !inv; ++y)
      inv = c.tensor[x][y] == c.unit;
    if (!inv) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

SmcOperad::SmcOperad(FiniteSMC c) : c_(std::move(c)) {
  auto v = validate_smc(c_);
  if (!v.empty())
    throw std::invalid_argument("invalid symmetric monoidal category: " + v[0]);
  const int n = c_.object_count();
  homs_.assign(n, std::vector<std::vector<int>>(n));
  for (int f = 0; f < c_.morphism_count(); ++f)
    homs_[c_.morphisms[f].source][c_.morphisms[f].target].push_back(f);
}

int SmcOperad::op_count(const Profile& p) const {
  return static_cast<int>(homs_[c_.tensor_all(p.inputs)][p.output].size());
}

int SmcOperad::morphism(const Profile& p, OpId f) const {
  return homs_[c_.tensor_all(p.inputs)][p.output].at(f);
}

std::string SmcOperad::op_name(const Profile& p, OpId f) const {
  return c_.morphisms[morphism(p, f)].name;
}

OpId SmcOperad::index_in(const Profile& p, int m) const {
  const auto& hs = homs_[c_.tensor_all(p.inputs)][p.output];
  auto it = std::find(hs.begin(), hs.end(), m);
  if (it == hs.end()) throw std::logic_error("morphism outside its hom set");
  return static_cast<OpId>(it - hs.begin());
}

OpId SmcOperad::identity(Colour c) const {
  return index_in(Profile{{c}, c}, c_.identity[c]);
}

OpId SmcOperad::compose(const Profile& pf, OpId f, int i, const Profile& pg,
                        OpId g) const {
  Profile pr = compose_profile(pf, i, pg);
  std::vector<int> parts;
  for (int j = 0; j < pf.arity(); ++j)
    parts.push_back(j == i ? morphism(pg, g) : c_.identity[pf.inputs[j]]);
  int inner = c_.tensor_mor_all(parts);
  int result = c_.compose[morphism(pf, f)][inner];
  return index_in(pr, result);
}

OpId SmcOperad::act(const Profile& p, OpId f, const Perm& sigma) const {
  Profile pr = permute(p, sigma);
  // Sort the arrangement sigma back to the identity by adjacent swaps; each
  // swap contributes a symmetry tensored with identities.
  Perm labels = sigma;
  std::vector<Colour> objs = pr.inputs;
  int acc = c_.identity[c_.tensor_all(objs)];
  const int n = static_cast<int>(labels.size());
  for (int pass = 0; pass < n; ++pass) {
    for (int j = 0; j + 1 < n; ++j) {
      if (labels[j] <= labels[j + 1]) continue;
      std::vector<int> parts;
      for (int k = 0; k < j; ++k) parts.push_back(c_.identity[objs[k]]);
      parts.push_back(c_.symmetry[objs[j]][objs[j + 1]]);
      for (int k = j + 2; k < n; ++k) parts.push_back(c_.identity[objs[k]]);
      acc = c_.compose[c_.tensor_mor_all(parts)][acc];
      std::swap(labels[j], labels[j + 1]);
      std::swap(objs[j], objs[j + 1]);
    }
  }
  return index_in(pr, c_.compose[morphism(p, f)][acc]);
}

// ---------------------------------------------------------------------------

std::string compose_entry_label(const Operad& p, const Profile& pf, OpId f,
                                int i, const Profile& pg, OpId g) {
  auto lab = [&](const Profile& pr, OpId op) {
    std::string s = p.op_name(pr, op) + "(";
    for (int j = 0; j < pr.arity(); ++j)
      s += (j ? "," : "") + p.colour_name(pr.inputs[j]);
    return s + ";" + p.colour_name(pr.output) + ")";
  };
  return lab(pf, f) + " o_" + std::to_string(i + 1) + " " + lab(pg, g);
}

std::string act_entry_label(const Operad& p, const Profile& pf, OpId f,
                            const Perm& sigma) {
  std::string s = p.op_name(pf, f) + "(";
  for (int j = 0; j < pf.arity(); ++j)
    s += (j ? "," : "") + p.colour_name(pf.inputs[j]);
  s += ";" + p.colour_name(pf.output) + ") . [";
  for (size_t j = 0; j < sigma.size(); ++j)
    s += (j ? "," : "") + std::to_string(sigma[j] + 1);
  return s + "]";
}

std::vector<Profile> nonempty_profiles(const Operad& p, int max_arity) {
  std::vector<Profile> out;
  for (int n = 0; n <= max_arity; ++n)
    for_each_tuple(p.colour_count(), n, [&](const std::vector<Colour>& t) {
      for (Colour c = 0; c < p.colour_count(); ++c) {
        Profile pr{t, c};
        if (p.op_count(pr) > 0) out.push_back(pr);
      }
    });
  return out;
}

namespace {

struct Op {
  Profile p;
  OpId f;
};

class Recorder {
 public:
  explicit Recorder(const Operad& p) : p_(p) {}
  Op comp(const Op& a, int i, const Op& b) {
    entries.push_back(compose_entry_label(p_, a.p, a.f, i, b.p, b.f));
    return {compose_profile(a.p, i, b.p), p_.compose(a.p, a.f, i, b.p, b.f)};
  }
  Op act(const Op& a, const Perm& s) {
    entries.push_back(act_entry_label(p_, a.p, a.f, s));
    return {permute(a.p, s), p_.act(a.p, a.f, s)};
  }
  std::vector<std::string> entries;

 private:
  const Operad& p_;
};

}  // namespace

std::vector<OperadViolation> validate_operad(const Operad& P, int max_arity) {
  std::vector<OperadViolation> out;
  auto profiles = nonempty_profiles(P, max_arity);
  std::map<Colour, std::vector<Profile>> by_output;
  for (const auto& pr : profiles) by_output[pr.output].push_back(pr);
  std::vector<Op> ops;
  for (const auto& pr : profiles)
    for (OpId f = 0; f < P.op_count(pr); ++f) ops.push_back({pr, f});
  auto ops_into = [&](Colour c, int max_ar) {
    std::vector<Op> r;
    for (const auto& pr : by_output[c])
      if (pr.arity() <= max_ar)
        for (OpId f = 0; f < P.op_count(pr); ++f) r.push_back({pr, f});
    return r;
  };
  auto label = [&](const Op& o) {
    std::string s = P.op_name(o.p, o.f) + "(";
    for (int j = 0; j < o.p.arity(); ++j)
      s += (j ? "," : "") + P.colour_name(o.p.inputs[j]);
    return s + ";" + P.colour_name(o.p.output) + ")";
  };
  auto report = [&](const std::string& law, const std::string& inst,
                    Recorder& r) {
    out.push_back({law, inst, r.entries});
  };
  // Evaluates both sides; lookup failures count as violations too.
  auto check = [&](const std::string& law, const std::string& inst,
                   auto&& lhs, auto&& rhs) {
    Recorder r(P);
    try {
      Op a = lhs(r);
      Op b = rhs(r);
      if (!(a.p == b.p) || a.f != b.f) report(law, inst, r);
    } catch (const std::exception& e) {
      report(law, inst + " (" + e.what() + ")", r);
    }
  };

  for (Colour c = 0; c < P.colour_count(); ++c) {
    Profile pc{{c}, c};
    OpId id = -1;
    try {
      id = P.identity(c);
    } catch (const std::exception&) {
    }
    if (id < 0 || id >= P.op_count(pc))
      out.push_back({"identity", "colour " + P.colour_name(c), {}});
  }
  if (!out.empty()) return out;
  auto id_op = [&](Colour c) { return Op{Profile{{c}, c}, P.identity(c)}; };

  for (const Op& f : ops) {
    const int n = f.p.arity();
    for (int i = 0; i < n; ++i)
      check("right unit", label(f) + " o_" + std::to_string(i + 1) + " id",
            [&](Recorder& r) { return r.comp(f, i, id_op(f.p.inputs[i])); },
            [&](Recorder&) { return f; });
    check("left unit", "id o_1 " + label(f),
          [&](Recorder& r) { return r.comp(id_op(f.p.output), 0, f); },
          [&](Recorder&) { return f; });

    for (int i = 0; i < n; ++i) {
      for (const Op& g : ops_into(f.p.inputs[i], max_arity - n + 1)) {
        const int m = g.p.arity();
        // Sequential associativity.
        for (int j = 0; j < m; ++j) {
          for (const Op& h : ops_into(g.p.inputs[j], max_arity - n - m + 2)) {
            if (h.p.arity() + m - 1 > max_arity) continue;
            check("sequential associativity",
                  "(" + label(f) + " o_" + std::to_string(i + 1) + " " +
                      label(g) + ") o_" + std::to_string(i + j + 1) + " " +
                      label(h),
                  [&](Recorder& r) { return r.comp(r.comp(f, i, g), i + j, h); },
                  [&](Recorder& r) { return r.comp(f, i, r.comp(g, j, h)); });
          }
        }
        // Parallel associativity.
        for (int k = i + 1; k < n; ++k) {
          for (const Op& h : ops_into(f.p.inputs[k], max_arity - n - m + 2)) {
            if (n + h.p.arity() - 1 > max_arity) continue;
            check("parallel associativity",
                  label(f) + " with " + label(g) + " at " +
                      std::to_string(i + 1) + " and " + label(h) + " at " +
                      std::to_string(k + 1),
                  [&](Recorder& r) { return r.comp(r.comp(f, i, g), k + m - 1, h); },
                  [&](Recorder& r) { return r.comp(r.comp(f, k, h), i, g); });
          }
        }
      }
    }

    auto perms = all_perms(n);
    Perm ident(n);
    std::iota(ident.begin(), ident.end(), 0);
    check("action unit", label(f),
          [&](Recorder& r) { return r.act(f, ident); },
          [&](Recorder&) { return f; });
    for (const auto& s : perms)
      for (const auto& t : perms) {
        Perm st(n);
        for (int j = 0; j < n; ++j) st[j] = s[t[j]];
        check("action composition", label(f),
              [&](Recorder& r) { return r.act(r.act(f, s), t); },
              [&](Recorder& r) { return r.act(f, st); });
      }

    // Equivariance of composition in both arguments.
    for (const auto& s : perms) {
      for (int i = 0; i < n; ++i) {
        const int si = s[i];
        for (const Op& g : ops_into(f.p.inputs[si], max_arity - n + 1)) {
          const int m = g.p.arity();
          auto pos = [&](int k) { return k < si ? k : k + m - 1; };
          Perm tau(n + m - 1);
          for (int L = 0; L < n + m - 1; ++L) {
            if (L < i) tau[L] = pos(s[L]);
            else if (L < i + m) tau[L] = si + (L - i);
            else tau[L] = pos(s[L - m + 1]);
          }
          check("equivariance (outer)",
                label(f) + " permuted, composed at " + std::to_string(i + 1) +
                    " with " + label(g),
                [&](Recorder& r) { return r.comp(r.act(f, s), i, g); },
                [&](Recorder& r) { return r.act(r.comp(f, si, g), tau); });
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      for (const Op& g : ops_into(f.p.inputs[i], max_arity - n + 1)) {
        const int m = g.p.arity();
        for (const auto& rho : all_perms(m)) {
          Perm tau(n + m - 1);
          std::iota(tau.begin(), tau.end(), 0);
          for (int t = 0; t < m; ++t) tau[i + t] = i + rho[t];
          check("equivariance (inner)",
                label(f) + " o_" + std::to_string(i + 1) + " permuted " +
                    label(g),
                [&](Recorder& r) { return r.comp(f, i, r.act(g, rho)); },
                [&](Recorder& r) { return r.act(r.comp(f, i, g), tau); });
        }
      }
    }
  }
  return out;
}

}  // namespace dendro
