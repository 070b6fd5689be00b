#include "dendro/shuffle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace dendro {

namespace {

bool has_underscore(const Tree& s) {
  for (const auto& n : s.names())
    if (n.find('_') != std::string::npos) return true;
  return false;
}

using Namer = std::function<std::string(EdgeId, int)>;

struct Pair {
  EdgeId s;
  int level;
};

// Percolation closure for S (x) L_n with edges named by `name`.
std::vector<ShuffleTree> percolate(const Tree& s, int n, const Namer& name) {
  if (n < 0) throw std::invalid_argument("linear tree size must be >= 0");
  std::map<std::string, Pair> parse;
  for (EdgeId e = 0; e < s.edge_count(); ++e)
    for (int i = 0; i <= n; ++i) parse[name(e, i)] = {e, i};

  auto make = [&](const std::vector<std::string>& edges,
                  const std::vector<NamedVertex>& verts) {
    ShuffleTree st{Tree::from_named(edges, verts, name(s.root(), n)), {}};
    for (EdgeId e = 0; e < st.tree.edge_count(); ++e) {
      const Pair& p = parse.at(st.tree.name(e));
      st.label.push_back({p.s, p.level});
    }
    return st;
  };

  // S at level 0 above the chain of root copies.
  std::vector<std::string> edges;
  std::vector<NamedVertex> verts;
  for (EdgeId e = 0; e < s.edge_count(); ++e) edges.push_back(name(e, 0));
  for (const auto& v : s.vertices()) {
    NamedVertex nv{{}, name(v.output, 0)};
    for (EdgeId in : v.inputs) nv.inputs.push_back(name(in, 0));
    verts.push_back(nv);
  }
  for (int i = 1; i <= n; ++i) {
    edges.push_back(name(s.root(), i));
    verts.push_back({{name(s.root(), i - 1)}, name(s.root(), i)});
  }

  std::vector<ShuffleTree> out;
  std::set<std::vector<std::string>> seen;
  std::deque<ShuffleTree> queue{make(edges, verts)};
  auto key = [](const Tree& t) {
    auto k = t.names();
    std::sort(k.begin(), k.end());
    return k;
  };
  seen.insert(key(queue.front().tree));
  while (!queue.empty()) {
    ShuffleTree cur = std::move(queue.front());
    queue.pop_front();
    const Tree& t = cur.tree;
    for (VertexId x = 0; x < t.vertex_count(); ++x) {
      const Vertex& vx = t.vertex(x);
      auto [o, i] = cur.label[vx.output];
      bool linear_vertex = vx.inputs.size() == 1 && cur.label[vx.inputs[0]].first == o;
      if (linear_vertex) continue;
      VertexId y = t.consumer(vx.output);
      if (y < 0 || cur.label[t.vertex(y).output].first != o) continue;
      // y is the linear vertex (o,i) -> (o,i+1); push x below it.
      std::vector<std::string> ne;
      std::vector<NamedVertex> nv;
      for (EdgeId e = 0; e < t.edge_count(); ++e)
        if (e != vx.output) ne.push_back(t.name(e));
      NamedVertex moved{{}, name(o, i + 1)};
      for (EdgeId in : vx.inputs) {
        EdgeId se = cur.label[in].first;
        ne.push_back(name(se, i + 1));
        nv.push_back({{t.name(in)}, name(se, i + 1)});
        moved.inputs.push_back(name(se, i + 1));
      }
      nv.push_back(moved);
      for (VertexId w = 0; w < t.vertex_count(); ++w) {
        if (w == x || w == y) continue;
        NamedVertex keep{{}, t.name(t.vertex(w).output)};
        for (EdgeId in : t.vertex(w).inputs) keep.inputs.push_back(t.name(in));
        nv.push_back(keep);
      }
      ShuffleTree next = make(ne, nv);
      if (seen.insert(key(next.tree)).second) queue.push_back(std::move(next));
    }
    out.push_back(std::move(cur));
  }
  return out;
}

}  // namespace

std::string pair_name(const Tree& s, EdgeId e, int level, int n) {
  const std::string& base = s.name(e);
  if (!has_underscore(s)) return base + "_" + std::to_string(level);
  if (n <= 1) return level == 0 ? base : base + "'";
  return base + "@" + std::to_string(level);
}

std::vector<ShuffleTree> shuffles(const Tree& s, int n) {
  return percolate(s, n, [&](EdgeId e, int i) { return pair_name(s, e, i, n); });
}

AmbientPtr tensor_ambient(const Tree& s, int n) {
  std::vector<Tree> trees;
  for (auto& st : shuffles(s, n)) trees.push_back(std::move(st.tree));
  return Ambient::make(canonical_form(s) + " (x) L_" + std::to_string(n), std::move(trees));
}

Subcomplex tensor_complex(const Tree& s, int n) { return Subcomplex::full(tensor_ambient(s, n)); }

Subcomplex tensor_sub(const AmbientPtr& ambient, const Tree& s, int n, EdgeMask sub,
                      const std::vector<int>& levels) {
  auto part = s.subtree(sub);
  if (!part) throw std::invalid_argument("edge set is not a subtree");
  if (levels.empty()) throw std::invalid_argument("empty level set");
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i] < 0 || levels[i] > n || (i > 0 && levels[i] <= levels[i - 1]))
      throw std::invalid_argument("levels must increase within 0..n");
  std::vector<EdgeId> to_s;
  for (EdgeId e = 0; e < part->edge_count(); ++e) to_s.push_back(s.edge(part->name(e)));
  auto shs = percolate(*part, int(levels.size()) - 1, [&](EdgeId e, int i) {
    return pair_name(s, to_s[e], levels[i], n);
  });
  Subcomplex out(ambient);
  for (const auto& st : shs) out.add(ambient->mask_of(st.tree.names()));
  return out;
}

Subcomplex pushout_product_base(const AmbientPtr& ambient, const Tree& s, int n,
                                EdgeMask omitted_face) {
  std::vector<int> all;
  for (int i = 0; i <= n; ++i) all.push_back(i);
  Subcomplex out(ambient);
  bool found = false;
  for (const auto& f : faces(s)) {
    if (f.mask == omitted_face) {
      found = true;
      continue;
    }
    out = out | tensor_sub(ambient, s, n, f.mask, all);
  }
  if (!found) throw std::invalid_argument("omitted face is not a face of the tree");
  if (n >= 1) {
    for (int i = 0; i <= n; ++i) {
      std::vector<int> levels;
      for (int j = 0; j <= n; ++j)
        if (j != i) levels.push_back(j);
      out = out | tensor_sub(ambient, s, n, s.full_mask(), levels);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string ab(char x, int i) { return std::string(1, x) + "_" + std::to_string(i); }

}  // namespace

EdgeMask c2_shuffle(const Ambient& ambient, int n, int k) {
  if (k < 0 || k > n) throw std::out_of_range("shuffle index out of range");
  std::vector<std::string> names;
  for (int i = 0; i <= k; ++i) {
    names.push_back(ab('a', i));
    names.push_back(ab('b', i));
  }
  for (int i = k; i <= n; ++i) names.push_back(ab('c', i));
  return ambient.mask_of(names);
}

NamedCell named_cell(const Ambient& ambient, NamedKind kind, int n, int i, int j) {
  auto names = [&](std::vector<std::string> v) { return ambient.mask_of(v); };
  auto chain = [](char x, int from, int to) {
    std::vector<std::string> v;
    for (int k = from; k <= to; ++k) v.push_back(ab(x, k));
    return v;
  };
  auto cat = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  NamedCell c;
  switch (kind) {
    case NamedKind::Pi: {
      if (i < 0 || i > n) throw std::out_of_range("pi index out of range");
      if (i < n) {
        std::vector<std::string> v{ab('b', n), ab('c', n)};
        for (int k = 0; k <= n; ++k)
          if (k != i) v.push_back(ab('a', k));
        c.mask = names(v);
      } else {
        if (n < 1) throw std::out_of_range("pi_n needs n >= 1");
        c.mask = names(cat(chain('a', 0, n - 1), {ab('b', n - 1), ab('c', n - 1)}));
      }
      c.label = "pi_" + std::to_string(i);
      break;
    }
    case NamedKind::Alpha:
    case NamedKind::SigmaAlpha:
      if (n < 1) throw std::out_of_range("alpha needs n >= 1");
      c.mask = names(cat(chain('a', 0, n - 1), {ab('b', n - 1), ab('b', n), ab('c', n)}));
      c.label = "alpha_" + std::to_string(n);
      if (kind == NamedKind::SigmaAlpha) {
        if (i < 0 || i >= n) throw std::out_of_range("degeneracy index out of range");
        c.doubled = ab('a', i);
        c.label = "sigma_" + std::to_string(i) + " " + c.label;
      }
      break;
    case NamedKind::Beta:
      if (n < 1) throw std::out_of_range("beta needs n >= 1");
      c.mask = names(cat(chain('a', 0, n - 1), {ab('b', n - 1), ab('c', n - 1), ab('c', n)}));
      c.label = "beta_" + std::to_string(n);
      break;
    case NamedKind::Gamma:
      c.mask = names(cat(chain('a', 0, n), {ab('b', n), ab('c', n)}));
      c.label = "gamma_" + std::to_string(n);
      break;
    case NamedKind::DT: {
      if (i < 0 || i > n || j < 0 || j > n || i == j)
        throw std::out_of_range("D_i T_j needs distinct indices in 0..n");
      EdgeMask t = c2_shuffle(ambient, n, j);
      if (i < j)
        c.mask = t & ~names({ab('a', i), ab('b', i)});
      else
        c.mask = t & ~names({ab('c', i)});
      c.label = "D_" + std::to_string(i) + " T_" + std::to_string(j);
      break;
    }
  }
  ambient.cell(c.mask);
  return c;
}

Subcomplex c2_base(const AmbientPtr& ambient, int n) {
  Tree c2 = corolla(2);
  for (const auto& f : faces(c2))
    if (f.kind == FaceKind::Colour && f.edge == c2.edge("b"))
      return pushout_product_base(ambient, c2, n, f.mask);
  throw std::logic_error("corolla(2) lacks a colour face at b");
}

}  // namespace dendro
