#include "dendro/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dendro {

namespace {

[[noreturn]] void bad_tree(const std::string& why) {
  throw std::invalid_argument("invalid tree: " + why);
}

}  // namespace

Tree::Tree(std::vector<std::string> edge_names, std::vector<Vertex> vertices,
           EdgeId root)
    : names_(std::move(edge_names)),
      vertices_(std::move(vertices)),
      root_(root) {
  index();
}

void Tree::index() {
  const int n = edge_count();
  if (n == 0) bad_tree("no edges");
  if (root_ < 0 || root_ >= n) bad_tree("root out of range");
  by_name_.clear();
  for (int e = 0; e < n; ++e) {
    if (names_[e].empty()) bad_tree("empty edge name");
    if (!by_name_.emplace(names_[e], e).second)
      bad_tree("duplicate edge name '" + names_[e] + "'");
  }
  producer_.assign(n, -1);
  consumer_.assign(n, -1);
  for (int v = 0; v < vertex_count(); ++v) {
    const Vertex& vx = vertices_[v];
    if (vx.output < 0 || vx.output >= n) bad_tree("vertex output out of range");
    if (producer_[vx.output] >= 0)
      bad_tree("edge '" + names_[vx.output] + "' is the output of two vertices");
    producer_[vx.output] = v;
    for (EdgeId in : vx.inputs) {
      if (in < 0 || in >= n) bad_tree("vertex input out of range");
      if (consumer_[in] >= 0)
        bad_tree("edge '" + names_[in] + "' is the input of two vertices");
      consumer_[in] = v;
    }
  }
  if (consumer_[root_] >= 0) bad_tree("root is the input of a vertex");
  if (vertices_.empty() && n != 1) bad_tree("eta must have exactly one edge");
  if (!vertices_.empty() && producer_[root_] < 0)
    bad_tree("root is not the output of a vertex");
  for (int e = 0; e < n; ++e) {
    if (e != root_ && consumer_[e] < 0)
      bad_tree("edge '" + names_[e] + "' is not attached below");
  }
  // Every edge must reach the root without revisiting a vertex.
  for (int e = 0; e < n; ++e) {
    int cur = e;
    int steps = 0;
    while (cur != root_) {
      cur = vertices_[consumer_[cur]].output;
      if (++steps > n) bad_tree("cycle through edge '" + names_[e] + "'");
    }
  }
}

Tree Tree::eta(std::string name) { return Tree({std::move(name)}, {}, 0); }

Tree Tree::from_named(const std::vector<std::string>& edges,
                      const std::vector<NamedVertex>& vertices,
                      const std::string& root) {
  std::unordered_map<std::string, EdgeId> idx;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) idx.emplace(edges[i], i);
  auto look = [&](const std::string& s) {
    auto it = idx.find(s);
    if (it == idx.end()) bad_tree("unknown edge '" + s + "'");
    return it->second;
  };
  std::vector<Vertex> vs;
  vs.reserve(vertices.size());
  for (const auto& nv : vertices) {
    Vertex v;
    for (const auto& in : nv.inputs) v.inputs.push_back(look(in));
    v.output = look(nv.output);
    vs.push_back(std::move(v));
  }
  return Tree(edges, std::move(vs), look(root));
}

std::optional<EdgeId> Tree::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

EdgeId Tree::edge(std::string_view name) const {
  auto e = find(name);
  if (!e) throw std::invalid_argument("unknown edge '" + std::string(name) + "'");
  return *e;
}

EdgeKind Tree::kind(EdgeId e) const {
  unsigned k = 0;
  if (is_root(e)) k |= static_cast<unsigned>(EdgeKind::Root);
  if (is_leaf(e)) k |= static_cast<unsigned>(EdgeKind::Leaf);
  if (is_inner(e)) k |= static_cast<unsigned>(EdgeKind::Inner);
  return static_cast<EdgeKind>(k);
}

std::vector<EdgeId> Tree::planar_edges() const {
  std::vector<EdgeId> out;
  std::vector<EdgeId> stack{root_};
  while (!stack.empty()) {
    EdgeId e = stack.back();
    stack.pop_back();
    out.push_back(e);
    if (VertexId v = producer_[e]; v >= 0) {
      const auto& ins = vertices_[v].inputs;
      for (auto it = ins.rbegin(); it != ins.rend(); ++it) stack.push_back(*it);
    }
  }
  return out;
}

std::vector<EdgeId> Tree::leaves() const {
  std::vector<EdgeId> out;
  for (EdgeId e : planar_edges())
    if (is_leaf(e)) out.push_back(e);
  return out;
}

std::vector<EdgeId> Tree::inner_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (is_inner(e)) out.push_back(e);
  return out;
}

int Tree::inner_edges_at(VertexId v) const {
  const Vertex& vx = vertices_.at(v);
  int n = is_inner(vx.output) ? 1 : 0;
  for (EdgeId in : vx.inputs)
    if (is_inner(in)) ++n;
  return n;
}

bool Tree::is_linear() const {
  return std::all_of(vertices_.begin(), vertices_.end(),
                     [](const Vertex& v) { return v.inputs.size() == 1; });
}

bool Tree::has_nullary_vertex() const {
  return std::any_of(vertices_.begin(), vertices_.end(),
                     [](const Vertex& v) { return v.inputs.empty(); });
}

bool Tree::above(EdgeId a, EdgeId b) const {
  EdgeId cur = a;
  while (cur != root_) {
    cur = vertices_[consumer_[cur]].output;
    if (cur == b) return true;
  }
  return false;
}

EdgeMask Tree::full_mask() const {
  if (edge_count() > kMaxMaskEdges)
    throw std::length_error("tree has more edges than an edge mask holds");
  return edge_count() == 64 ? ~EdgeMask{0} : (bit(edge_count()) - 1);
}

EdgeMask Tree::mask_of(const std::vector<std::string>& names) const {
  EdgeMask m = 0;
  for (const auto& n : names) m |= bit(edge(n));
  return m;
}

std::vector<std::string> Tree::names_of(EdgeMask m) const {
  std::vector<std::string> out;
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (has(m, e)) out.push_back(names_[e]);
  return out;
}

std::optional<Tree> Tree::subtree(EdgeMask m) const {
  if (m == 0 || (m & ~full_mask()) != 0) return std::nullopt;
  // The root of the subtree is the unique edge below all others.
  EdgeId r = -1;
  for (EdgeId e = 0; e < edge_count(); ++e) {
    if (!has(m, e)) continue;
    if (r < 0 || above(r, e)) r = e;
  }
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (has(m, e) && e != r && !above(e, r)) return std::nullopt;

  std::vector<std::string> names;
  std::unordered_map<EdgeId, EdgeId> local;
  std::vector<NamedVertex> verts;
  bool ok = true;
  std::function<void(VertexId, std::vector<EdgeId>&)> collect =
      [&](VertexId v, std::vector<EdgeId>& frontier) {
        for (EdgeId in : vertices_[v].inputs) {
          if (has(m, in)) {
            frontier.push_back(in);
          } else if (producer_[in] < 0) {
            ok = false;
          } else {
            collect(producer_[in], frontier);
          }
        }
      };
  std::vector<EdgeId> stack{r};
  while (!stack.empty() && ok) {
    EdgeId e = stack.back();
    stack.pop_back();
    names.push_back(names_[e]);
    bool anything_above = false;
    for (EdgeId f = 0; f < edge_count() && !anything_above; ++f)
      anything_above = has(m, f) && above(f, e);
    if (!anything_above) continue;
    std::vector<EdgeId> frontier;
    collect(producer_[e], frontier);
    NamedVertex nv;
    nv.output = names_[e];
    for (EdgeId f : frontier) nv.inputs.push_back(names_[f]);
    verts.push_back(std::move(nv));
    for (auto it = frontier.rbegin(); it != frontier.rend(); ++it)
      stack.push_back(*it);
  }
  if (!ok) return std::nullopt;
  return Tree::from_named(names, verts, names_[r]);
}

bool Tree::operator==(const Tree& other) const {
  if (edge_count() != other.edge_count() ||
      vertex_count() != other.vertex_count() ||
      name(root_) != other.name(other.root_))
    return false;
  auto signature = [](const Tree& t) {
    std::vector<std::string> sig;
    for (const auto& v : t.vertices()) {
      std::vector<std::string> ins;
      for (EdgeId e : v.inputs) ins.push_back(t.name(e));
      std::sort(ins.begin(), ins.end());
      std::string s = t.name(v.output) + "<-";
      for (const auto& i : ins) s += i + ",";
      sig.push_back(std::move(s));
    }
    std::vector<std::string> es = t.names();
    std::sort(es.begin(), es.end());
    std::sort(sig.begin(), sig.end());
    sig.insert(sig.end(), es.begin(), es.end());
    return sig;
  };
  return signature(*this) == signature(other);
}

// ---------------------------------------------------------------------------

Tree eta_tree(std::string name) { return Tree::eta(std::move(name)); }

Tree corolla(int n) {
  if (n < 0) throw std::invalid_argument("corolla arity must be >= 0");
  std::vector<std::string> edges;
  std::string root;
  if (n == 2) {
    edges = {"a", "b", "c"};
    root = "c";
  } else {
    for (int i = 1; i <= n; ++i) edges.push_back("l_" + std::to_string(i));
    edges.push_back("r");
    root = "r";
  }
  NamedVertex v{std::vector<std::string>(edges.begin(), edges.end() - 1), root};
  return Tree::from_named(edges, {v}, root);
}

Tree linear(int n) {
  if (n < 0) throw std::invalid_argument("linear tree length must be >= 0");
  std::vector<std::string> edges;
  for (int i = 0; i <= n; ++i) edges.push_back(std::to_string(i));
  std::vector<NamedVertex> vs;
  for (int i = 0; i < n; ++i) vs.push_back({{edges[i]}, edges[i + 1]});
  return Tree::from_named(edges, vs, edges.back());
}

Tree extended_corolla(int n, int k) {
  if (n < 0 || k < 1)
    throw std::invalid_argument("extended corolla needs n >= 0 and k >= 1");
  std::vector<std::string> edges;
  for (int i = 0; i <= n; ++i) edges.push_back("a_" + std::to_string(i));
  for (int j = 1; j <= k; ++j) edges.push_back("b_" + std::to_string(j));
  edges.push_back("c");
  std::vector<NamedVertex> vs;
  for (int i = 0; i < n; ++i)
    vs.push_back({{"a_" + std::to_string(i)}, "a_" + std::to_string(i + 1)});
  NamedVertex root{{"a_" + std::to_string(n)}, "c"};
  for (int j = 1; j <= k; ++j) root.inputs.push_back("b_" + std::to_string(j));
  vs.push_back(root);
  return Tree::from_named(edges, vs, "c");
}

namespace {

std::vector<NamedVertex> named_vertices(const Tree& t) {
  std::vector<NamedVertex> out;
  for (const auto& v : t.vertices()) {
    NamedVertex nv;
    for (EdgeId e : v.inputs) nv.inputs.push_back(t.name(e));
    nv.output = t.name(v.output);
    out.push_back(std::move(nv));
  }
  return out;
}

}  // namespace

Tree graft(const Tree& lower, std::string_view leaf, const Tree& upper) {
  auto l = lower.find(leaf);
  if (!l || !lower.is_leaf(*l))
    throw std::invalid_argument("graft: '" + std::string(leaf) +
                                "' is not a leaf of the lower tree");
  const std::string& up_root = upper.name(upper.root());
  std::vector<std::string> edges = lower.names();
  for (EdgeId e = 0; e < upper.edge_count(); ++e) {
    if (e == upper.root()) continue;
    if (lower.find(upper.name(e)))
      throw std::invalid_argument("graft: edge name collision on '" +
                                  upper.name(e) + "'");
    edges.push_back(upper.name(e));
  }
  auto vs = named_vertices(lower);
  for (auto nv : named_vertices(upper)) {
    for (auto& in : nv.inputs)
      if (in == up_root) in = std::string(leaf);
    if (nv.output == up_root) nv.output = std::string(leaf);
    vs.push_back(std::move(nv));
  }
  return Tree::from_named(edges, vs, lower.name(lower.root()));
}

Tree rename(const Tree& t,
            const std::unordered_map<std::string, std::string>& renaming) {
  auto map = [&](const std::string& s) {
    auto it = renaming.find(s);
    return it == renaming.end() ? s : it->second;
  };
  std::vector<std::string> edges;
  for (const auto& n : t.names()) edges.push_back(map(n));
  auto vs = named_vertices(t);
  for (auto& v : vs) {
    for (auto& in : v.inputs) in = map(in);
    v.output = map(v.output);
  }
  return Tree::from_named(edges, vs, map(t.name(t.root())));
}

// ---------------------------------------------------------------------------

std::string FaceDescriptor::label(const Tree& ambient) const {
  switch (kind) {
    case FaceKind::Inner: return "inner(" + ambient.name(edge) + ")";
    case FaceKind::Colour: return "colour(" + ambient.name(edge) + ")";
    case FaceKind::Top:
      return "top(" + ambient.name(ambient.vertex(vertex).output) + ")";
    case FaceKind::Root: return "root";
  }
  return "?";
}

namespace {

Tree rebuild(const Tree& t, const std::vector<bool>& keep_edge,
             std::vector<NamedVertex> vs, EdgeId root) {
  std::vector<std::string> edges;
  for (EdgeId e : t.planar_edges())
    if (keep_edge[e]) edges.push_back(t.name(e));
  return Tree::from_named(edges, vs, t.name(root));
}

EdgeMask mask_from(const Tree& t, const std::vector<bool>& keep) {
  if (t.edge_count() > kMaxMaskEdges) return 0;
  EdgeMask m = 0;
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    if (keep[e]) m |= bit(e);
  return m;
}

FaceDescriptor inner_face(const Tree& t, EdgeId e) {
  VertexId upper = t.producer(e), lower = t.consumer(e);
  std::vector<bool> keep(t.edge_count(), true);
  keep[e] = false;
  std::vector<NamedVertex> vs;
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    if (v == upper) continue;
    NamedVertex nv;
    nv.output = t.name(t.vertex(v).output);
    for (EdgeId in : t.vertex(v).inputs) {
      if (v == lower && in == e) {
        for (EdgeId up : t.vertex(upper).inputs) nv.inputs.push_back(t.name(up));
      } else {
        nv.inputs.push_back(t.name(in));
      }
    }
    vs.push_back(std::move(nv));
  }
  return {FaceKind::Inner, e, -1, rebuild(t, keep, vs, t.root()),
          mask_from(t, keep)};
}

FaceDescriptor top_face(const Tree& t, VertexId w) {
  std::vector<bool> keep(t.edge_count(), true);
  for (EdgeId in : t.vertex(w).inputs) keep[in] = false;
  std::vector<NamedVertex> vs;
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    if (v == w) continue;
    NamedVertex nv;
    nv.output = t.name(t.vertex(v).output);
    for (EdgeId in : t.vertex(v).inputs) nv.inputs.push_back(t.name(in));
    vs.push_back(std::move(nv));
  }
  return {FaceKind::Top, -1, w, rebuild(t, keep, vs, t.root()),
          mask_from(t, keep)};
}

FaceDescriptor root_face(const Tree& t, VertexId u) {
  std::vector<bool> keep(t.edge_count(), true);
  keep[t.root()] = false;
  EdgeId new_root = -1;
  for (EdgeId in : t.vertex(u).inputs) {
    if (t.is_inner(in)) new_root = in;
    else keep[in] = false;
  }
  std::vector<NamedVertex> vs;
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    if (v == u) continue;
    NamedVertex nv;
    nv.output = t.name(t.vertex(v).output);
    for (EdgeId in : t.vertex(v).inputs) nv.inputs.push_back(t.name(in));
    vs.push_back(std::move(nv));
  }
  return {FaceKind::Root, -1, u, rebuild(t, keep, vs, new_root),
          mask_from(t, keep)};
}

}  // namespace

std::vector<FaceDescriptor> faces(const Tree& t) {
  if (t.is_eta()) throw std::invalid_argument("eta has no faces");
  std::vector<FaceDescriptor> out;
  if (t.is_corolla()) {
    for (EdgeId e : t.planar_edges()) {
      std::vector<bool> keep(t.edge_count(), false);
      keep[e] = true;
      out.push_back({FaceKind::Colour, e, -1, Tree::eta(t.name(e)),
                     mask_from(t, keep)});
    }
    return out;
  }
  for (EdgeId e : t.planar_edges())
    if (t.is_inner(e)) out.push_back(inner_face(t, e));
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    if (t.inner_edges_at(v) != 1) continue;
    if (v == t.root_vertex()) out.push_back(root_face(t, v));
    else out.push_back(top_face(t, v));
  }
  return out;
}

HornSpec horn(const Tree& t, const FaceDescriptor& omitted) {
  for (const auto& f : faces(t)) {
    if (f.kind == omitted.kind && f.edge == omitted.edge &&
        f.vertex == omitted.vertex)
      return {t, f};
  }
  throw std::invalid_argument("omitted face is not a face of the tree");
}

HornType classify_horn(const HornSpec& h) {
  if (h.tree.has_nullary_vertex())
    throw std::domain_error(
        "horns of trees with nullary vertices are outside the horn taxonomy");
  switch (h.omitted.kind) {
    case FaceKind::Inner: return HornType::Inner;
    case FaceKind::Top: return HornType::Leaf;
    case FaceKind::Root: return HornType::Root;
    case FaceKind::Colour:
      return h.omitted.edge == h.tree.root() ? HornType::Leaf : HornType::Root;
  }
  return HornType::Inner;
}

bool has_root_horn(const Tree& t) {
  if (t.is_eta() || t.has_nullary_vertex()) return false;
  if (t.is_corolla()) return true;
  return t.inner_edges_at(t.root_vertex()) == 1;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> edge_canon(const Tree& t) {
  std::vector<std::string> canon(t.edge_count());
  auto order = t.planar_edges();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    EdgeId e = *it;
    VertexId v = t.producer(e);
    if (v < 0) {
      canon[e] = "|";
      continue;
    }
    std::vector<std::string> kids;
    for (EdgeId in : t.vertex(v).inputs) kids.push_back(canon[in]);
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    canon[e] = s + ")";
  }
  return canon;
}

using PartialMap = std::vector<std::pair<EdgeId, EdgeId>>;

std::vector<PartialMap> match(const Tree& s, const Tree& t,
                              const std::vector<std::string>& cs,
                              const std::vector<std::string>& ct, EdgeId es,
                              EdgeId et) {
  VertexId vs = s.producer(es), vt = t.producer(et);
  if (vs < 0) return {PartialMap{{es, et}}};
  const auto& a = s.vertex(vs).inputs;
  const auto& b = t.vertex(vt).inputs;
  std::vector<PartialMap> result;
  std::vector<int> assign(a.size(), -1);
  std::vector<bool> used(b.size(), false);
  std::function<void(size_t)> go = [&](size_t i) {
    if (i == a.size()) {
      std::vector<PartialMap> acc{PartialMap{{es, et}}};
      for (size_t k = 0; k < a.size(); ++k) {
        auto sub = match(s, t, cs, ct, a[k], b[assign[k]]);
        std::vector<PartialMap> next;
        for (const auto& x : acc)
          for (const auto& y : sub) {
            PartialMap z = x;
            z.insert(z.end(), y.begin(), y.end());
            next.push_back(std::move(z));
          }
        acc = std::move(next);
      }
      result.insert(result.end(), acc.begin(), acc.end());
      return;
    }
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j] || cs[a[i]] != ct[b[j]]) continue;
      used[j] = true;
      assign[i] = static_cast<int>(j);
      go(i + 1);
      used[j] = false;
    }
  };
  go(0);
  return result;
}

}  // namespace

std::string canonical_form(const Tree& t) { return edge_canon(t)[t.root()]; }

bool isomorphic(const Tree& s, const Tree& t) {
  return canonical_form(s) == canonical_form(t);
}

std::vector<std::vector<EdgeId>> isomorphisms(const Tree& s, const Tree& t) {
  auto cs = edge_canon(s);
  auto ct = edge_canon(t);
  if (cs[s.root()] != ct[t.root()]) return {};
  std::vector<std::vector<EdgeId>> out;
  for (const auto& pm : match(s, t, cs, ct, s.root(), t.root())) {
    std::vector<EdgeId> f(s.edge_count(), -1);
    for (auto [a, b] : pm) f[a] = b;
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<EdgeId>> automorphisms(const Tree& t) {
  return isomorphisms(t, t);
}

namespace {

// Relabels edges e_0, e_1, ... in a planar order where inputs are sorted by
// canonical subtree string, so isomorphic shapes get identical names.
Tree canonical_relabel(const Tree& t) {
  auto canon = edge_canon(t);
  std::vector<std::vector<EdgeId>> sorted_inputs(t.vertex_count());
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    auto ins = t.vertex(v).inputs;
    std::stable_sort(ins.begin(), ins.end(), [&](EdgeId x, EdgeId y) {
      return canon[x] < canon[y];
    });
    sorted_inputs[v] = ins;
  }
  std::vector<EdgeId> order;
  std::vector<EdgeId> stack{t.root()};
  while (!stack.empty()) {
    EdgeId e = stack.back();
    stack.pop_back();
    order.push_back(e);
    if (VertexId v = t.producer(e); v >= 0)
      for (auto it = sorted_inputs[v].rbegin(); it != sorted_inputs[v].rend(); ++it)
        stack.push_back(*it);
  }
  std::vector<std::string> names(t.edge_count());
  for (size_t i = 0; i < order.size(); ++i)
    names[order[i]] = "e_" + std::to_string(i);
  std::vector<std::string> edges;
  for (EdgeId e : order) edges.push_back(names[e]);
  std::vector<NamedVertex> vs;
  for (EdgeId e : order) {
    VertexId v = t.producer(e);
    if (v < 0) continue;
    NamedVertex nv;
    nv.output = names[e];
    for (EdgeId in : sorted_inputs[v]) nv.inputs.push_back(names[in]);
    vs.push_back(std::move(nv));
  }
  return Tree::from_named(edges, vs, names[t.root()]);
}

}  // namespace

std::vector<Tree> enumerate_shapes(int max_vertices, int max_arity) {
  std::map<std::string, Tree> seen;  // keyed by (vertex count, canon)
  auto key = [](const Tree& t) {
    std::string k = std::to_string(t.vertex_count());
    k = std::string(4 - std::min<size_t>(4, k.size()), '0') + k;
    return k + canonical_form(t);
  };
  std::vector<Tree> frontier;
  if (max_vertices >= 1) {
    for (int k = 1; k <= max_arity; ++k) {
      Tree c = canonical_relabel(corolla(k));
      if (seen.emplace(key(c), c).second) frontier.push_back(c);
    }
  }
  for (int size = 2; size <= max_vertices; ++size) {
    std::vector<Tree> next;
    for (const Tree& t : frontier) {
      for (EdgeId leaf : t.leaves()) {
        for (int k = 1; k <= max_arity; ++k) {
          Tree up = corolla(k);
          std::unordered_map<std::string, std::string> ren;
          for (const auto& n : up.names()) ren[n] = "#" + n;
          up = rename(up, ren);
          ren.clear();
          ren[up.name(up.root())] = t.name(leaf);
          up = rename(up, ren);
          Tree g = canonical_relabel(graft(t, t.name(leaf), up));
          if (seen.emplace(key(g), g).second) next.push_back(g);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Tree> out;
  for (auto& [k, t] : seen) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<EdgeMask> initial_segment_masks(const Tree& t) {
  std::set<EdgeMask> out;
  std::function<void(EdgeMask, std::vector<EdgeId>)> go =
      [&](EdgeMask m, std::vector<EdgeId> open) {
        if (open.empty()) {
          out.insert(m);
          return;
        }
        EdgeId e = open.back();
        open.pop_back();
        go(m, open);
        if (VertexId v = t.producer(e); v >= 0) {
          EdgeMask m2 = m;
          auto open2 = open;
          for (EdgeId in : t.vertex(v).inputs) {
            m2 |= bit(in);
            open2.push_back(in);
          }
          if (m2 != m) go(m2, open2);
        }
      };
  go(bit(t.root()), {t.root()});
  return {out.begin(), out.end()};
}

std::vector<EdgeMask> initial_subtree_masks(const Tree& t, int codim) {
  if (codim < 0) throw std::invalid_argument("codimension must be >= 0");
  std::set<EdgeMask> out;
  for (EdgeMask seg : initial_segment_masks(t)) {
    auto sub = t.subtree(seg);
    if (!sub) continue;
    std::vector<EdgeId> inner;
    for (EdgeId e : sub->inner_edges()) inner.push_back(t.edge(sub->name(e)));
    if (static_cast<int>(inner.size()) < codim) continue;
    std::vector<bool> pick(inner.size(), false);
    std::fill(pick.begin(), pick.begin() + codim, true);
    do {
      EdgeMask m = seg;
      for (size_t i = 0; i < inner.size(); ++i)
        if (pick[i]) m &= ~bit(inner[i]);
      out.insert(m);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return {out.begin(), out.end()};
}

std::vector<Tree> initial_subtrees(const Tree& t, int codim) {
  std::vector<Tree> out;
  for (EdgeMask m : initial_subtree_masks(t, codim)) out.push_back(*t.subtree(m));
  return out;
}

std::vector<EdgeId> stem_edges(const Tree& t) {
  std::vector<EdgeId> chain{t.root()};
  EdgeId e = t.root();
  while (true) {
    VertexId v = t.producer(e);
    if (v < 0 || t.vertex(v).inputs.size() != 1) break;
    e = t.vertex(v).inputs[0];
    chain.push_back(e);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

EdgeMask upper_mask(const Tree& t, EdgeId e) {
  EdgeMask m = bit(e);
  for (EdgeId f = 0; f < t.edge_count(); ++f)
    if (t.above(f, e)) m |= bit(f);
  return m;
}

Tree stem(const Tree& t) {
  EdgeMask m = 0;
  for (EdgeId e : stem_edges(t)) m |= bit(e);
  return *t.subtree(m);
}

Tree tree_top(const Tree& t) {
  return *t.subtree(upper_mask(t, stem_edges(t).front()));
}

}  // namespace dendro
