#include "dendro/nerve.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dendro {

bool Dendrex::operator==(const Dendrex& other) const {
  if (shape != other.shape && !(*shape == *other.shape)) return false;
  const Tree& a = *shape;
  const Tree& b = *other.shape;
  for (EdgeId e = 0; e < a.edge_count(); ++e)
    if (colours[e] != other.colours[b.edge(a.name(e))]) return false;
  for (VertexId v = 0; v < a.vertex_count(); ++v) {
    VertexId w = b.producer(b.edge(a.name(a.vertex(v).output)));
    // Input orders must agree too; labels are not quotiented by the action.
    const auto& ia = a.vertex(v).inputs;
    const auto& ib = b.vertex(w).inputs;
    for (size_t k = 0; k < ia.size(); ++k)
      if (a.name(ia[k]) != b.name(ib[k])) return false;
    if (ops[v] != other.ops[w]) return false;
  }
  return true;
}

Profile vertex_profile(const Tree& t, const std::vector<Colour>& colours,
                       VertexId v) {
  Profile p;
  for (EdgeId e : t.vertex(v).inputs) p.inputs.push_back(colours[e]);
  p.output = colours[t.vertex(v).output];
  return p;
}

bool is_valid_dendrex(const Operad& p, const Dendrex& d) {
  const Tree& t = *d.shape;
  if (int(d.colours.size()) != t.edge_count() ||
      int(d.ops.size()) != t.vertex_count())
    return false;
  for (Colour c : d.colours)
    if (c < 0 || c >= p.colour_count()) return false;
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    int n = p.op_count(vertex_profile(t, d.colours, v));
    if (d.ops[v] < 0 || d.ops[v] >= n) return false;
  }
  return true;
}

std::string to_string(const Operad& p, const Dendrex& d) {
  const Tree& t = *d.shape;
  std::string s = "{";
  auto order = t.planar_edges();
  for (size_t k = 0; k < order.size(); ++k) {
    EdgeId e = order[k];
    s += (k ? "," : "") + t.name(e) + "=" + p.colour_name(d.colours[e]);
  }
  for (EdgeId e : order) {
    VertexId v = t.producer(e);
    if (v < 0) continue;
    s += "; " + t.name(e) + ":" +
         p.op_name(vertex_profile(t, d.colours, v), d.ops[v]);
  }
  return s + "}";
}

namespace {

// Vertices ordered so that every vertex comes after those above it.
std::vector<VertexId> bottom_up(const Tree& t) {
  std::vector<VertexId> order;
  auto edges = t.planar_edges();
  for (auto it = edges.rbegin(); it != edges.rend(); ++it)
    if (VertexId v = t.producer(*it); v >= 0) order.push_back(v);
  return order;
}

}  // namespace

void for_each_dendrex(const Operad& p, const TreePtr& t,
                      const std::vector<Colour>& fixed,
                      const std::function<void(const Dendrex&)>& visit) {
  const Tree& tr = *t;
  Dendrex d{t, std::vector<Colour>(tr.edge_count(), -1),
            std::vector<OpId>(tr.vertex_count(), -1)};
  auto leaves = tr.leaves();
  auto order = bottom_up(tr);
  const int nc = p.colour_count();
  std::function<void(size_t)> go_vertex = [&](size_t j) {
    if (j == order.size()) {
      visit(d);
      return;
    }
    VertexId v = order[j];
    EdgeId out = tr.vertex(v).output;
    Profile pr;
    for (EdgeId e : tr.vertex(v).inputs) pr.inputs.push_back(d.colours[e]);
    Colour lo = fixed[out] >= 0 ? fixed[out] : 0;
    Colour hi = fixed[out] >= 0 ? fixed[out] + 1 : nc;
    for (Colour c = lo; c < hi; ++c) {
      pr.output = c;
      int n = p.op_count(pr);
      d.colours[out] = c;
      for (OpId f = 0; f < n; ++f) {
        d.ops[v] = f;
        go_vertex(j + 1);
      }
    }
    d.colours[out] = -1;
    d.ops[v] = -1;
  };
  std::function<void(size_t)> go_leaf = [&](size_t k) {
    if (k == leaves.size()) {
      go_vertex(0);
      return;
    }
    EdgeId e = leaves[k];
    Colour lo = fixed[e] >= 0 ? fixed[e] : 0;
    Colour hi = fixed[e] >= 0 ? fixed[e] + 1 : nc;
    for (Colour c = lo; c < hi; ++c) {
      d.colours[e] = c;
      go_leaf(k + 1);
    }
    d.colours[e] = -1;
  };
  go_leaf(0);
}

std::vector<Dendrex> dendrices(const Operad& p, const Tree& t) {
  std::vector<Dendrex> out;
  auto tp = std::make_shared<const Tree>(t);
  for_each_dendrex(p, tp, std::vector<Colour>(t.edge_count(), -1),
                   [&](const Dendrex& d) { out.push_back(d); });
  return out;
}

long long count_dendrices(const Operad& p, const Tree& t) {
  long long n = 0;
  auto tp = std::make_shared<const Tree>(t);
  for_each_dendrex(p, tp, std::vector<Colour>(t.edge_count(), -1),
                   [&](const Dendrex&) { ++n; });
  return n;
}

// ---------------------------------------------------------------------------

RestrictionPlan::RestrictionPlan(TreePtr ambient, EdgeMask mask)
    : ambient_(std::move(ambient)) {
  const Tree& t = *ambient_;
  auto sub = t.subtree(mask);
  if (!sub) throw std::invalid_argument("edge set is not a face of the tree");
  face_ = std::make_shared<const Tree>(std::move(*sub));
  const Tree& f = *face_;
  for (EdgeId e = 0; e < f.edge_count(); ++e) edge_map_.push_back(t.edge(f.name(e)));

  std::function<int(VertexId)> build = [&](VertexId v) {
    int idx = static_cast<int>(clusters_.size());
    clusters_.push_back({v, {}});
    const auto& ins = t.vertex(v).inputs;
    for (int k = 0; k < static_cast<int>(ins.size()); ++k) {
      if (has(mask, ins[k])) continue;
      int child = build(t.producer(ins[k]));
      clusters_[idx].grafts.push_back({k, child});
    }
    return idx;
  };
  for (VertexId w = 0; w < f.vertex_count(); ++w)
    top_cluster_.push_back(build(t.producer(edge_map_[f.vertex(w).output])));
}

std::pair<Profile, OpId> RestrictionPlan::eval(const Operad& p, const Dendrex& d,
                                               int cluster) const {
  const Cluster& c = clusters_[cluster];
  Profile pr = vertex_profile(*ambient_, d.colours, c.vertex);
  OpId op = d.ops[c.vertex];
  for (auto it = c.grafts.rbegin(); it != c.grafts.rend(); ++it) {
    auto [sub_profile, sub_op] = eval(p, d, it->second);
    op = p.compose(pr, op, it->first, sub_profile, sub_op);
    pr = compose_profile(pr, it->first, sub_profile);
  }
  return {pr, op};
}

Dendrex RestrictionPlan::apply(const Operad& p, const Dendrex& d) const {
  const Tree& f = *face_;
  Dendrex out{face_, std::vector<Colour>(f.edge_count()),
              std::vector<OpId>(f.vertex_count())};
  for (EdgeId e = 0; e < f.edge_count(); ++e) out.colours[e] = d.colours[edge_map_[e]];
  for (VertexId w = 0; w < f.vertex_count(); ++w) {
    auto [pr, op] = eval(p, d, top_cluster_[w]);
    // The face vertex lists its inputs in the same planar order as the
    // cluster's frontier, so no permutation is needed.
    out.ops[w] = op;
  }
  return out;
}

Dendrex restrict_to(const Operad& p, const Dendrex& d, EdgeMask mask) {
  return RestrictionPlan(d.shape, mask).apply(p, d);
}

Dendrex face_of(const Operad& p, const Dendrex& d, const FaceDescriptor& f) {
  horn(*d.shape, f);  // validates the face
  return restrict_to(p, d, f.mask);
}

Dendrex degeneracy_of(const Operad& p, const Dendrex& d, EdgeId e,
                      const std::string& new_name) {
  const Tree& t = *d.shape;
  if (t.find(new_name))
    throw std::invalid_argument("edge name '" + new_name + "' already used");
  std::vector<std::string> names = t.names();
  names.push_back(new_name);
  std::vector<NamedVertex> vs;
  for (const auto& v : t.vertices()) {
    NamedVertex nv;
    for (EdgeId in : v.inputs) nv.inputs.push_back(t.name(in));
    nv.output = v.output == e ? new_name : t.name(v.output);
    vs.push_back(std::move(nv));
  }
  vs.push_back({{new_name}, t.name(e)});
  auto shape = std::make_shared<const Tree>(
      Tree::from_named(names, vs, t.name(t.root())));
  Dendrex out{shape, d.colours, d.ops};
  out.colours.push_back(d.colours[e]);
  out.ops.push_back(p.identity(d.colours[e]));
  return out;
}

bool is_degenerate(const Operad& p, const Dendrex& d) {
  const Tree& t = *d.shape;
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    const Vertex& vx = t.vertex(v);
    if (vx.inputs.size() != 1) continue;
    Colour c = d.colours[vx.output];
    if (d.colours[vx.inputs[0]] == c && d.ops[v] == p.identity(c)) return true;
  }
  return false;
}

Dendrex normalize(const Operad& p, const Dendrex& d) {
  const Tree& t = *d.shape;
  EdgeMask m = t.full_mask();
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    const Vertex& vx = t.vertex(v);
    if (vx.inputs.size() != 1) continue;
    Colour c = d.colours[vx.output];
    if (d.colours[vx.inputs[0]] == c && d.ops[v] == p.identity(c))
      m &= ~bit(vx.inputs[0]);
  }
  if (m == t.full_mask()) return d;
  return restrict_to(p, d, m);
}

// ---------------------------------------------------------------------------

SimplicialTable underlying_sset(const Operad& p, int max_dim) {
  if (max_dim < 0) throw std::invalid_argument("max_dim must be >= 0");
  SimplicialTable s;
  std::vector<TreePtr> shapes;
  std::vector<std::map<std::vector<int>, int>> index(max_dim + 1);
  auto key = [](const Dendrex& d) {
    std::vector<int> k = d.colours;
    k.insert(k.end(), d.ops.begin(), d.ops.end());
    return k;
  };
  for (int k = 0; k <= max_dim; ++k) {
    shapes.push_back(std::make_shared<const Tree>(linear(k)));
    s.simplices.push_back({});
    for_each_dendrex(p, shapes[k], std::vector<Colour>(k + 1, -1),
                     [&](const Dendrex& d) {
                       index[k][key(d)] = int(s.simplices[k].size());
                       s.simplices[k].push_back(d);
                     });
  }
  // linear(k) names its edges "0".."k" with ids in the same order, and its
  // vertex i maps edge i to edge i+1.
  s.face.resize(max_dim + 1);
  for (int k = 1; k <= max_dim; ++k) {
    s.face[k].assign(k + 1, {});
    for (int i = 0; i <= k; ++i) {
      RestrictionPlan plan(shapes[k], shapes[k]->full_mask() & ~bit(i));
      for (const Dendrex& x : s.simplices[k]) {
        Dendrex f = plan.apply(p, x);
        // Relabel onto linear(k-1): face edges sorted by ambient id.
        Dendrex y{shapes[k - 1], std::vector<Colour>(k), std::vector<OpId>(k - 1)};
        const Tree& ft = *f.shape;
        for (EdgeId e = 0; e < ft.edge_count(); ++e) {
          int j = plan.edge_map()[e];
          y.colours[j < i ? j : j - 1] = f.colours[e];
        }
        for (VertexId v = 0; v < ft.vertex_count(); ++v) {
          int j = plan.edge_map()[ft.vertex(v).inputs[0]];
          y.ops[j < i ? j : j - 1] = f.ops[v];
        }
        s.face[k][i].push_back(index[k - 1].at(key(y)));
      }
    }
  }
  s.degeneracy.resize(max_dim);
  for (int k = 0; k < max_dim; ++k) {
    s.degeneracy[k].assign(k + 1, {});
    for (int i = 0; i <= k; ++i) {
      for (const Dendrex& x : s.simplices[k]) {
        Dendrex y{shapes[k + 1], std::vector<Colour>(k + 2), std::vector<OpId>(k + 1)};
        for (int j = 0; j <= k + 1; ++j) y.colours[j] = x.colours[j <= i ? j : j - 1];
        for (int j = 0; j <= k; ++j) {
          if (j == i) y.ops[j] = p.identity(x.colours[i]);
          else y.ops[j] = x.ops[j < i ? j : j - 1];
        }
        s.degeneracy[k][i].push_back(index[k + 1].at(key(y)));
      }
    }
  }
  for (int k = 0; k <= max_dim; ++k) {
    int n = 0;
    for (const auto& x : s.simplices[k]) n += is_degenerate(p, x) ? 0 : 1;
    s.nondegenerate.push_back(n);
  }
  return s;
}

}  // namespace dendro
