#include "dendro/kan.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

namespace dendro {

std::string to_string(HornType t) {
  switch (t) {
    case HornType::Inner: return "inner";
    case HornType::Leaf: return "leaf";
    case HornType::Root: return "root";
  }
  return "?";
}

std::vector<FaceDescriptor> horn_faces(const HornSpec& h) {
  std::vector<FaceDescriptor> out;
  for (const auto& f : faces(h.tree))
    if (!(f.kind == h.omitted.kind && f.edge == h.omitted.edge &&
          f.vertex == h.omitted.vertex))
      out.push_back(f);
  return out;
}

std::vector<EdgeMask> tree_cells(const Tree& t) {
  const EdgeMask full = t.full_mask();
  if (t.edge_count() > 24)
    throw std::length_error("tree too large for cell enumeration");
  std::vector<EdgeMask> out;
  for (EdgeMask m = 1; m <= full; ++m)
    if (t.subtree(m)) out.push_back(m);
  return out;
}

namespace {

using Key = std::vector<int>;

void append_key(Key& k, const Dendrex& d) {
  k.insert(k.end(), d.colours.begin(), d.colours.end());
  k.insert(k.end(), d.ops.begin(), d.ops.end());
}

// Precomputed restriction data for one horn.
struct HornContext {
  TreePtr tree;
  std::vector<FaceDescriptor> included;
  std::vector<RestrictionPlan> to_face;  // tree -> face i
  // overlap[j] lists, for every i < j and every maximal common cell, the
  // plans restricting face i and face j to that cell.
  struct Overlap {
    int i;
    RestrictionPlan from_i;
    RestrictionPlan from_j;
  };
  std::vector<std::vector<Overlap>> overlap;

  explicit HornContext(const HornSpec& h)
      : tree(std::make_shared<const Tree>(h.tree)), included(horn_faces(h)) {
    const Tree& t = *tree;
    for (const auto& f : included) to_face.emplace_back(tree, f.mask);
    auto cells = tree_cells(t);
    overlap.resize(included.size());
    for (size_t j = 0; j < included.size(); ++j) {
      for (size_t i = 0; i < j; ++i) {
        EdgeMask common = included[i].mask & included[j].mask;
        std::vector<EdgeMask> inside;
        for (EdgeMask c : cells)
          if ((c & ~common) == 0) inside.push_back(c);
        for (EdgeMask c : inside) {
          bool maximal = true;
          for (EdgeMask o : inside)
            if (o != c && (c & ~o) == 0) maximal = false;
          if (!maximal) continue;
          const Tree& fi = *to_face[i].face();
          const Tree& fj = *to_face[j].face();
          auto names = t.names_of(c);
          overlap[j].push_back({int(i),
                                RestrictionPlan(to_face[i].face(), fi.mask_of(names)),
                                RestrictionPlan(to_face[j].face(), fj.mask_of(names))});
          const auto& a = *overlap[j].back().from_i.face();
          const auto& b = *overlap[j].back().from_j.face();
          if (a.names() != b.names())
            throw std::logic_error("inconsistent planar order on a common face");
        }
      }
    }
  }

  Key filler_key(const Operad& p, const Dendrex& d) const {
    Key k;
    for (const auto& plan : to_face) append_key(k, plan.apply(p, d));
    return k;
  }

  // Depth-first enumeration of compatible families.
  template <class Visit>
  void horn_maps(const Operad& p, Visit&& visit) const {
    const Tree& t = *tree;
    std::vector<Colour> colours(t.edge_count(), -1);
    std::vector<Dendrex> chosen(included.size());
    std::function<void(size_t)> go = [&](size_t j) {
      if (j == included.size()) {
        visit(chosen);
        return;
      }
      const TreePtr& ft = to_face[j].face();
      const auto& emap = to_face[j].edge_map();
      std::vector<Colour> fixed(ft->edge_count());
      for (EdgeId e = 0; e < ft->edge_count(); ++e) fixed[e] = colours[emap[e]];
      for_each_dendrex(p, ft, fixed, [&](const Dendrex& d) {
        for (const auto& ov : overlap[j]) {
          Dendrex a = ov.from_i.apply(p, chosen[ov.i]);
          Dendrex b = ov.from_j.apply(p, d);
          if (a.colours != b.colours || a.ops != b.ops) return;
        }
        for (EdgeId e = 0; e < ft->edge_count(); ++e) colours[emap[e]] = d.colours[e];
        chosen[j] = d;
        go(j + 1);
        for (EdgeId e = 0; e < ft->edge_count(); ++e) colours[emap[e]] = fixed[e];
      });
    };
    go(0);
  }
};

}  // namespace

std::vector<HornMap> enumerate_horn_maps(const Operad& p, const HornSpec& h) {
  HornContext ctx(h);
  std::vector<HornMap> out;
  ctx.horn_maps(p, [&](const std::vector<Dendrex>& fs) {
    out.push_back({h, fs});
  });
  return out;
}

std::vector<Dendrex> fillers(const Operad& p, const HornMap& m) {
  HornContext ctx(m.horn);
  if (m.faces.size() != ctx.included.size())
    throw std::invalid_argument("horn map has the wrong number of faces");
  const Tree& t = *ctx.tree;
  std::vector<Colour> fixed(t.edge_count(), -1);
  for (size_t i = 0; i < m.faces.size(); ++i) {
    const Dendrex& d = m.faces[i];
    for (EdgeId e = 0; e < d.shape->edge_count(); ++e)
      fixed[t.edge(d.shape->name(e))] = d.colours[e];
  }
  std::vector<Dendrex> out;
  for_each_dendrex(p, ctx.tree, fixed, [&](const Dendrex& d) {
    for (size_t i = 0; i < m.faces.size(); ++i)
      if (!(ctx.to_face[i].apply(p, d) == m.faces[i])) return;
    out.push_back(d);
  });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct TaskResult {
  HornType type = HornType::Inner;
  bool multi_vertex = false;
  long long horn_maps = 0;
  bool unfillable = false;
  bool non_unique = false;
  std::vector<HornWitness> witnesses;
};

HornWitness make_witness(const Operad& p, const HornSpec& h, HornType type,
                         const std::vector<Dendrex>& fs, long long count) {
  HornWitness w{h.tree, h.omitted.label(h.tree), type, {}, count};
  std::vector<Colour> col(h.tree.edge_count(), -1);
  for (const auto& d : fs)
    for (EdgeId e = 0; e < d.shape->edge_count(); ++e)
      col[h.tree.edge(d.shape->name(e))] = d.colours[e];
  for (EdgeId e : h.tree.planar_edges())
    if (col[e] >= 0) w.colours.push_back({h.tree.name(e), p.colour_name(col[e])});
  return w;
}

TaskResult check_horn(const Operad& p, const HornSpec& h) {
  TaskResult r;
  r.type = classify_horn(h);
  r.multi_vertex = h.tree.vertex_count() > 1;
  HornContext ctx(h);
  std::map<Key, long long> fill_count;
  for_each_dendrex(p, ctx.tree, std::vector<Colour>(h.tree.edge_count(), -1),
                   [&](const Dendrex& d) { ++fill_count[ctx.filler_key(p, d)]; });
  bool have_empty = false, have_multi = false;
  ctx.horn_maps(p, [&](const std::vector<Dendrex>& fs) {
    ++r.horn_maps;
    Key k;
    for (const auto& d : fs) append_key(k, d);
    auto it = fill_count.find(k);
    long long n = it == fill_count.end() ? 0 : it->second;
    if (n == 0) {
      r.unfillable = true;
      if (!have_empty) r.witnesses.push_back(make_witness(p, h, r.type, fs, 0));
      have_empty = true;
    } else if (n > 1) {
      r.non_unique = true;
      if (!have_multi) r.witnesses.push_back(make_witness(p, h, r.type, fs, n));
      have_multi = true;
    }
  });
  return r;
}

}  // namespace

KanReport kan_report(const Operad& p, const KanOptions& opts) {
  if (opts.bound < 1) throw std::invalid_argument("bound must be >= 1");
  if (opts.max_arity < 1) throw std::invalid_argument("max arity must be >= 1");
  KanReport rep;
  rep.bound = opts.bound;
  rep.max_arity = opts.max_arity;

  std::vector<HornSpec> tasks;
  for (Tree t : enumerate_shapes(opts.bound, opts.max_arity)) {
    if (t.is_corolla()) t = corolla(t.vertex(0).inputs.size());
    ++rep.trees;
    for (const auto& f : faces(t)) tasks.push_back(horn(t, f));
  }
  rep.horns = static_cast<long long>(tasks.size());

  std::vector<TaskResult> results(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < tasks.size(); k = next++)
      results[k] = check_horn(p, tasks[k]);
  };
  int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  bool multi_in_big = false, multi_any = false;
  for (const auto& r : results) {
    rep.horn_maps += r.horn_maps;
    if (r.unfillable) {
      rep.fully_kan = false;
      if (r.type != HornType::Root) rep.dendroidal_kan = false;
      if (r.type == HornType::Inner) rep.inner_kan = false;
    }
    if (r.non_unique) {
      multi_any = true;
      if (r.multi_vertex) multi_in_big = true;
    }
    for (const auto& w : r.witnesses)
      if (int(rep.witnesses.size()) < opts.max_witnesses) rep.witnesses.push_back(w);
  }
  rep.strict = rep.fully_kan && !multi_in_big;
  rep.fully_unique = rep.fully_kan && !multi_any;
  return rep;
}

}  // namespace dendro
