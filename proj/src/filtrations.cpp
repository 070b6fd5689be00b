#include <algorithm>
#include <bit>
#include <set>
#include <map>
#include <stdexcept>

#include "dendro/anodyne.hpp"

namespace dendro {

namespace {

std::string idx(char x, int i) { return std::string(1, x) + "_" + std::to_string(i); }

// Subsets of {0..n-1} of the given size, as sorted index lists.
std::vector<std::vector<int>> subsets(const std::vector<int>& from, int size) {
  std::vector<std::vector<int>> out;
  int n = int(from.size());
  if (size < 0 || size > n) return out;
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    if (std::popcount(m) != size) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1U) s.push_back(from[i]);
    out.push_back(s);
  }
  return out;
}

std::vector<int> range(int from, int to) {
  std::vector<int> v;
  for (int i = from; i <= to; ++i) v.push_back(i);
  return v;
}

std::vector<int> without(std::vector<int> v, const std::vector<int>& drop) {
  std::erase_if(v, [&](int x) { return std::count(drop.begin(), drop.end(), x) > 0; });
  return v;
}

std::vector<EdgeMask> faces_except(const Ambient& amb, EdgeMask cell, EdgeMask omitted) {
  std::vector<EdgeMask> out;
  for (EdgeMask f : amb.faces_of(cell))
    if (f != omitted) out.push_back(f);
  return out;
}

EdgeMask global(const Ambient& amb, const Tree& t, EdgeMask local) {
  return amb.mask_of(t.names_of(local));
}

}  // namespace

// ---------------------------------------------------------------------------

Certificate pushout_product_certificate(int n) {
  if (n < 0 || n > 3) throw std::out_of_range("pushout product filtration needs 0 <= n <= 3");
  Certificate c;
  c.name = "pushout product of the binary root horn with the boundary of L_" + std::to_string(n);
  c.ambient_spec = AmbientSpec{true, corolla(2), n};
  c.ambient = make_ambient(c.ambient_spec);
  c.claimed = AnodyneClass::BinaryExtendedLeft;
  const Ambient& amb = *c.ambient;
  c.start = c2_base(c.ambient, n).maximal_cells();

  auto cell = [&](const std::vector<int>& as, const std::vector<int>& bs,
                  const std::vector<int>& cs) {
    std::vector<std::string> names;
    for (int i : as) names.push_back(idx('a', i));
    for (int i : bs) names.push_back(idx('b', i));
    for (int i : cs) names.push_back(idx('c', i));
    return amb.mask_of(names);
  };
  auto edge = [&](char x, int i) { return amb.mask_of({idx(x, i)}); };
  auto step = [&](std::string label) -> Step& {
    c.steps.push_back(Step{});
    c.steps.back().label = std::move(label);
    return c.steps.back();
  };

  if (n == 0) {
    EdgeMask t = cell({0}, {0}, {0});
    step("binary root horn").horns.push_back({t, edge('b', 0)});
    return c;
  }

  const std::vector<int> all = range(0, n);
  {
    EdgeMask t0 = c2_shuffle(amb, n, 0);
    step("shuffle 0").horns.push_back({t0, t0 & ~edge('c', 0)});
  }
  for (int k = 1; k < n; ++k) {
    const std::vector<int> upto = range(0, k);
    for (int l = 1; l <= k + 2; ++l) {
      Step& st = step("shuffle " + std::to_string(k) + " size " + std::to_string(l));
      std::vector<EdgeMask> cells;
      for (int q = 1; q <= k + 1; ++q)
        for (const auto& js : subsets(upto, q)) {
          int p = k + l - q;
          if (p < 1) continue;
          for (const auto& is : subsets(upto, p)) {
            auto rest = without(upto, js);
            if (!without(rest, is).empty()) continue;
            cells.push_back(cell(js, is, range(k, n)));
          }
        }
      std::sort(cells.begin(), cells.end(),
                [&](EdgeMask x, EdgeMask y) { return amb.cell_less(x, y); });
      for (EdgeMask u : cells) st.horns.push_back({u, u & ~edge('c', k)});
    }
  }

  // Last shuffle: sub-shuffles missing some b's, ordered by how many b's
  // and a's they carry.
  for (int p = 1; p <= n - 1; ++p)
    for (int m = 1; m <= p; ++m) {
      Step& st = step("last shuffle b-count " + std::to_string(p) + " a-defect " +
                      std::to_string(p - m));
      for (const auto& bs : subsets(all, p)) {
        int top = bs.back();
        std::vector<int> lower(bs.begin(), bs.end() - 1);
        for (const auto& is : subsets(lower, p - m)) {
          EdgeMask u = cell(without(all, is), bs, {n});
          st.horns.push_back({u, u & ~edge('a', top)});
        }
      }
    }
  for (int m = 1; m <= n - 1; ++m) {
    Step& st = step("last shuffle b-count " + std::to_string(n) + " a-count " +
                    std::to_string(m + 1));
    for (int i = 0; i < n; ++i) {
      auto bs = without(all, {i});
      auto free = without(all, {i, n});
      for (const auto& s : subsets(free, m - 1)) {
        std::vector<int> js = s;
        js.push_back(i);
        js.push_back(n);
        std::sort(js.begin(), js.end());
        EdgeMask u = cell(js, bs, {n});
        st.horns.push_back({u, u & ~edge('a', n)});
      }
    }
    for (const auto& s : subsets(range(1, n - 1), m - 1)) {
      std::vector<int> js = s;
      js.insert(js.begin(), 0);
      js.push_back(n);
      EdgeMask u = cell(js, range(0, n - 1), {n});
      st.horns.push_back({u, u & ~edge('a', 0)});
    }
  }
  EdgeMask tn = c2_shuffle(amb, n, n);
  {
    Step& st = step("last shuffle b-faces");
    for (int i = 0; i < n; ++i) {
      EdgeMask u = tn & ~edge('b', i);
      st.horns.push_back({u, u & ~edge('a', n)});
    }
  }
  {
    EdgeMask w = cell({0}, all, {n});
    step("binary root horn").horns.push_back({w, cell({}, all, {})});
  }
  for (int q = 2; q <= n; ++q) {
    Step& st = step("a-chains of length " + std::to_string(q));
    for (const auto& s : subsets(range(1, n), q - 1)) {
      std::vector<int> js = s;
      js.insert(js.begin(), 0);
      EdgeMask u = cell(js, all, {n});
      st.horns.push_back({u, u & ~edge('a', 0)});
    }
  }
  {
    EdgeMask u = tn & ~edge('a', 0);
    step("last shuffle a_0 face").horns.push_back({u, u & ~edge('b', n)});
  }
  step("last shuffle").horns.push_back({tn, tn & ~edge('b', n)});
  return c;
}

// ---------------------------------------------------------------------------

Certificate extended_corolla_certificate(int n, int k) {
  if (n < 0 || n > 3 || k < 1 || k > 3)
    throw std::out_of_range("extended corolla filtration needs 0 <= n <= 3, 1 <= k <= 3");
  std::vector<std::string> edges;
  for (int i = 0; i <= n; ++i) edges.push_back(idx('a', i));
  for (int j = 1; j <= k; ++j) edges.push_back(idx('b', j));
  edges.push_back("d");
  edges.push_back("c");
  std::vector<NamedVertex> vs;
  for (int i = 0; i < n; ++i) vs.push_back({{idx('a', i)}, idx('a', i + 1)});
  NamedVertex split{{}, "d"};
  for (int j = 1; j <= k; ++j) split.inputs.push_back(idx('b', j));
  vs.push_back(split);
  vs.push_back({{idx('a', n), "d"}, "c"});
  Tree t = Tree::from_named(edges, vs, "c");

  Certificate c;
  c.name = "root horn of EC_{" + std::to_string(n) + "," + std::to_string(k) +
           "} through a split root vertex";
  c.ambient_spec = AmbientSpec{false, t, 0};
  c.ambient = make_ambient(c.ambient_spec);
  c.claimed = AnodyneClass::BinaryExtendedLeft;
  const Ambient& amb = *c.ambient;

  EdgeMask full = amb.full_mask();
  EdgeMask d = amb.mask_of({"d"});
  EdgeMask bs = 0, as = 0;
  for (int j = 1; j <= k; ++j) bs |= amb.mask_of({idx('b', j)});
  for (int i = 0; i <= n; ++i) as |= amb.mask_of({idx('a', i)});
  EdgeMask ec = full & ~d;
  Tree ect = amb.tree(ec);
  c.start = faces_except(amb, ec, global(amb, ect, root_horn_face(ect).mask));

  auto step = [&](std::string label) -> Step& {
    c.steps.push_back(Step{});
    c.steps.back().label = std::move(label);
    return c.steps.back();
  };
  step("upper corolla").horns.push_back({bs | d, d});
  std::vector<int> chain = range(0, n);
  for (int l = 0; l < n; ++l) {
    Step& st = step("chains of length " + std::to_string(l + 1));
    for (const auto& s : subsets(chain, l + 1)) {
      EdgeMask u = bs | d | amb.mask_of({"c"});
      for (int i : s) u |= amb.mask_of({idx('a', i)});
      st.horns.push_back({u, u & ~bs});
    }
  }
  EdgeMask v = as | d | amb.mask_of({"c"});
  step("binary root horn").horns.push_back({v, as});
  step("split tree").horns.push_back({full, ec});
  return c;
}

// ---------------------------------------------------------------------------

namespace {

struct Codim {
  EdgeMask v_mask = 0;  // the maximal initial segment with the inputs of v as leaves
  std::vector<EdgeId> d;
  int v_vertices = 0;
  int n_max = 0;
  std::map<EdgeMask, std::pair<int, int>> shape;  // (n, k) of every (n,k)-subtree
};

Codim codim_data(const Tree& t, VertexId v) {
  if (v < 0 || v >= t.vertex_count()) throw std::out_of_range("vertex out of range");
  Codim cd;
  cd.d = t.vertex(v).inputs;
  EdgeMask above = 0;
  for (EdgeId e : cd.d) above |= upper_mask(t, e) & ~bit(e);
  cd.v_mask = t.full_mask() & ~above;
  cd.v_vertices = t.subtree(cd.v_mask)->vertex_count();
  cd.n_max = t.vertex_count() - cd.v_vertices + 1;
  EdgeMask d_mask = 0;
  for (EdgeId e : cd.d) d_mask |= bit(e);
  for (EdgeMask s0 : initial_segment_masks(t)) {
    if ((s0 & cd.v_mask) != cd.v_mask) continue;
    Tree seg = *t.subtree(s0);
    std::vector<EdgeId> contractible;
    for (EdgeId le : seg.inner_edges()) {
      EdgeId e = t.edge(seg.name(le));
      if (!has(cd.v_mask, e) || has(d_mask, e)) contractible.push_back(e);
    }
    for (std::uint32_t m = 0; m < (1U << contractible.size()); ++m) {
      EdgeMask s = s0;
      for (std::size_t i = 0; i < contractible.size(); ++i)
        if (m >> i & 1U) s &= ~bit(contractible[i]);
      int verts = t.subtree(s)->vertex_count();
      cd.shape.emplace(s, std::pair{verts - cd.v_vertices + 1, std::popcount(m)});
    }
  }
  return cd;
}

// Index into d of the minimal input of v that is inner in s, or -1.
int chosen_input(const Tree& t, const Codim& cd, EdgeMask s) {
  for (std::size_t i = 0; i < cd.d.size(); ++i) {
    EdgeId e = cd.d[i];
    if (has(s, e) && (s & upper_mask(t, e) & ~bit(e))) return int(i);
  }
  return -1;
}

}  // namespace

std::vector<EdgeMask> codimension_base(const Ambient& amb, const Tree& t, VertexId v) {
  Codim cd = codim_data(t, v);
  std::vector<EdgeMask> local{cd.v_mask};
  if (cd.v_vertices >= 2) {
    Tree vt = *t.subtree(cd.v_mask);
    for (EdgeId le : vt.inner_edges()) local.push_back(t.full_mask() & ~bit(t.edge(vt.name(le))));
    for (const auto& f : faces(t)) {
      if (f.kind != FaceKind::Top && f.kind != FaceKind::Root) continue;
      if (f.vertex == v) continue;
      if (!has(cd.v_mask, t.vertex(f.vertex).output)) continue;
      if (std::count(cd.d.begin(), cd.d.end(), t.vertex(f.vertex).output)) continue;
      local.push_back(f.mask);
    }
  } else {
    for (EdgeId e : cd.d) local.push_back(upper_mask(t, e));
  }
  std::vector<EdgeMask> out;
  for (EdgeMask m : local) out.push_back(global(amb, t, m));
  return out;
}

Certificate codimension_certificate(const Tree& t, VertexId v) {
  Codim cd = codim_data(t, v);
  Certificate c;
  c.name = "codimension filtration at the vertex with output " + t.name(t.vertex(v).output);
  c.ambient_spec = AmbientSpec{false, t, 0};
  c.ambient = make_ambient(c.ambient_spec);
  c.claimed = AnodyneClass::Inner;
  const Ambient& amb = *c.ambient;
  c.start = codimension_base(amb, t, v);

  std::map<std::pair<int, int>, std::vector<EdgeMask>> groups;
  for (const auto& [s, nk] : cd.shape) groups[nk].push_back(s);
  std::map<std::pair<int, int>, std::set<EdgeMask>> chosen;
  std::map<EdgeMask, int> choice;
  for (int n = cd.n_max; n >= 2; --n)
    for (int k = 0; k <= cd.n_max - n; ++k)
      for (EdgeMask s : groups[{n, k}]) {
        if (chosen[{n, k}].count(s)) continue;
        int i = chosen_input(t, cd, s);
        choice[s] = i;
        if (i >= 0) chosen[{n - 1, k + 1}].insert(s & ~bit(cd.d[i]));
      }

  auto order = [&](std::vector<EdgeMask> v) {
    std::sort(v.begin(), v.end(), [&](EdgeMask x, EdgeMask y) {
      return amb.cell_less(global(amb, t, x), global(amb, t, y));
    });
    return v;
  };
  for (int n = 2; n <= cd.n_max; ++n)
    for (int k = 0; k <= cd.n_max - n; ++k) {
      Step st;
      st.label = "subtrees (" + std::to_string(n) + "," + std::to_string(k) + ")";
      for (EdgeMask s : order(groups[{n, k}])) {
        if (chosen[{n, k}].count(s)) continue;
        int i = choice.count(s) ? choice[s] : -1;
        EdgeMask omit = i >= 0 ? s & ~bit(cd.d[i]) : 0;
        st.horns.push_back({global(amb, t, s), global(amb, t, omit)});
      }
      if (!st.horns.empty()) c.steps.push_back(std::move(st));
    }
  return c;
}

// ---------------------------------------------------------------------------

Certificate root_horn_certificate(const Tree& u) {
  if (!has_root_horn(u)) throw std::invalid_argument("tree has no root horn");
  FaceDescriptor rf = root_horn_face(u);
  if (extended_corolla_shape(u) || u.is_corolla()) {
    Certificate c;
    c.name = "extended corolla root horn";
    c.ambient_spec = AmbientSpec{false, u, 0};
    c.ambient = make_ambient(c.ambient_spec);
    c.claimed = AnodyneClass::ExtendedLeft;
    EdgeMask full = c.ambient->full_mask();
    EdgeMask omit = global(*c.ambient, u, rf.mask);
    c.start = faces_except(*c.ambient, full, omit);
    Step st;
    st.label = "root horn";
    st.horns = {{full, omit}};
    c.steps = {st};
    return c;
  }

  // u = the root corolla with leaves r, b's and root c, grafted with T on r.
  VertexId uv = u.root_vertex();
  EdgeId r = -1;
  for (EdgeId in : u.vertex(uv).inputs)
    if (!u.is_leaf(in)) r = in;
  Tree upper = *u.subtree(upper_mask(u, r));
  std::vector<std::string> stem;  // a_0 .. a_l
  for (EdgeId e : stem_edges(upper)) stem.push_back(upper.name(e));
  int top = tree_top(upper).vertex_count();
  if (top > 3) throw std::out_of_range("tree top has more than 3 vertices");
  int l = int(stem.size()) - 1;

  std::string fresh = "a'";
  while (u.find(fresh)) fresh += "'";
  std::vector<std::string> wedges = u.names();
  wedges.push_back(fresh);
  std::vector<NamedVertex> wvs;
  for (const auto& vx : u.vertices()) {
    NamedVertex nv{{}, u.name(vx.output)};
    for (EdgeId in : vx.inputs) nv.inputs.push_back(u.name(in));
    if (nv.output == stem[0]) nv.output = fresh;
    wvs.push_back(nv);
  }
  wvs.push_back({{fresh}, stem[0]});
  Tree w = Tree::from_named(wedges, wvs, u.name(u.root()));

  Certificate c;
  c.name = "root horn through a doubled stem edge";
  c.ambient_spec = AmbientSpec{false, w, 0};
  c.ambient = make_ambient(c.ambient_spec);
  c.claimed = AnodyneClass::ExtendedLeft;
  const Ambient& amb = *c.ambient;
  EdgeMask ucell = amb.mask_of(u.names());
  EdgeMask uroot = amb.mask_of(u.names_of(rf.mask));
  c.start = faces_except(amb, ucell, uroot);

  EdgeMask full = amb.full_mask();
  EdgeMask ap = amb.mask_of({fresh});
  VertexId vw = w.producer(w.edge(fresh));
  EdgeMask ds = 0;
  for (EdgeId e : w.vertex(vw).inputs) ds |= amb.mask_of({w.name(e)});
  EdgeMask outside = amb.mask_of({u.name(u.root())});
  for (EdgeId e : u.vertex(uv).inputs)
    if (e != r) outside |= amb.mask_of({u.name(e)});
  EdgeMask stem_all = 0;
  for (const auto& s : stem) stem_all |= amb.mask_of({s});

  auto root_face_of = [&](EdgeMask cell) { return cell & ~outside; };
  auto codim_nested = [&](EdgeMask cell) {
    Tree ct = amb.tree(cell);
    VertexId cv = ct.producer(ct.edge(fresh));
    return std::make_shared<const Certificate>(codimension_certificate(ct, cv));
  };
  auto step = [&](std::string label) -> Step& {
    c.steps.push_back(Step{});
    c.steps.back().label = std::move(label);
    return c.steps.back();
  };

  // Step 1: the faces contracting a stem edge, by number of stem edges kept.
  for (int k = 1; k <= l + 1; ++k) {
    std::vector<EdgeMask> js;
    for (const auto& j : subsets(range(0, l), k - 1)) {
      EdgeMask m = 0;
      for (int i : j) m |= amb.mask_of({stem[i]});
      js.push_back(m);
    }
    std::string tag = " with " + std::to_string(k - 1) + " stem edges";
    Step& s1 = step("upper corollas" + tag);
    for (EdgeMask j : js) {
      EdgeMask cell = ds | ap | j;
      s1.horns.push_back({cell, j == 0 ? ap : cell & ~ds});
    }
    Step& s2 = step("upper trees" + tag);
    s2.kind = Step::Kind::Pushout;
    for (EdgeMask j : js)
      if (root_face_of(full & ~(stem_all & ~j)) != (ds | ap | j))
        s2.pushouts.push_back({root_face_of(full & ~(stem_all & ~j)), nullptr});
    for (auto& a : s2.pushouts) a.proof = codim_nested(a.cell);
    Step& s3 = step("lower corollas" + tag);
    for (EdgeMask j : js) {
      EdgeMask cell = ds | ap | j | outside;
      s3.horns.push_back({cell, cell & ~ds});
    }
    Step& s4 = step("lower trees" + tag);
    s4.kind = Step::Kind::Pushout;
    for (EdgeMask j : js)
      if ((full & ~(stem_all & ~j)) != (ds | ap | j | outside))
        s4.pushouts.push_back({full & ~(stem_all & ~j), nullptr});
    for (auto& a : s4.pushouts) a.proof = codim_nested(a.cell);
  }

  // Steps 2 and 3: initial segments containing the doubled edge and their
  // inner faces away from the stem, by size.
  std::map<int, std::vector<EdgeMask>> segments;
  for (EdgeMask g : amb.cells()) {
    if ((g & (ap | stem_all | outside)) != (ap | stem_all | outside)) continue;
    int verts = amb.tree(g).vertex_count();
    if (verts >= l + 2 && verts < w.vertex_count()) segments[verts].push_back(g);
  }
  for (auto& [verts, segs] : segments) {
    std::sort(segs.begin(), segs.end(),
              [&](EdgeMask x, EdgeMask y) { return amb.cell_less(x, y); });
    Step st;
    st.label = "root horns with " + std::to_string(verts) + " vertices";
    for (EdgeMask s : segs) {
      Tree st_tree = amb.tree(s);
      FaceDescriptor f = root_horn_face(st_tree);
      if (extended_corolla_shape(st_tree)) {
        st.horns.push_back({s, global(amb, st_tree, f.mask)});
      } else {
        st.kind = Step::Kind::Pushout;
        st.pushouts.push_back(
            {s, std::make_shared<const Certificate>(root_horn_certificate(st_tree))});
      }
    }
    if (st.kind == Step::Kind::Pushout && !st.horns.empty())
      throw std::logic_error("mixed initial segment step");
    c.steps.push_back(std::move(st));
  }

  // Step 4: the root face, then the whole tree, along the doubled edge.
  EdgeMask tprime = root_face_of(full);
  step("root face").horns.push_back({tprime, tprime & ~ap});
  step("whole tree").horns.push_back({full, full & ~ap});

  Step rt;
  rt.kind = Step::Kind::Retract;
  rt.label = "retract onto the original tree";
  rt.retract_spec = AmbientSpec{false, u, 0};
  rt.retract_ambient = make_ambient(rt.retract_spec);
  EdgeMask sfull = rt.retract_ambient->full_mask();
  rt.retract_start =
      faces_except(*rt.retract_ambient, sfull, global(*rt.retract_ambient, u, rf.mask));
  rt.retract_target = {sfull};
  for (const auto& name : u.names()) {
    rt.section[name] = name;
    rt.retraction[name] = name;
  }
  rt.retraction[fresh] = stem[0];
  c.steps.push_back(std::move(rt));
  return c;
}

}  // namespace dendro
