#include "dendro/anodyne.hpp"

#include <algorithm>
#include <variant>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace dendro {

std::string to_string(AnodyneClass c) {
  switch (c) {
    case AnodyneClass::Inner: return "inner";
    case AnodyneClass::Left: return "left";
    case AnodyneClass::BinaryExtendedLeft: return "binary-extended-left";
    case AnodyneClass::ExtendedLeft: return "extended-left";
    case AnodyneClass::Outer: return "outer";
  }
  return "?";
}

AnodyneClass parse_anodyne_class(std::string_view s) {
  for (auto c : {AnodyneClass::Inner, AnodyneClass::Left, AnodyneClass::BinaryExtendedLeft,
                 AnodyneClass::ExtendedLeft, AnodyneClass::Outer})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown anodyne class '" + std::string(s) + "'");
}

std::optional<std::pair<int, int>> extended_corolla_shape(const Tree& t) {
  if (t.is_eta()) return std::nullopt;
  const Vertex& u = t.vertex(t.root_vertex());
  if (u.inputs.empty()) return std::nullopt;
  EdgeId chain = -1;
  for (EdgeId in : u.inputs) {
    if (t.is_leaf(in)) continue;
    if (chain >= 0) return std::nullopt;
    chain = in;
  }
  int k = int(u.inputs.size()) - 1;
  if (chain < 0) return std::pair{0, k};
  int n = 0;
  for (EdgeId e = chain; !t.is_leaf(e); ++n) {
    const Vertex& w = t.vertex(t.producer(e));
    if (w.inputs.size() != 1) return std::nullopt;
    e = w.inputs[0];
  }
  return std::pair{n, k};
}

AnodyneClass generator_class(const HornSpec& h) {
  switch (classify_horn(h)) {
    case HornType::Inner: return AnodyneClass::Inner;
    case HornType::Leaf: return AnodyneClass::Left;
    case HornType::Root: break;
  }
  auto shape = extended_corolla_shape(h.tree);
  if (!shape) return AnodyneClass::Outer;
  return shape->second == 1 ? AnodyneClass::BinaryExtendedLeft : AnodyneClass::ExtendedLeft;
}

FaceDescriptor root_horn_face(const Tree& t) {
  if (!has_root_horn(t)) throw std::invalid_argument("tree has no root horn");
  for (const auto& f : faces(t)) {
    if (t.is_corolla() && f.kind == FaceKind::Colour && f.edge != t.root()) return f;
    if (!t.is_corolla() && f.kind == FaceKind::Root) return f;
  }
  throw std::logic_error("root horn face not found");
}

AmbientPtr make_ambient(const AmbientSpec& spec) {
  return spec.tensor ? tensor_ambient(spec.tree, spec.n) : Ambient::representable(spec.tree);
}

// ---------------------------------------------------------------------------
// Verification

namespace {

std::vector<std::string> describe_maximal(const Ambient& amb, const std::set<EdgeMask>& cells) {
  std::vector<EdgeMask> top;
  for (EdgeMask c : cells) {
    bool maximal = true;
    for (EdgeMask d : cells)
      if (d != c && (c & ~d) == 0) maximal = false;
    if (maximal) top.push_back(c);
  }
  std::sort(top.begin(), top.end(), [&](EdgeMask x, EdgeMask y) { return amb.cell_less(x, y); });
  std::vector<std::string> out;
  for (EdgeMask c : top) out.push_back(amb.cell_string(c));
  return out;
}

std::set<EdgeMask> minus(const std::set<EdgeMask>& a, const std::set<EdgeMask>& b) {
  std::set<EdgeMask> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

std::set<std::vector<std::string>> by_names(const Ambient& amb, const std::set<EdgeMask>& cells) {
  std::set<std::vector<std::string>> out;
  for (EdgeMask c : cells) {
    auto v = amb.names_of(c);
    std::sort(v.begin(), v.end());
    out.insert(v);
  }
  return out;
}

// Image of the cell `m` of `from` under an edge map, contracting unary
// vertices whose two edges are identified. Returns an error message or the
// image mask in `to`.
std::variant<EdgeMask, std::string> map_cell(const Ambient& from, EdgeMask m, const Ambient& to,
                                             const std::map<std::string, std::string>& f) {
  const Tree& t = from.tree(m);
  auto img = [&](EdgeId e) -> const std::string& {
    auto it = f.find(t.name(e));
    if (it == f.end()) throw std::invalid_argument("edge " + t.name(e) + " is not mapped");
    return it->second;
  };
  try {
    std::set<std::string> edges;
    for (EdgeId e = 0; e < t.edge_count(); ++e) edges.insert(img(e));
    std::vector<NamedVertex> vs;
    for (const auto& v : t.vertices()) {
      if (v.inputs.size() == 1 && img(v.inputs[0]) == img(v.output)) continue;
      NamedVertex nv{{}, img(v.output)};
      for (EdgeId in : v.inputs) nv.inputs.push_back(img(in));
      vs.push_back(nv);
    }
    std::vector<std::string> list(edges.begin(), edges.end());
    Tree image = Tree::from_named(list, vs, img(t.root()));
    EdgeMask mask = to.mask_of(list);
    if (!to.is_cell(mask)) return "image " + to.cell_string(mask) + " of " + from.cell_string(m) + " is not a cell";
    if (!(to.tree(mask) == image))
      return "image of " + from.cell_string(m) + " has the wrong tree structure";
    return mask;
  } catch (const std::exception& e) {
    return "image of " + from.cell_string(m) + " is not a tree: " + e.what();
  }
}

AnodyneClass max_class(const std::vector<AnodyneClass>& cs) {
  AnodyneClass m = AnodyneClass::Inner;
  for (auto c : cs) m = std::max(m, c);
  return m;
}

}  // namespace

StepOutcome verify_step(const Subcomplex& current, const std::vector<HornAddition>& additions,
                        AnodyneClass limit) {
  StepOutcome out;
  const AmbientPtr& amb = current.ambient();
  Subcomplex stage = current;
  for (std::size_t j = 0; j < additions.size(); ++j) {
    const auto& a = additions[j];
    auto fail = [&](std::string msg) {
      Violation v;
      v.addition = int(j);
      v.message = std::move(msg);
      return v;
    };
    if (!amb->is_cell(a.cell)) {
      out.violation = fail(amb->cell_string(a.cell) + " is not a cell of the ambient");
      return out;
    }
    if (stage.contains(a.cell)) {
      out.violation = fail(amb->cell_string(a.cell) + " is already present");
      return out;
    }
    const auto& fs = amb->faces_of(a.cell);
    if (std::find(fs.begin(), fs.end(), a.omitted) == fs.end()) {
      out.violation = fail(amb->cell_string(a.omitted) + " is not a face of " +
                           amb->cell_string(a.cell));
      return out;
    }
    AnodyneClass k;
    try {
      k = generator_class(HornSpec{amb->tree(a.cell), amb->face_descriptor(a.cell, a.omitted)});
    } catch (const std::exception& e) {
      out.violation = fail(e.what());
      return out;
    }
    if (k > limit) {
      out.violation = fail("horn of " + amb->cell_string(a.cell) + " at " +
                           amb->cell_string(a.omitted) + " is " + to_string(k) +
                           ", outside " + to_string(limit));
      return out;
    }
    Subcomplex horn = Subcomplex::horn(amb, a.cell, a.omitted);
    Subcomplex meet = Subcomplex::closure(amb, std::vector<EdgeMask>{a.cell}) & stage;
    if (!(meet == horn)) {
      Violation v = fail("intersection of " + amb->cell_string(a.cell) +
                         " with the current stage is not the horn at " +
                         amb->cell_string(a.omitted));
      v.missing = describe_maximal(*amb, minus(horn.cells(), meet.cells()));
      v.extra = describe_maximal(*amb, minus(meet.cells(), horn.cells()));
      out.violation = v;
      return out;
    }
    stage.add(a.cell);
    out.classes.push_back(k);
  }
  out.stage = stage;
  return out;
}

VerifyReport verify_certificate(const Certificate& c) {
  VerifyReport rep;
  auto fail = [&](Violation v) {
    rep.valid = false;
    rep.violation = std::move(v);
    return rep;
  };
  auto at = [](int step, int addition, std::string msg) {
    Violation v;
    v.step = step;
    v.addition = addition;
    v.message = std::move(msg);
    return v;
  };

  AmbientPtr amb;
  std::optional<Subcomplex> current;
  try {
    amb = c.ambient ? c.ambient : make_ambient(c.ambient_spec);
    current = Subcomplex::closure(amb, c.start);
  } catch (const std::exception& e) {
    return fail(at(-1, -1, std::string("bad ambient or start: ") + e.what()));
  }
  Subcomplex seg_start = *current;

  for (int s = 0; s < int(c.steps.size()); ++s) {
    const Step& st = c.steps[s];
    if (st.kind == Step::Kind::Horn) {
      StepOutcome o = verify_step(*current, st.horns, c.claimed);
      rep.classes.insert(rep.classes.end(), o.classes.begin(), o.classes.end());
      if (o.violation) {
        Violation v = *o.violation;
        v.step = s;
        return fail(v);
      }
      current = *o.stage;
      rep.final_step_class = o.classes.empty() ? std::nullopt
                                               : std::optional(max_class(o.classes));
    } else if (st.kind == Step::Kind::Pushout) {
      std::vector<AnodyneClass> step_classes;
      for (int j = 0; j < int(st.pushouts.size()); ++j) {
        const auto& a = st.pushouts[j];
        if (!amb->is_cell(a.cell)) return fail(at(s, j, "not a cell of the ambient"));
        if (current->contains(a.cell))
          return fail(at(s, j, amb->cell_string(a.cell) + " is already present"));
        if (!a.proof) return fail(at(s, j, "missing nested certificate"));
        VerifyReport sub = verify_certificate(*a.proof);
        if (!sub.valid) {
          Violation v = *sub.violation;
          v.message = "nested: " + v.message;
          v.step = s;
          v.addition = j;
          return fail(v);
        }
        AnodyneClass k = max_class(sub.classes);
        if (k > c.claimed)
          return fail(at(s, j, "nested certificate uses " + to_string(k) + ", outside " +
                                   to_string(c.claimed)));
        const Ambient& sa = *sub.final_ambient;
        if (sa.maximal().size() != 1 || !(sa.maximal()[0] == amb->tree(a.cell)))
          return fail(at(s, j, "nested certificate does not end in the representable of " +
                                   amb->cell_string(a.cell)));
        Subcomplex rep_cell = Subcomplex::closure(amb, std::vector<EdgeMask>{a.cell});
        Subcomplex meet = rep_cell & *current;
        if (by_names(*amb, meet.cells()) != by_names(sa, sub.effective_start)) {
          Violation v = at(s, j, "intersection with " + amb->cell_string(a.cell) +
                                     " differs from the nested start");
          std::set<EdgeMask> nested;
          for (EdgeMask m : sub.effective_start) nested.insert(amb->mask_of(sa.names_of(m)));
          v.missing = describe_maximal(*amb, minus(nested, meet.cells()));
          v.extra = describe_maximal(*amb, minus(meet.cells(), nested));
          return fail(v);
        }
        if (sub.final_stage.size() != sa.cells().size())
          return fail(at(s, j, "nested certificate does not reach the whole representable"));
        rep.classes.insert(rep.classes.end(), sub.classes.begin(), sub.classes.end());
        step_classes.insert(step_classes.end(), sub.classes.begin(), sub.classes.end());
        current->add(a.cell);
      }
      rep.final_step_class = step_classes.empty() ? std::nullopt
                                                  : std::optional(max_class(step_classes));
    } else {
      AmbientPtr small;
      std::optional<Subcomplex> s_start, s_target;
      try {
        small = st.retract_ambient ? st.retract_ambient : make_ambient(st.retract_spec);
        s_start = Subcomplex::closure(small, st.retract_start);
        s_target = Subcomplex::closure(small, st.retract_target);
      } catch (const std::exception& e) {
        return fail(at(s, -1, std::string("bad retract data: ") + e.what()));
      }
      if (!s_start->subset_of(*s_target))
        return fail(at(s, -1, "retract start is not inside its target"));
      for (const auto& e : small->edges()) {
        auto it = st.section.find(e);
        if (it == st.section.end()) return fail(at(s, -1, "section misses edge " + e));
        auto back = st.retraction.find(it->second);
        if (back == st.retraction.end() || back->second != e)
          return fail(at(s, -1, "retraction after section moves edge " + e));
      }
      for (EdgeMask m : s_target->cells()) {
        auto r = map_cell(*small, m, *amb, st.section);
        if (auto* msg = std::get_if<std::string>(&r)) return fail(at(s, -1, "section: " + *msg));
        EdgeMask img = std::get<EdgeMask>(r);
        if (!current->contains(img))
          return fail(at(s, -1, "section sends " + small->cell_string(m) + " outside the stage"));
        if (s_start->contains(m) && !seg_start.contains(img))
          return fail(at(s, -1, "section sends " + small->cell_string(m) + " outside the start"));
      }
      for (EdgeMask m : current->cells()) {
        auto r = map_cell(*amb, m, *small, st.retraction);
        if (auto* msg = std::get_if<std::string>(&r))
          return fail(at(s, -1, "retraction: " + *msg));
        EdgeMask img = std::get<EdgeMask>(r);
        if (!s_target->contains(img))
          return fail(at(s, -1, "retraction sends " + amb->cell_string(m) + " outside the target"));
        if (seg_start.contains(m) && !s_start->contains(img))
          return fail(at(s, -1, "retraction sends " + amb->cell_string(m) + " outside the start"));
      }
      amb = small;
      current = *s_target;
      seg_start = *s_start;
    }
  }

  Subcomplex expected = Subcomplex::full(amb);
  if (c.target) {
    try {
      expected = Subcomplex::closure(amb, *c.target);
    } catch (const std::exception& e) {
      return fail(at(int(c.steps.size()), -1, std::string("bad target: ") + e.what()));
    }
  }
  if (!(*current == expected)) {
    Violation v = at(int(c.steps.size()), -1, "final stage differs from the target");
    v.missing = describe_maximal(*amb, minus(expected.cells(), current->cells()));
    v.extra = describe_maximal(*amb, minus(current->cells(), expected.cells()));
    return fail(v);
  }
  rep.valid = true;
  rep.final_ambient = amb;
  rep.effective_start = seg_start.cells();
  rep.final_stage = current->cells();
  return rep;
}

// ---------------------------------------------------------------------------
// Search

namespace {

int root_horn_top_size(const Tree& u) {
  if (u.is_corolla()) return 0;
  for (EdgeId in : u.vertex(u.root_vertex()).inputs)
    if (!u.is_leaf(in)) return tree_top(*u.subtree(upper_mask(u, in))).vertex_count();
  return 0;
}

struct Doubled {
  Tree w;
  std::string fresh, a0;
};

// Inserts a unary vertex fresh -> a_0 below the root vertex of the tree top
// above the root vertex of u.
Doubled double_stem(const Tree& u) {
  EdgeId r = -1;
  for (EdgeId in : u.vertex(u.root_vertex()).inputs)
    if (!u.is_leaf(in)) r = in;
  if (r < 0) throw std::invalid_argument("root vertex has no inner edge");
  Tree upper = *u.subtree(upper_mask(u, r));
  std::string a0 = upper.name(stem_edges(upper).front());
  std::string fresh = "a'";
  while (u.find(fresh)) fresh += "'";
  std::vector<std::string> edges = u.names();
  edges.push_back(fresh);
  std::vector<NamedVertex> vs;
  for (const auto& v : u.vertices()) {
    NamedVertex nv{{}, u.name(v.output)};
    for (EdgeId in : v.inputs) nv.inputs.push_back(u.name(in));
    if (nv.output == a0) nv.output = fresh;
    vs.push_back(nv);
  }
  vs.push_back({{fresh}, a0});
  return {Tree::from_named(edges, vs, u.name(u.root())), fresh, a0};
}

std::vector<EdgeMask> horn_generators(const Ambient& amb, EdgeMask cell, EdgeMask omitted) {
  std::vector<EdgeMask> out;
  for (EdgeMask f : amb.faces_of(cell))
    if (f != omitted) out.push_back(f);
  return out;
}

Step retract_onto(const Tree& u, const Doubled& d) {
  Step st;
  st.kind = Step::Kind::Retract;
  st.label = "retract onto the root horn of the original tree";
  st.retract_spec = AmbientSpec{false, u, 0};
  st.retract_ambient = make_ambient(st.retract_spec);
  const Ambient& small = *st.retract_ambient;
  EdgeMask full = small.mask_of(u.names());
  FaceDescriptor rf = root_horn_face(u);
  EdgeMask omitted = small.mask_of(u.names_of(rf.mask));
  st.retract_start = horn_generators(small, full, omitted);
  st.retract_target = {full};
  for (const auto& n : u.names()) {
    st.section[n] = n;
    st.retraction[n] = n;
  }
  st.retraction[d.fresh] = d.a0;
  return st;
}

SearchResult search_impl(const AmbientSpec& spec, const std::vector<EdgeMask>& start,
                         const std::optional<std::vector<EdgeMask>>& target, AnodyneClass cls,
                         const SearchOptions& opts, int nested_limit);

SearchResult root_horn_impl(const Tree& u, AnodyneClass cls, const SearchOptions& opts) {
  SearchResult res;
  if (!has_root_horn(u)) {
    res.failure = "tree has no root horn";
    return res;
  }
  FaceDescriptor rf = root_horn_face(u);
  AnodyneClass k = generator_class(HornSpec{u, rf});
  if (k <= cls) {
    Certificate c;
    c.name = "root horn generator";
    c.ambient_spec = AmbientSpec{false, u, 0};
    c.ambient = make_ambient(c.ambient_spec);
    EdgeMask full = c.ambient->mask_of(u.names());
    EdgeMask omitted = c.ambient->mask_of(u.names_of(rf.mask));
    c.start = horn_generators(*c.ambient, full, omitted);
    Step st;
    st.label = "root horn";
    st.horns = {{full, omitted}};
    c.steps = {st};
    c.claimed = cls;
    res.certificate = c;
    return res;
  }
  int top = root_horn_top_size(u);
  if (top == 0 || u.is_corolla()) {
    res.failure = "root horn outside the class";
    return res;
  }
  Doubled d = double_stem(u);
  AmbientSpec spec{false, d.w, 0};
  AmbientPtr amb = make_ambient(spec);
  EdgeMask cell = amb->mask_of(u.names());
  EdgeMask omitted = amb->mask_of(u.names_of(rf.mask));
  SearchOptions inner = opts;
  res = search_impl(spec, horn_generators(*amb, cell, omitted), std::nullopt, cls, inner, top);
  if (res.certificate) {
    res.certificate->name = "root horn through a doubled stem edge";
    res.certificate->steps.push_back(retract_onto(u, d));
  }
  return res;
}

SearchResult search_impl(const AmbientSpec& spec, const std::vector<EdgeMask>& start,
                         const std::optional<std::vector<EdgeMask>>& target, AnodyneClass cls,
                         const SearchOptions& opts, int nested_limit) {
  SearchResult res;
  AmbientPtr amb = make_ambient(spec);
  Subcomplex s0 = Subcomplex::closure(amb, start);
  Subcomplex goal = target ? Subcomplex::closure(amb, *target) : Subcomplex::full(amb);
  if (!s0.subset_of(goal)) {
    res.failure = "start is not contained in the target";
    return res;
  }
  std::set<EdgeMask> cur = s0.cells();
  std::vector<EdgeMask> order;
  for (EdgeMask m : amb->cells())
    if (goal.contains(m)) order.push_back(m);

  std::unordered_map<EdgeMask, std::vector<EdgeMask>> closures;
  auto closure_of = [&](EdgeMask m) -> const std::vector<EdgeMask>& {
    auto it = closures.find(m);
    if (it != closures.end()) return it->second;
    Subcomplex c = Subcomplex::closure(amb, std::vector<EdgeMask>{m});
    return closures.emplace(m, std::vector<EdgeMask>(c.cells().begin(), c.cells().end()))
        .first->second;
  };
  std::unordered_map<EdgeMask, std::shared_ptr<const Certificate>> nested_cache;
  std::set<EdgeMask> nested_failed;

  struct Candidate {
    EdgeMask omitted;
    std::shared_ptr<const Certificate> proof;
  };
  auto evaluate = [&](EdgeMask u) -> std::optional<Candidate> {
    EdgeMask missing = 0;
    int count = 0;
    for (EdgeMask f : amb->faces_of(u))
      if (!cur.count(f)) {
        missing = f;
        ++count;
      }
    if (count != 1) return std::nullopt;
    std::set<EdgeMask> horn;
    for (EdgeMask f : amb->faces_of(u))
      if (f != missing)
        for (EdgeMask c : closure_of(f)) horn.insert(c);
    for (EdgeMask c : closure_of(u))
      if (c != u && (cur.count(c) > 0) != (horn.count(c) > 0)) return std::nullopt;
    HornSpec h{amb->tree(u), amb->face_descriptor(u, missing)};
    AnodyneClass k;
    try {
      k = generator_class(h);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (k <= cls) return Candidate{missing, nullptr};
    if (!opts.nested_root_horns && nested_limit == 0) return std::nullopt;
    if (classify_horn(h) != HornType::Root) return std::nullopt;
    if (root_horn_top_size(h.tree) >= nested_limit) return std::nullopt;
    if (nested_failed.count(u)) return std::nullopt;
    auto it = nested_cache.find(u);
    if (it != nested_cache.end()) return Candidate{missing, it->second};
    SearchResult sub = root_horn_impl(h.tree, cls, opts);
    res.expanded += sub.expanded;
    if (!sub.certificate) {
      nested_failed.insert(u);
      return std::nullopt;
    }
    auto proof = std::make_shared<const Certificate>(std::move(*sub.certificate));
    nested_cache[u] = proof;
    return Candidate{missing, proof};
  };

  std::vector<Step> steps;
  bool exhausted = false;
  // Stages already shown to be dead ends; different attachment orders
  // reach the same stage.
  std::set<std::vector<EdgeMask>> dead;
  std::function<bool()> dfs = [&]() -> bool {
    if (cur.size() == goal.size()) return true;
    std::vector<EdgeMask> state(cur.begin(), cur.end());
    if (dead.count(state)) return false;
    for (EdgeMask u : order) {
      if (cur.count(u)) continue;
      auto cand = evaluate(u);
      if (!cand) continue;
      if (++res.expanded > opts.budget) {
        exhausted = true;
        return false;
      }
      std::vector<EdgeMask> added;
      for (EdgeMask c : closure_of(u))
        if (cur.insert(c).second) added.push_back(c);
      Step st;
      st.label = amb->cell_string(u);
      if (cand->proof) {
        st.kind = Step::Kind::Pushout;
        st.pushouts = {{u, cand->proof}};
      } else {
        st.horns = {{u, cand->omitted}};
      }
      steps.push_back(std::move(st));
      if (dfs()) return true;
      if (exhausted) return false;
      steps.pop_back();
      for (EdgeMask c : added) cur.erase(c);
    }
    dead.insert(std::move(state));
    return false;
  };
  if (!dfs()) {
    res.failure = exhausted ? "budget exhausted" : "no filtration exists with single-cell steps";
    return res;
  }
  Certificate c;
  c.name = "search";
  c.ambient_spec = spec;
  c.ambient = amb;
  c.start = s0.maximal_cells();
  if (target) c.target = goal.maximal_cells();
  c.steps = std::move(steps);
  c.claimed = cls;
  res.certificate = std::move(c);
  return res;
}

}  // namespace

SearchResult search_certificate(const AmbientSpec& spec, const std::vector<EdgeMask>& start,
                                const std::optional<std::vector<EdgeMask>>& target,
                                AnodyneClass cls, const SearchOptions& opts) {
  return search_impl(spec, start, target, cls, opts, opts.nested_root_horns ? 1 << 30 : 0);
}

SearchResult search_root_horn_certificate(const Tree& u, AnodyneClass cls,
                                          const SearchOptions& opts) {
  return root_horn_impl(u, cls, opts);
}

}  // namespace dendro
