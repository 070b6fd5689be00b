#include "dendro/io.hpp"

#include <fstream>
#include <sstream>

namespace dendro {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& need(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(path, key), "missing");
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

std::vector<std::string> strings(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(str(j[i], at(path, i)));
  return out;
}

std::vector<int> ints(const Json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(integer(j[i], at(path, i)));
  return out;
}

std::vector<std::vector<int>> table(const Json& j, const std::string& path) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(ints(j[i], at(path, i)));
  return out;
}

// Runs f, turning library errors into schema errors at `path`.
template <class F>
auto guarded(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(path.empty() ? "/" : path, e.what());
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path, e.what());
  }
}

// ---------------------------------------------------------------------------
// Trees

Json tree_to_json(const Tree& t) {
  Json vs = Json::array();
  for (const auto& v : t.vertices()) {
    Json ins = Json::array();
    for (EdgeId e : v.inputs) ins.push_back(t.name(e));
    vs.push_back({{"inputs", ins}, {"output", t.name(v.output)}});
  }
  return {{"edges", t.names()}, {"vertices", vs}, {"root", t.name(t.root())}};
}

Tree tree_from_json(const Json& j, const std::string& path) {
  auto edges = strings(need(j, "edges", path), at(path, "edges"));
  const Json& vj = array(need(j, "vertices", path), at(path, "vertices"));
  std::vector<NamedVertex> vs;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    std::string p = at(at(path, "vertices"), i);
    vs.push_back({strings(need(vj[i], "inputs", p), at(p, "inputs")),
                  str(need(vj[i], "output", p), at(p, "output"))});
  }
  std::string root = str(need(j, "root", path), at(path, "root"));
  return guarded(path, [&] { return Tree::from_named(edges, vs, root); });
}

std::string tree_to_dot(const Tree& t, const std::string& graph_name) {
  std::ostringstream os;
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') q += '\\';
      q += ch;
    }
    return q + "\"";
  };
  os << "digraph " << quote(graph_name) << " {\n";
  os << "  rankdir=BT;\n  edge [dir=none];\n";
  os << "  node [shape=point];\n";
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    os << "  v" << v << " [shape=circle, width=0.12, label=\"\", style=filled];\n";
  // Loose ends: one per leaf and one below the root.
  os << "  root_end [shape=none, label=\"\", width=0, height=0];\n";
  for (EdgeId e : t.leaves()) os << "  leaf" << e << " [shape=none, label=\"\", width=0, height=0];\n";
  auto lower = [&](EdgeId e) {
    VertexId c = t.consumer(e);
    return c < 0 ? std::string("root_end") : "v" + std::to_string(c);
  };
  auto upper = [&](EdgeId e) {
    VertexId p = t.producer(e);
    return p < 0 ? "leaf" + std::to_string(e) : "v" + std::to_string(p);
  };
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    os << "  " << lower(e) << " -> " << upper(e) << " [label=" << quote(t.name(e)) << "];\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Operads

Json smc_to_json(const FiniteSMC& c) {
  Json ms = Json::array();
  for (const auto& m : c.morphisms)
    ms.push_back({{"name", m.name}, {"source", m.source}, {"target", m.target}});
  return {{"type", "smc"},           {"objects", c.objects},   {"unit", c.unit},
          {"tensor", c.tensor},      {"morphisms", ms},        {"identity", c.identity},
          {"compose", c.compose},    {"tensor_mor", c.tensor_mor}, {"symmetry", c.symmetry}};
}

FiniteSMC smc_from_json(const Json& j, const std::string& path) {
  FiniteSMC c;
  c.objects = strings(need(j, "objects", path), at(path, "objects"));
  c.unit = integer(need(j, "unit", path), at(path, "unit"));
  c.tensor = table(need(j, "tensor", path), at(path, "tensor"));
  const Json& ms = array(need(j, "morphisms", path), at(path, "morphisms"));
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::string p = at(at(path, "morphisms"), i);
    c.morphisms.push_back({str(need(ms[i], "name", p), at(p, "name")),
                           integer(need(ms[i], "source", p), at(p, "source")),
                           integer(need(ms[i], "target", p), at(p, "target"))});
  }
  c.identity = ints(need(j, "identity", path), at(path, "identity"));
  c.compose = table(need(j, "compose", path), at(path, "compose"));
  c.tensor_mor = table(need(j, "tensor_mor", path), at(path, "tensor_mor"));
  c.symmetry = table(need(j, "symmetry", path), at(path, "symmetry"));
  auto problems = guarded(path, [&] { return validate_smc(c); });
  if (!problems.empty()) throw SchemaError(path.empty() ? "/" : path, problems.front());
  return c;
}

namespace {

Json profile_to_json(const Operad& p, const Profile& pr) {
  Json ins = Json::array();
  for (Colour c : pr.inputs) ins.push_back(p.colour_name(c));
  return {{"inputs", ins}, {"output", p.colour_name(pr.output)}};
}

Profile profile_from_json(const Operad& p, const Json& j, const std::string& path) {
  Profile pr;
  auto ins = strings(need(j, "inputs", path), at(path, "inputs"));
  for (std::size_t i = 0; i < ins.size(); ++i)
    pr.inputs.push_back(guarded(at(at(path, "inputs"), i), [&] { return p.colour(ins[i]); }));
  std::string out = str(need(j, "output", path), at(path, "output"));
  pr.output = guarded(at(path, "output"), [&] { return p.colour(out); });
  return pr;
}

}  // namespace

Json operad_to_json(const TableOperad& p) {
  std::vector<std::string> colours;
  for (Colour c = 0; c < p.colour_count(); ++c) colours.push_back(p.colour_name(c));
  Json ops = Json::array();
  for (const auto& pr : p.profiles()) {
    Json j = profile_to_json(p, pr);
    Json names = Json::array();
    for (OpId f = 0; f < p.op_count(pr); ++f) names.push_back(p.op_name(pr, f));
    j["names"] = names;
    ops.push_back(j);
  }
  Json ids = Json::array();
  for (Colour c = 0; c < p.colour_count(); ++c) ids.push_back(p.identity(c));
  Json comp = Json::array();
  for (const auto& e : p.compose_entries())
    comp.push_back({{"f", profile_to_json(p, e.pf)},
                    {"f_op", e.f},
                    {"i", e.i},
                    {"g", profile_to_json(p, e.pg)},
                    {"g_op", e.g},
                    {"result", e.result}});
  Json act = Json::array();
  for (const auto& e : p.act_entries())
    act.push_back({{"f", profile_to_json(p, e.p)},
                   {"f_op", e.f},
                   {"perm", e.sigma},
                   {"result", e.result}});
  return {{"type", "operad"}, {"colours", colours}, {"max_arity", p.max_arity()},
          {"operations", ops}, {"identities", ids}, {"compose", comp}, {"act", act}};
}

TableOperad operad_from_json(const Json& j, const std::string& path) {
  TableOperad p(strings(need(j, "colours", path), at(path, "colours")),
                integer(need(j, "max_arity", path), at(path, "max_arity")));
  const Json& ops = array(need(j, "operations", path), at(path, "operations"));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    std::string op = at(at(path, "operations"), i);
    Profile pr = profile_from_json(p, ops[i], op);
    for (const auto& name : strings(need(ops[i], "names", op), at(op, "names")))
      guarded(op, [&] { return p.add_op(pr, name); });
  }
  auto ids = ints(need(j, "identities", path), at(path, "identities"));
  if (int(ids.size()) != p.colour_count())
    throw SchemaError(at(path, "identities"), "one identity per colour expected");
  for (Colour c = 0; c < p.colour_count(); ++c) p.set_identity(c, ids[c]);
  const Json& comp = array(need(j, "compose", path), at(path, "compose"));
  for (std::size_t i = 0; i < comp.size(); ++i) {
    std::string e = at(at(path, "compose"), i);
    p.set_compose(profile_from_json(p, need(comp[i], "f", e), at(e, "f")),
                  integer(need(comp[i], "f_op", e), at(e, "f_op")),
                  integer(need(comp[i], "i", e), at(e, "i")),
                  profile_from_json(p, need(comp[i], "g", e), at(e, "g")),
                  integer(need(comp[i], "g_op", e), at(e, "g_op")),
                  integer(need(comp[i], "result", e), at(e, "result")));
  }
  const Json& act = array(need(j, "act", path), at(path, "act"));
  for (std::size_t i = 0; i < act.size(); ++i) {
    std::string e = at(at(path, "act"), i);
    p.set_act(profile_from_json(p, need(act[i], "f", e), at(e, "f")),
              integer(need(act[i], "f_op", e), at(e, "f_op")),
              ints(need(act[i], "perm", e), at(e, "perm")),
              integer(need(act[i], "result", e), at(e, "result")));
  }
  return p;
}

std::unique_ptr<Operad> load_operad(const Json& j) {
  std::string type = str(need(j, "type", ""), "/type");
  if (type == "operad") return std::make_unique<TableOperad>(operad_from_json(j));
  if (type == "smc") return std::make_unique<SmcOperad>(smc_from_json(j));
  FiniteSMC c;
  auto t = table(need(j, "table", ""), "/table");
  std::vector<std::string> names;
  if (j.contains("names")) names = strings(j["names"], "/names");
  if (type == "discrete_abelian")
    c = guarded("/table", [&] { return discrete_abelian(t, names); });
  else if (type == "discrete_monoid")
    c = guarded("/table", [&] { return discrete_monoid(t, names); });
  else if (type == "one_object_group")
    c = guarded("/table", [&] { return one_object_groupoid(t); });
  else if (type == "codiscrete_group")
    c = guarded("/table", [&] { return codiscrete_groupoid(t); });
  else
    throw SchemaError("/type", "unknown operad type '" + type + "'");
  return guarded("/", [&] { return std::make_unique<SmcOperad>(std::move(c)); });
}

// ---------------------------------------------------------------------------
// Kan reports

Json kan_report_to_json(const KanReport& r) {
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json cs = Json::array();
    for (const auto& [e, c] : w.colours) cs.push_back({e, c});
    ws.push_back({{"tree", tree_to_json(w.tree)},
                  {"omitted", w.omitted},
                  {"type", to_string(w.type)},
                  {"colours", cs},
                  {"fillers", w.fillers}});
  }
  return {{"bound", r.bound},         {"max_arity", r.max_arity},
          {"inner_kan", r.inner_kan}, {"dendroidal_kan", r.dendroidal_kan},
          {"fully_kan", r.fully_kan}, {"strict", r.strict},
          {"fully_unique", r.fully_unique}, {"trees", r.trees},
          {"horns", r.horns},         {"horn_maps", r.horn_maps},
          {"witnesses", ws}};
}

KanReport kan_report_from_json(const Json& j, const std::string& path) {
  KanReport r;
  auto flag = [&](const char* key) {
    const Json& v = need(j, key, path);
    if (!v.is_boolean()) throw SchemaError(at(path, key), "expected a boolean");
    return v.get<bool>();
  };
  auto count = [&](const char* key) {
    const Json& v = need(j, key, path);
    if (!v.is_number_integer()) throw SchemaError(at(path, key), "expected an integer");
    return v.get<long long>();
  };
  r.bound = integer(need(j, "bound", path), at(path, "bound"));
  r.max_arity = integer(need(j, "max_arity", path), at(path, "max_arity"));
  r.inner_kan = flag("inner_kan");
  r.dendroidal_kan = flag("dendroidal_kan");
  r.fully_kan = flag("fully_kan");
  r.strict = flag("strict");
  r.fully_unique = flag("fully_unique");
  r.trees = count("trees");
  r.horns = count("horns");
  r.horn_maps = count("horn_maps");
  const Json& ws = array(need(j, "witnesses", path), at(path, "witnesses"));
  for (std::size_t i = 0; i < ws.size(); ++i) {
    std::string p = at(at(path, "witnesses"), i);
    HornWitness w{tree_from_json(need(ws[i], "tree", p), at(p, "tree")), "", HornType::Inner, {}, 0};
    w.omitted = str(need(ws[i], "omitted", p), at(p, "omitted"));
    std::string type = str(need(ws[i], "type", p), at(p, "type"));
    if (type == "inner") w.type = HornType::Inner;
    else if (type == "leaf") w.type = HornType::Leaf;
    else if (type == "root") w.type = HornType::Root;
    else throw SchemaError(at(p, "type"), "unknown horn type '" + type + "'");
    const Json& cs = array(need(ws[i], "colours", p), at(p, "colours"));
    for (std::size_t k = 0; k < cs.size(); ++k) {
      auto pair = strings(cs[k], at(at(p, "colours"), k));
      if (pair.size() != 2) throw SchemaError(at(at(p, "colours"), k), "expected [edge, colour]");
      w.colours.push_back({pair[0], pair[1]});
    }
    const Json& f = need(ws[i], "fillers", p);
    if (!f.is_number_integer()) throw SchemaError(at(p, "fillers"), "expected an integer");
    w.fillers = f.get<long long>();
    r.witnesses.push_back(std::move(w));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Certificates

Json ambient_spec_to_json(const AmbientSpec& s) {
  Json j{{"tree", tree_to_json(s.tree)}};
  if (s.tensor) j["tensor_linear"] = s.n;
  return j;
}

AmbientSpec ambient_spec_from_json(const Json& j, const std::string& path) {
  AmbientSpec s;
  s.tree = tree_from_json(need(j, "tree", path), at(path, "tree"));
  if (j.contains("tensor_linear")) {
    s.tensor = true;
    s.n = integer(j["tensor_linear"], at(path, "tensor_linear"));
    if (s.n < 0) throw SchemaError(at(path, "tensor_linear"), "must be >= 0");
  }
  return s;
}

namespace {

Json cells_to_json(const Ambient& amb, const std::vector<EdgeMask>& cells) {
  Json out = Json::array();
  for (EdgeMask m : cells) out.push_back(amb.names_of(m));
  return out;
}

EdgeMask cell_from_json(const Ambient& amb, const Json& j, const std::string& path) {
  auto names = strings(j, path);
  EdgeMask m = guarded(path, [&] { return amb.mask_of(names); });
  if (!amb.is_cell(m)) throw SchemaError(path, "not a cell of the ambient");
  return m;
}

std::vector<EdgeMask> cells_from_json(const Ambient& amb, const Json& j, const std::string& path) {
  std::vector<EdgeMask> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i)
    out.push_back(cell_from_json(amb, j[i], at(path, i)));
  return out;
}

Json edge_map_to_json(const std::map<std::string, std::string>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

std::map<std::string, std::string> edge_map_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  std::map<std::string, std::string> m;
  for (auto it = j.begin(); it != j.end(); ++it) m[it.key()] = str(it.value(), at(path, it.key()));
  return m;
}

}  // namespace

Json certificate_to_json(const Certificate& c) {
  AmbientPtr amb = c.ambient ? c.ambient : make_ambient(c.ambient_spec);
  Json steps = Json::array();
  for (const auto& st : c.steps) {
    Json sj{{"type", st.kind == Step::Kind::Horn      ? "horn"
                     : st.kind == Step::Kind::Pushout ? "pushout"
                                                      : "retract"}};
    sj["label"] = st.label;
    if (st.kind == Step::Kind::Horn) {
      Json adds = Json::array();
      for (const auto& a : st.horns)
        adds.push_back({{"cell", amb->names_of(a.cell)}, {"omit", amb->names_of(a.omitted)}});
      sj["additions"] = adds;
    } else if (st.kind == Step::Kind::Pushout) {
      Json adds = Json::array();
      for (const auto& a : st.pushouts)
        adds.push_back({{"cell", amb->names_of(a.cell)},
                        {"certificate", a.proof ? certificate_to_json(*a.proof) : Json()}});
      sj["additions"] = adds;
    } else {
      AmbientPtr small = st.retract_ambient ? st.retract_ambient : make_ambient(st.retract_spec);
      sj["ambient"] = ambient_spec_to_json(st.retract_spec);
      sj["start"] = cells_to_json(*small, st.retract_start);
      sj["target"] = cells_to_json(*small, st.retract_target);
      sj["section"] = edge_map_to_json(st.section);
      sj["retraction"] = edge_map_to_json(st.retraction);
      amb = small;
    }
    steps.push_back(sj);
  }
  Json j{{"name", c.name}, {"ambient", ambient_spec_to_json(c.ambient_spec)}};
  AmbientPtr first = c.ambient ? c.ambient : make_ambient(c.ambient_spec);
  j["start"] = cells_to_json(*first, c.start);
  if (c.target) j["target"] = cells_to_json(*amb, *c.target);
  j["steps"] = steps;
  j["class"] = to_string(c.claimed);
  return j;
}

Certificate certificate_from_json(const Json& j, const std::string& path) {
  Certificate c;
  if (j.contains("name")) c.name = str(j["name"], at(path, "name"));
  c.ambient_spec = ambient_spec_from_json(need(j, "ambient", path), at(path, "ambient"));
  c.ambient = guarded(at(path, "ambient"), [&] { return make_ambient(c.ambient_spec); });
  c.start = cells_from_json(*c.ambient, need(j, "start", path), at(path, "start"));
  std::string cls = str(need(j, "class", path), at(path, "class"));
  c.claimed = guarded(at(path, "class"), [&] { return parse_anodyne_class(cls); });
  AmbientPtr amb = c.ambient;
  const Json& steps = array(need(j, "steps", path), at(path, "steps"));
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::string sp = at(at(path, "steps"), i);
    const Json& sj = steps[i];
    Step st;
    if (sj.contains("label")) st.label = str(sj["label"], at(sp, "label"));
    std::string type = str(need(sj, "type", sp), at(sp, "type"));
    if (type == "horn" || type == "pushout") {
      st.kind = type == "horn" ? Step::Kind::Horn : Step::Kind::Pushout;
      const Json& adds = array(need(sj, "additions", sp), at(sp, "additions"));
      for (std::size_t k = 0; k < adds.size(); ++k) {
        std::string ap = at(at(sp, "additions"), k);
        EdgeMask cell = cell_from_json(*amb, need(adds[k], "cell", ap), at(ap, "cell"));
        if (st.kind == Step::Kind::Horn) {
          st.horns.push_back({cell, cell_from_json(*amb, need(adds[k], "omit", ap), at(ap, "omit"))});
        } else {
          auto proof = std::make_shared<const Certificate>(certificate_from_json(
              need(adds[k], "certificate", ap), at(ap, "certificate")));
          st.pushouts.push_back({cell, proof});
        }
      }
    } else if (type == "retract") {
      st.kind = Step::Kind::Retract;
      st.retract_spec = ambient_spec_from_json(need(sj, "ambient", sp), at(sp, "ambient"));
      st.retract_ambient =
          guarded(at(sp, "ambient"), [&] { return make_ambient(st.retract_spec); });
      st.retract_start = cells_from_json(*st.retract_ambient, need(sj, "start", sp), at(sp, "start"));
      st.retract_target =
          cells_from_json(*st.retract_ambient, need(sj, "target", sp), at(sp, "target"));
      st.section = edge_map_from_json(need(sj, "section", sp), at(sp, "section"));
      st.retraction = edge_map_from_json(need(sj, "retraction", sp), at(sp, "retraction"));
      amb = st.retract_ambient;
    } else {
      throw SchemaError(at(sp, "type"), "unknown step type '" + type + "'");
    }
    c.steps.push_back(std::move(st));
  }
  if (j.contains("target")) c.target = cells_from_json(*amb, j["target"], at(path, "target"));
  return c;
}

Json verify_report_to_json(const VerifyReport& r) {
  Json counts = Json::object();
  for (auto k : {AnodyneClass::Inner, AnodyneClass::Left, AnodyneClass::BinaryExtendedLeft,
                 AnodyneClass::ExtendedLeft, AnodyneClass::Outer}) {
    long long n = std::count(r.classes.begin(), r.classes.end(), k);
    if (n) counts[to_string(k)] = n;
  }
  Json j{{"valid", r.valid}, {"classes", counts}};
  j["final_step_class"] = r.final_step_class ? Json(to_string(*r.final_step_class)) : Json();
  if (r.violation) {
    const auto& v = *r.violation;
    j["violation"] = {{"step", v.step},
                      {"addition", v.addition},
                      {"message", v.message},
                      {"missing", v.missing},
                      {"extra", v.extra}};
  }
  return j;
}

}  // namespace dendro
