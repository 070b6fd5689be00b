// dendro: command-line front end.
//   exit 0 success / property holds, 1 property fails / invalid, 2 usage or input error

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "dendro/io.hpp"
#include "dendro/nerve.hpp"
#include "dendro/shuffle.hpp"

using namespace dendro;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Tree load_tree(const std::string& file) { return tree_from_json(read_json_file(file)); }

std::string spaced(std::string s) {
  std::replace(s.begin(), s.end(), '-', ' ');
  return s;
}

std::string edge_sequence(std::vector<std::string> names) {
  std::sort(names.begin(), names.end(), natural_less);
  std::string out = "(";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out + ")";
}

std::optional<AnodyneClass> max_class(const VerifyReport& r) {
  if (r.classes.empty()) return std::nullopt;
  return *std::max_element(r.classes.begin(), r.classes.end());
}

int report_verification(const VerifyReport& r, bool json) {
  if (json) {
    std::cout << verify_report_to_json(r).dump(2) << "\n";
  } else if (r.valid) {
    auto c = max_class(r);
    std::cout << "valid (" << (c ? spaced(to_string(*c)) : "identity") << ")\n";
  } else {
    const auto& v = *r.violation;
    std::cout << "invalid: step " << v.step << ", addition " << v.addition << ": " << v.message
              << "\n";
    for (const auto& m : v.missing) std::cout << "  missing " << m << "\n";
    for (const auto& e : v.extra) std::cout << "  extra " << e << "\n";
  }
  return r.valid ? 0 : 1;
}

Certificate builtin_certificate(const std::string& id, int n, int k, const std::string& tree_file,
                                int vertex) {
  static const std::map<std::string, std::string> alias{{"6.4", "pushout-product"},
                                                         {"7.2", "extended-corolla"},
                                                         {"8.3", "codimension"},
                                                         {"8.5", "root-horn"}};
  std::string role = alias.count(id) ? alias.at(id) : id;
  if (role == "pushout-product") return pushout_product_certificate(n);
  if (role == "extended-corolla") return extended_corolla_certificate(n, k);
  if (role == "codimension") {
    Tree t = tree_file.empty() ? extended_corolla(n, k) : load_tree(tree_file);
    return codimension_certificate(t, vertex < 0 ? t.root_vertex() : vertex);
  }
  if (role == "root-horn") {
    if (!tree_file.empty()) return root_horn_certificate(load_tree(tree_file));
    Tree lower = corolla(n), upper = corolla(k);
    std::unordered_map<std::string, std::string> fresh;
    for (const auto& name : upper.names()) fresh[name] = "u" + name;
    return root_horn_certificate(graft(lower, lower.names().front(), rename(upper, fresh)));
  }
  throw InputError("unknown filtration id '" + id + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite combinatorics of dendroidal sets"};
  app.require_subcommand(1);

  std::string tree_file, operad_file, cert_file, problem_file, format = "json", cls = "inner";
  std::string lemma_id, dot_dir;
  int n = 1, k = 1, bound = 3, max_arity = 3, jobs = 1, vertex = -1;
  long long budget = 100000;
  bool strict = false, list = false, json_out = false, nested = false, emit = false;

  auto* tree_cmd = app.add_subcommand("tree", "Print a tree as JSON, DOT or its faces");
  tree_cmd->add_option("--tree", tree_file, "tree JSON")->required();
  tree_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "dot", "faces"}));

  auto* nerve_cmd = app.add_subcommand("nerve", "Count dendrices of a tree shape");
  nerve_cmd->add_option("--operad", operad_file)->required();
  nerve_cmd->add_option("--tree", tree_file)->required();
  nerve_cmd->add_flag("--list", list, "print every dendrex");

  auto* kan_cmd = app.add_subcommand("kan", "Kan conditions");
  kan_cmd->require_subcommand(1);
  auto* kan_check = kan_cmd->add_subcommand("check", "Exhaustive horn-filler check");
  kan_check->add_option("--operad", operad_file)->required();
  kan_check->add_option("--bound", bound, "maximal vertex count");
  kan_check->add_option("--max-arity", max_arity);
  kan_check->add_option("--jobs", jobs);
  kan_check->add_flag("--strict", strict, "also require unique fillers");

  auto* shuffle_cmd = app.add_subcommand("shuffle", "Shuffles of S (x) L_n");
  shuffle_cmd->require_subcommand(1);
  auto* shuffle_list = shuffle_cmd->add_subcommand("list", "List shuffles");
  shuffle_list->add_option("--tree", tree_file)->required();
  shuffle_list->add_option("--n", n)->check(CLI::Range(0, 4));
  shuffle_list->add_option("--dot", dot_dir, "write one DOT file per shuffle here");

  auto* anodyne_cmd = app.add_subcommand("anodyne", "Anodyne certificates");
  anodyne_cmd->require_subcommand(1);
  auto* verify_cmd = anodyne_cmd->add_subcommand("verify", "Replay a certificate");
  verify_cmd->add_option("--cert", cert_file)->required();
  verify_cmd->add_flag("--json", json_out);
  auto* search_cmd = anodyne_cmd->add_subcommand("search", "Search for a certificate");
  search_cmd->add_option("--class", cls);
  auto* problem_opt =
      search_cmd->add_option("--problem", problem_file, "JSON with ambient, start, target");
  search_cmd->add_option("--root-horn", tree_file, "tree JSON")->excludes(problem_opt);
  search_cmd->add_option("--budget", budget);
  search_cmd->add_flag("--nested", nested, "allow recursively certified root horns");

  auto* lemma_cmd = app.add_subcommand("lemma", "Built-in filtrations");
  lemma_cmd->require_subcommand(1);
  auto* lemma_verify = lemma_cmd->add_subcommand("verify", "Build and replay a filtration");
  lemma_verify->add_option("--id", lemma_id,
                           "pushout-product, extended-corolla, codimension or root-horn")
      ->required();
  lemma_verify->add_option("--n", n);
  lemma_verify->add_option("--k", k);
  lemma_verify->add_option("--tree", tree_file);
  lemma_verify->add_option("--vertex", vertex);
  lemma_verify->add_flag("--json", json_out);
  lemma_verify->add_flag("--emit", emit, "print the certificate JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*tree_cmd) {
      Tree t = load_tree(tree_file);
      if (format == "json") {
        std::cout << tree_to_json(t).dump(2) << "\n";
      } else if (format == "dot") {
        std::cout << tree_to_dot(t);
      } else {
        if (t.is_eta()) return 0;
        for (const auto& f : faces(t))
          std::cout << f.label(t) << " " << to_string(classify_horn(horn(t, f))) << " "
                    << edge_sequence(f.subtree.names()) << "\n";
      }
      return 0;
    }
    if (*nerve_cmd) {
      auto p = load_operad(read_json_file(operad_file));
      Tree t = load_tree(tree_file);
      if (list)
        for (const auto& d : dendrices(*p, t)) std::cout << to_string(*p, d) << "\n";
      std::cout << count_dendrices(*p, t) << "\n";
      return 0;
    }
    if (*kan_check) {
      auto p = load_operad(read_json_file(operad_file));
      KanOptions opts;
      opts.bound = bound;
      opts.max_arity = max_arity;
      opts.jobs = jobs;
      KanReport r = kan_report(*p, opts);
      std::cout << kan_report_to_json(r).dump(2) << "\n";
      return r.fully_kan && (!strict || r.strict) ? 0 : 1;
    }
    if (*shuffle_list) {
      Tree s = load_tree(tree_file);
      auto shs = shuffles(s, n);
      for (std::size_t i = 0; i < shs.size(); ++i) {
        std::cout << edge_sequence(shs[i].tree.names()) << "\n";
        if (!dot_dir.empty()) {
          std::string path = dot_dir + "/shuffle_" + std::to_string(i) + ".dot";
          std::ofstream out(path);
          if (!out) throw InputError("cannot write " + path);
          out << tree_to_dot(shs[i].tree, "shuffle_" + std::to_string(i));
        }
      }
      return 0;
    }
    if (*verify_cmd) {
      Certificate c = certificate_from_json(read_json_file(cert_file));
      return report_verification(verify_certificate(c), json_out);
    }
    if (*search_cmd) {
      AnodyneClass target_class = parse_anodyne_class(cls);
      SearchOptions opts;
      opts.budget = budget;
      opts.nested_root_horns = nested;
      SearchResult r;
      if (!tree_file.empty()) {
        r = search_root_horn_certificate(load_tree(tree_file), target_class, opts);
      } else if (!problem_file.empty()) {
        Json pj = read_json_file(problem_file);
        pj["class"] = cls;
        pj["steps"] = Json::array();
        Certificate shell = certificate_from_json(pj);
        r = search_certificate(shell.ambient_spec, shell.start, shell.target, target_class, opts);
      } else {
        throw InputError("anodyne search needs --problem or --root-horn");
      }
      if (!r.certificate) {
        std::cerr << "no certificate: " << r.failure << " (" << r.expanded << " cells tried)\n";
        return 1;
      }
      std::cout << certificate_to_json(*r.certificate).dump(2) << "\n";
      return 0;
    }
    if (*lemma_verify) {
      Certificate c = builtin_certificate(lemma_id, n, k, tree_file, vertex);
      if (!emit) return report_verification(verify_certificate(c), json_out);
      std::cout << certificate_to_json(c).dump(2) << "\n";
      return verify_certificate(c).valid ? 0 : 1;
    }
  } catch (const SchemaError& e) {
    std::cerr << "input error at " << (e.path().empty() ? "/" : e.path()) << ": " << e.what()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
