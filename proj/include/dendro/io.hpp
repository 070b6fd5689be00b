#pragma once

// JSON and DOT encodings of trees, operads, Kan reports and certificates.

#include <memory>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "dendro/anodyne.hpp"
#include "dendro/kan.hpp"
#include "dendro/operad.hpp"

namespace dendro {

using Json = nlohmann::ordered_json;

/// Malformed input; `path` is a JSON pointer to the offending value.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json read_json_file(const std::string& path);

Json tree_to_json(const Tree& t);
Tree tree_from_json(const Json& j, const std::string& path = "");
/// Leaves up, root down.
std::string tree_to_dot(const Tree& t, const std::string& graph_name = "tree");

Json smc_to_json(const FiniteSMC& c);
FiniteSMC smc_from_json(const Json& j, const std::string& path = "");
Json operad_to_json(const TableOperad& p);
TableOperad operad_from_json(const Json& j, const std::string& path = "");

/// Any operad description: "operad" tables, "smc" tables, or one of the
/// generated families "discrete_abelian", "discrete_monoid",
/// "one_object_group", "codiscrete_group" given by a multiplication table.
std::unique_ptr<Operad> load_operad(const Json& j);

Json kan_report_to_json(const KanReport& r);
KanReport kan_report_from_json(const Json& j, const std::string& path = "");

Json ambient_spec_to_json(const AmbientSpec& s);
AmbientSpec ambient_spec_from_json(const Json& j, const std::string& path = "");
Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j, const std::string& path = "");
Json verify_report_to_json(const VerifyReport& r);

}  // namespace dendro
