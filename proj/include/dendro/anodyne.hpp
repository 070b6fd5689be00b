#pragma once

// Anodyne classes, certificates built from horn pushouts, nested pushouts
// and retracts, their verification and search, and built-in filtrations.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dendro/complex.hpp"
#include "dendro/shuffle.hpp"

namespace dendro {

/// Ordered by inclusion of generator sets.
enum class AnodyneClass { Inner, Left, BinaryExtendedLeft, ExtendedLeft, Outer };

std::string to_string(AnodyneClass c);
/// Accepts "inner", "left", "binary-extended-left", "extended-left", "outer".
AnodyneClass parse_anodyne_class(std::string_view s);

/// (n, k) when t is EC_{n,k}; corollas C_m give (0, m-1) and linear trees
/// L_m give (m-1, 0).
std::optional<std::pair<int, int>> extended_corolla_shape(const Tree& t);
/// Smallest class whose generators include the horn.
AnodyneClass generator_class(const HornSpec& h);

/// The face omitted by the root horn: the root face, or for a corolla the
/// colour face of its first leaf. Throws when t has no root horn.
FaceDescriptor root_horn_face(const Tree& t);

struct AmbientSpec {
  bool tensor = false;  // Omega[tree] (x) Omega[L_n] instead of Omega[tree]
  Tree tree = eta_tree();
  int n = 0;
};

AmbientPtr make_ambient(const AmbientSpec& spec);

struct Certificate;

struct HornAddition {
  EdgeMask cell = 0;
  EdgeMask omitted = 0;  // mask of the omitted face
};

/// Attaches a cell along an inclusion X -> Omega[cell] proved by a nested
/// certificate whose final ambient is the representable of the cell.
struct NestedAddition {
  EdgeMask cell = 0;
  std::shared_ptr<const Certificate> proof;
};

struct Step {
  enum class Kind { Horn, Pushout, Retract };
  Kind kind = Kind::Horn;
  std::string label;
  std::vector<HornAddition> horns;
  std::vector<NestedAddition> pushouts;
  // Retract: the inclusion proved so far (big) has the inclusion
  // start -> target of `retract_ambient` (small) as a retract.
  AmbientSpec retract_spec;
  AmbientPtr retract_ambient;
  std::vector<EdgeMask> retract_start, retract_target;  // generators
  std::map<std::string, std::string> section;      // small edge -> big edge
  std::map<std::string, std::string> retraction;   // big edge -> small edge
};

struct Certificate {
  std::string name;
  AmbientSpec ambient_spec;
  AmbientPtr ambient;
  std::vector<EdgeMask> start;  // generators of the start subcomplex
  /// Generators of the final stage in the final ambient; nullopt means the
  /// whole final ambient.
  std::optional<std::vector<EdgeMask>> target;
  std::vector<Step> steps;
  AnodyneClass claimed = AnodyneClass::Outer;
};

struct Violation {
  std::string path;   // e.g. "step 3 addition 1" or nested paths
  int step = -1;
  int addition = -1;
  std::string message;
  std::vector<std::string> missing;  // cells expected but absent
  std::vector<std::string> extra;    // cells present but not expected
};

struct VerifyReport {
  bool valid = false;
  /// Generator class of every horn attached, nested certificates included.
  std::vector<AnodyneClass> classes;
  std::optional<AnodyneClass> final_step_class;
  std::optional<Violation> violation;
  AmbientPtr final_ambient;
  std::set<EdgeMask> effective_start;  // start of the last ambient segment
  std::set<EdgeMask> final_stage;
};

struct StepOutcome {
  std::optional<Subcomplex> stage;
  std::vector<AnodyneClass> classes;
  std::optional<Violation> violation;
};

/// Attaches the cells one after another. Each cell must be absent and meet
/// the current stage in exactly the claimed horn of class <= limit.
StepOutcome verify_step(const Subcomplex& current, const std::vector<HornAddition>& additions,
                        AnodyneClass limit);

VerifyReport verify_certificate(const Certificate& c);

struct SearchOptions {
  long long budget = 100000;  // cells tried, including backtracking
  /// Attach root horns outside the class through recursively searched
  /// certificates for smaller trees, as in the root-horn filtration.
  bool nested_root_horns = false;
};

struct SearchResult {
  std::optional<Certificate> certificate;
  long long expanded = 0;
  std::string failure;
};

/// Depth-first search attaching one cell per step, smallest cells first.
SearchResult search_certificate(const AmbientSpec& spec, const std::vector<EdgeMask>& start,
                                const std::optional<std::vector<EdgeMask>>& target,
                                AnodyneClass cls, const SearchOptions& opts = {});

/// Certificate for the root horn of u: a generator step when u is an
/// extended corolla, otherwise a search through the tree with a doubled
/// stem edge followed by the retract onto Omega[u].
SearchResult search_root_horn_certificate(const Tree& u, AnodyneClass cls,
                                          const SearchOptions& opts = {});

// ---------------------------------------------------------------------------
// Built-in filtrations

/// Pushout product of Lambda^b[C_2] -> C_2 with the boundary of L_n, n <= 3.
Certificate pushout_product_certificate(int n);
/// Root horn of EC_{n,k} into the tree splitting its root vertex, n, k <= 3.
Certificate extended_corolla_certificate(int n, int k);
/// Generators of the codimension-argument base for vertex v of t.
std::vector<EdgeMask> codimension_base(const Ambient& amb, const Tree& t, VertexId v);
/// Inner filtration of Omega[t] from the codimension-argument base.
Certificate codimension_certificate(const Tree& t, VertexId v);
/// Root horn inclusion of u through its stem-doubled tree and a retract.
/// Tree tops are limited to 3 vertices.
Certificate root_horn_certificate(const Tree& u);

}  // namespace dendro
