#pragma once

// Finite rooted trees with named edges: the shapes of the dendroidal category.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dendro {

using EdgeId = int;
using VertexId = int;
using EdgeMask = std::uint64_t;

inline constexpr int kMaxMaskEdges = 64;

inline EdgeMask bit(EdgeId e) { return EdgeMask{1} << e; }
inline bool has(EdgeMask m, EdgeId e) { return (m >> e) & 1U; }

struct Vertex {
  std::vector<EdgeId> inputs;
  EdgeId output = -1;
};

/// Vertex given by edge names, used when building trees by hand.
struct NamedVertex {
  std::vector<std::string> inputs;
  std::string output;
};

/// Bit flags; the single edge of eta is both Root and Leaf.
enum class EdgeKind : unsigned { Root = 1, Leaf = 2, Inner = 4 };

inline unsigned operator&(EdgeKind a, EdgeKind b) {
  return static_cast<unsigned>(a) & static_cast<unsigned>(b);
}

/// An immutable edge-named rooted tree. Vertices have an ordered input list
/// (presentation only) and one output edge. Zero vertices is eta.
class Tree {
 public:
  Tree(std::vector<std::string> edge_names, std::vector<Vertex> vertices,
       EdgeId root);

  static Tree eta(std::string name);
  static Tree from_named(const std::vector<std::string>& edges,
                         const std::vector<NamedVertex>& vertices,
                         const std::string& root);

  int edge_count() const { return static_cast<int>(names_.size()); }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }

  const std::string& name(EdgeId e) const { return names_.at(e); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<EdgeId> find(std::string_view name) const;
  EdgeId edge(std::string_view name) const;  // throws if unknown

  EdgeId root() const { return root_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }

  /// Vertex whose output is e, or -1 when e is a leaf.
  VertexId producer(EdgeId e) const { return producer_[e]; }
  /// Vertex having e as an input, or -1 when e is the root.
  VertexId consumer(EdgeId e) const { return consumer_[e]; }

  bool is_root(EdgeId e) const { return e == root_; }
  bool is_leaf(EdgeId e) const { return producer_[e] < 0; }
  bool is_inner(EdgeId e) const {
    return producer_[e] >= 0 && consumer_[e] >= 0;
  }
  EdgeKind kind(EdgeId e) const;

  VertexId root_vertex() const { return producer_[root_]; }
  std::vector<EdgeId> leaves() const;
  std::vector<EdgeId> inner_edges() const;
  /// Edges in depth-first planar order starting at the root.
  std::vector<EdgeId> planar_edges() const;
  /// Number of inner edges attached to v (its inner inputs plus its output
  /// when that is inner).
  int inner_edges_at(VertexId v) const;

  bool is_eta() const { return vertices_.empty(); }
  bool is_corolla() const { return vertices_.size() == 1; }
  bool is_linear() const;
  bool has_nullary_vertex() const;

  /// True when a is strictly above b (b lies on the path from a to the root).
  bool above(EdgeId a, EdgeId b) const;

  EdgeMask full_mask() const;
  EdgeMask mask_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(EdgeMask m) const;

  /// The face-composite subtree spanned by an edge subset, or nullopt when the
  /// subset is not obtainable by face maps. Only meaningful for trees without
  /// nullary vertices. Edge names are preserved; inputs follow planar order.
  std::optional<Tree> subtree(EdgeMask m) const;

  /// Equality of edge-named trees up to reordering of vertex inputs.
  bool operator==(const Tree& other) const;

 private:
  void index();

  std::vector<std::string> names_;
  std::vector<Vertex> vertices_;
  EdgeId root_ = -1;
  std::vector<VertexId> producer_;
  std::vector<VertexId> consumer_;
  std::unordered_map<std::string, EdgeId> by_name_;
};

// ---------------------------------------------------------------------------
// Standard trees

Tree eta_tree(std::string name = "e");
/// C_n. For n == 2 the edges are a, b (leaves) and c (root); otherwise
/// l_1..l_n and r.
Tree corolla(int n);
/// L_n with edges "0" (leaf) .. "n" (root).
Tree linear(int n);
/// EC_{n,k}: chain a_0 -> ... -> a_n over a root vertex with inputs
/// a_n, b_1..b_k and root c.
Tree extended_corolla(int n, int k);

/// Graft `upper` onto the leaf `leaf` of `lower`; the root of `upper` is
/// identified with that leaf.
Tree graft(const Tree& lower, std::string_view leaf, const Tree& upper);

/// Rename edges; names not in the map are kept.
Tree rename(const Tree& t,
            const std::unordered_map<std::string, std::string>& renaming);

// ---------------------------------------------------------------------------
// Faces and horns

enum class FaceKind { Inner, Top, Root, Colour };

struct FaceDescriptor {
  FaceKind kind;
  EdgeId edge = -1;      // Inner, Colour
  VertexId vertex = -1;  // Top, Root
  Tree subtree;
  EdgeMask mask = 0;     // edges of the face inside the ambient tree

  std::string label(const Tree& ambient) const;
};

/// All codimension-one faces. Throws std::invalid_argument on eta.
std::vector<FaceDescriptor> faces(const Tree& t);

enum class HornType { Inner, Leaf, Root };

struct HornSpec {
  Tree tree;
  FaceDescriptor omitted;
};

/// Validates that `omitted` is a face of `t`.
HornSpec horn(const Tree& t, const FaceDescriptor& omitted);
HornType classify_horn(const HornSpec& h);
bool has_root_horn(const Tree& t);

// ---------------------------------------------------------------------------
// Isomorphism

/// Canonical string; equal iff the trees are isomorphic.
std::string canonical_form(const Tree& t);
bool isomorphic(const Tree& s, const Tree& t);
/// Edge bijections (image of each edge id) that are isomorphisms s -> t.
std::vector<std::vector<EdgeId>> isomorphisms(const Tree& s, const Tree& t);
std::vector<std::vector<EdgeId>> automorphisms(const Tree& t);

/// All shapes with 1..max_vertices vertices of arity 1..max_arity, one per
/// isomorphism class, in a deterministic order.
std::vector<Tree> enumerate_shapes(int max_vertices, int max_arity);

// ---------------------------------------------------------------------------
// Segments, stems and tops

/// Edge masks of all initial segments (compositions of top faces), including
/// the tree itself and eta on the root.
std::vector<EdgeMask> initial_segment_masks(const Tree& t);
std::vector<EdgeMask> initial_subtree_masks(const Tree& t, int codim);
std::vector<Tree> initial_subtrees(const Tree& t, int codim);

/// Stem edges a_0 .. a_l (a_l is the root, a_0 the root of the tree top).
std::vector<EdgeId> stem_edges(const Tree& t);
Tree stem(const Tree& t);
Tree tree_top(const Tree& t);

/// The subtree of everything at or above edge e.
EdgeMask upper_mask(const Tree& t, EdgeId e);

}  // namespace dendro
