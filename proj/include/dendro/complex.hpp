#pragma once

// Finite dendroidal sets given as unions of representables glued along
// edge-named common faces, and their face-closed subcomplexes.

#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro {

/// Orders names like "a_2" < "a_10" by comparing digit runs numerically.
bool natural_less(const std::string& x, const std::string& y);

class Ambient;
using AmbientPtr = std::shared_ptr<const Ambient>;

/// A union of maximal trees over a common edge universe. Cells are the
/// nondegenerate dendrices, identified by their edge sets (bit masks over the
/// universe, which is sorted with natural_less).
class Ambient {
 public:
  struct Cell {
    Tree tree;
    std::vector<EdgeMask> faces;  // codimension-one faces, in faces() order
  };

  /// Every cell shared by two maximal trees must carry the same tree
  /// structure; throws std::invalid_argument otherwise.
  static AmbientPtr make(std::string description, std::vector<Tree> maximal);
  static AmbientPtr representable(const Tree& t);

  const std::string& description() const { return description_; }
  const std::vector<std::string>& edges() const { return edges_; }
  const std::vector<Tree>& maximal() const { return maximal_; }
  EdgeMask full_mask() const;

  EdgeMask mask_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(EdgeMask m) const;
  int edge_index(const std::string& name) const;  // throws if unknown

  bool is_cell(EdgeMask m) const { return cells_.count(m) > 0; }
  const Cell& cell(EdgeMask m) const;
  const Tree& tree(EdgeMask m) const { return cell(m).tree; }
  /// All cells, by increasing edge count then lexicographically by names.
  const std::vector<EdgeMask>& cells() const { return order_; }
  /// All cells contained in m (m must be a cell), including m.
  std::vector<EdgeMask> subcells(EdgeMask m) const;
  /// Masks of the faces of cell m in the ambient.
  const std::vector<EdgeMask>& faces_of(EdgeMask m) const { return cell(m).faces; }
  /// The face of cell m with the given mask, as a descriptor of tree(m).
  FaceDescriptor face_descriptor(EdgeMask m, EdgeMask face) const;

  /// "(a_0,b_0,c_0)" in universe order.
  std::string cell_string(EdgeMask m) const;
  /// Strict total order used for deterministic traversal.
  bool cell_less(EdgeMask x, EdgeMask y) const;

 private:
  Ambient() = default;
  EdgeMask global_mask(const Tree& t, EdgeMask local) const;

  std::string description_;
  std::vector<std::string> edges_;
  std::unordered_map<std::string, int> index_;
  std::vector<Tree> maximal_;
  std::unordered_map<EdgeMask, Cell> cells_;
  std::vector<EdgeMask> order_;
};

/// A set of cells of an ambient. Constructors other than from_cells always
/// produce face-closed sets.
class Subcomplex {
 public:
  explicit Subcomplex(AmbientPtr ambient);

  static Subcomplex full(AmbientPtr ambient);
  static Subcomplex closure(AmbientPtr ambient, const std::vector<EdgeMask>& generators);
  static Subcomplex closure(AmbientPtr ambient,
                            const std::vector<std::vector<std::string>>& generators);
  /// Takes the cells as given (each must be a cell); may be non-closed.
  static Subcomplex from_cells(AmbientPtr ambient, std::set<EdgeMask> cells);
  /// Union of the closures of every face of `cell` except `omitted`.
  static Subcomplex horn(AmbientPtr ambient, EdgeMask cell, EdgeMask omitted);

  const AmbientPtr& ambient() const { return ambient_; }
  const std::set<EdgeMask>& cells() const { return cells_; }
  bool contains(EdgeMask m) const { return cells_.count(m) > 0; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  /// Adds the closure of m.
  void add(EdgeMask m);
  bool is_face_closed() const;
  bool subset_of(const Subcomplex& other) const;
  /// Cells not contained in a larger cell of this subcomplex.
  std::vector<EdgeMask> maximal_cells() const;

  bool operator==(const Subcomplex& other) const;

 private:
  void check_same(const Subcomplex& other) const;
  friend Subcomplex operator|(const Subcomplex& a, const Subcomplex& b);
  friend Subcomplex operator&(const Subcomplex& a, const Subcomplex& b);

  AmbientPtr ambient_;
  std::set<EdgeMask> cells_;
};

/// Union and intersection; std::invalid_argument for different ambients.
Subcomplex operator|(const Subcomplex& a, const Subcomplex& b);
Subcomplex operator&(const Subcomplex& a, const Subcomplex& b);

}  // namespace dendro
