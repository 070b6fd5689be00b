#pragma once

// Dendrices of the nerve of a finite operad, computed on demand.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dendro/operad.hpp"
#include "dendro/tree.hpp"

namespace dendro {

using TreePtr = std::shared_ptr<const Tree>;

/// Edges labelled by colours and vertices by operations of matching profile.
struct Dendrex {
  TreePtr shape;
  std::vector<Colour> colours;  // per edge id
  std::vector<OpId> ops;        // per vertex id

  /// Label-by-label equality; shapes are compared by edge names.
  bool operator==(const Dendrex& other) const;
};

Profile vertex_profile(const Tree& t, const std::vector<Colour>& colours,
                       VertexId v);
bool is_valid_dendrex(const Operad& p, const Dendrex& d);
std::string to_string(const Operad& p, const Dendrex& d);

/// Calls `visit` for every dendrex of shape t whose colours agree with
/// `fixed` (per edge id, -1 = free). Enumeration order is deterministic.
void for_each_dendrex(const Operad& p, const TreePtr& t,
                      const std::vector<Colour>& fixed,
                      const std::function<void(const Dendrex&)>& visit);
std::vector<Dendrex> dendrices(const Operad& p, const Tree& t);
long long count_dendrices(const Operad& p, const Tree& t);

/// Restriction of dendrices of `ambient` to the face-composite subtree
/// spanned by an edge mask. Precomputes how each face vertex is assembled
/// from ambient vertices by partial composition.
class RestrictionPlan {
 public:
  RestrictionPlan(TreePtr ambient, EdgeMask mask);

  const TreePtr& face() const { return face_; }
  /// Ambient edge of each face edge.
  const std::vector<EdgeId>& edge_map() const { return edge_map_; }
  Dendrex apply(const Operad& p, const Dendrex& d) const;

 private:
  struct Cluster {
    VertexId vertex;
    std::vector<std::pair<int, int>> grafts;  // (input position, cluster)
  };
  std::pair<Profile, OpId> eval(const Operad& p, const Dendrex& d,
                                int cluster) const;

  TreePtr ambient_;
  TreePtr face_;
  std::vector<EdgeId> edge_map_;
  std::vector<Cluster> clusters_;
  std::vector<int> top_cluster_;  // per face vertex
};

Dendrex restrict_to(const Operad& p, const Dendrex& d, EdgeMask mask);
Dendrex face_of(const Operad& p, const Dendrex& d, const FaceDescriptor& f);

/// Doubles edge e: the original producer of e now outputs a new edge named
/// `new_name`, and an identity-labelled unary vertex maps it to e.
Dendrex degeneracy_of(const Operad& p, const Dendrex& d, EdgeId e,
                      const std::string& new_name);
/// Some unary vertex carries an identity operation.
bool is_degenerate(const Operad& p, const Dendrex& d);
/// Contracts every identity-labelled unary vertex.
Dendrex normalize(const Operad& p, const Dendrex& d);

/// The underlying simplicial set: k-simplices are dendrices on linear(k).
struct SimplicialTable {
  std::vector<std::vector<Dendrex>> simplices;
  /// face[k][i][x]: index of d_i x in dimension k-1 (empty for k = 0).
  std::vector<std::vector<std::vector<int>>> face;
  /// degeneracy[k][i][x]: index of s_i x in dimension k+1 (k < max_dim).
  std::vector<std::vector<std::vector<int>>> degeneracy;
  std::vector<int> nondegenerate;
};

SimplicialTable underlying_sset(const Operad& p, int max_dim);

}  // namespace dendro
