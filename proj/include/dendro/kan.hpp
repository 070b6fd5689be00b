#pragma once

// Exhaustive horn filling in nerves of finite operads.

#include <string>
#include <utility>
#include <vector>

#include "dendro/nerve.hpp"

namespace dendro {

/// A compatible family of dendrices on the faces of a horn.
struct HornMap {
  HornSpec horn;
  /// One dendrex per included face, in the order of horn_faces(horn).
  std::vector<Dendrex> faces;
};

/// Faces of the tree other than the omitted one, in faces() order.
std::vector<FaceDescriptor> horn_faces(const HornSpec& h);

/// Edge masks of every face-composite subtree (cell of the representable).
std::vector<EdgeMask> tree_cells(const Tree& t);

std::vector<HornMap> enumerate_horn_maps(const Operad& p, const HornSpec& h);
/// All dendrices of the horn's tree restricting to m on every included face.
std::vector<Dendrex> fillers(const Operad& p, const HornMap& m);

struct KanOptions {
  int bound = 3;       // maximal vertex count of the trees examined
  int max_arity = 3;   // maximal vertex arity of the trees examined
  int jobs = 1;
  int max_witnesses = 64;
};

struct HornWitness {
  Tree tree;
  std::string omitted;     // face label
  HornType type;
  /// Colour of every edge covered by the horn, in planar order.
  std::vector<std::pair<std::string, std::string>> colours;
  long long fillers;
};

struct KanReport {
  int bound = 0;
  int max_arity = 0;
  bool inner_kan = true;
  bool dendroidal_kan = true;
  bool fully_kan = true;
  bool strict = true;
  bool fully_unique = true;
  std::vector<HornWitness> witnesses;
  long long trees = 0;
  long long horns = 0;
  long long horn_maps = 0;
};

/// Checks every horn of every tree shape with 1..bound vertices (arity
/// 1..max_arity, one tree per isomorphism class). Corollas use the standard
/// edge names of corolla(n).
KanReport kan_report(const Operad& p, const KanOptions& opts);

std::string to_string(HornType t);

}  // namespace dendro
