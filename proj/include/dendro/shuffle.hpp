#pragma once

// Tensor products Omega[S] (x) Omega[L_n] of a tree with a linear tree,
// modelled as the union of their shuffles.

#include <string>
#include <utility>
#include <vector>

#include "dendro/complex.hpp"

namespace dendro {

/// A maximal tree of S (x) L_n. Edge e of `tree` is the pair
/// (label[e].first = edge of S, label[e].second = level in 0..n).
struct ShuffleTree {
  Tree tree;
  std::vector<std::pair<EdgeId, int>> label;
};

/// Name of the pair (s, level) in S (x) L_n. When no edge name of S contains
/// '_' this is "s_level"; otherwise levels 0 and 1 of L_1 are "s" and "s'",
/// and "s@level" is used for longer linear trees.
std::string pair_name(const Tree& s, EdgeId e, int level, int n);

/// All shuffles, starting from the one with S on top of the root chain and
/// closing under percolation moves (an S-vertex trades places with the
/// linear vertex below it). Duplicate-free; breadth-first order.
std::vector<ShuffleTree> shuffles(const Tree& s, int n);

AmbientPtr tensor_ambient(const Tree& s, int n);
Subcomplex tensor_complex(const Tree& s, int n);

/// Cells of `ambient` (an S (x) L_n ambient) coming from shuffles of
/// sub (x) L_levels, where sub is given by an edge mask of S and `levels` is
/// an increasing subsequence of 0..n.
Subcomplex tensor_sub(const AmbientPtr& ambient, const Tree& s, int n, EdgeMask sub,
                      const std::vector<int>& levels);

/// (Lambda^x[S] (x) L_n) u (S (x) boundary L_n), where x is the omitted face
/// of S given by its edge mask.
Subcomplex pushout_product_base(const AmbientPtr& ambient, const Tree& s, int n,
                                EdgeMask omitted_face);

// ---------------------------------------------------------------------------
// Named cells of C_2 (x) L_n, with C_2 = corolla(2) on edges a, b, c.

/// T_k: the shuffle containing a_k, b_k and c_k.
EdgeMask c2_shuffle(const Ambient& ambient, int n, int k);

enum class NamedKind { Pi, Alpha, SigmaAlpha, Beta, Gamma, DT };

/// A cell, optionally with one edge doubled (a degenerate dendrex).
struct NamedCell {
  EdgeMask mask = 0;
  std::string doubled;
  std::string label;
};

/// pi_i (0 <= i <= n), alpha_n, sigma_i alpha_n (0 <= i < n), beta_n,
/// gamma_n and D_i T_j (i != j). Throws std::out_of_range for bad indices.
NamedCell named_cell(const Ambient& ambient, NamedKind kind, int n, int i = 0, int j = 0);

/// The base of the pushout product of Lambda^b[C_2] -> C_2 with the
/// boundary of L_n.
Subcomplex c2_base(const AmbientPtr& ambient, int n);

}  // namespace dendro
