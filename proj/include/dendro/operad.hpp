#pragma once

// Finite coloured symmetric operads, finite strict symmetric monoidal
// categories, and the operad of a symmetric monoidal category.

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace dendro {

using Colour = int;
using OpId = int;  // index inside one operation set P(c_1..c_n; c)

struct Profile {
  std::vector<Colour> inputs;
  Colour output = -1;
  int arity() const { return static_cast<int>(inputs.size()); }
  bool operator==(const Profile&) const = default;
  auto operator<=>(const Profile&) const = default;
};

/// A permutation of {0..n-1} in one-line notation.
using Perm = std::vector<int>;

/// Profile of f.sigma: input j of f.sigma is input sigma[j] of f.
Profile permute(const Profile& p, const Perm& sigma);
/// Profile of f o_i g (0-based i).
Profile compose_profile(const Profile& f, int i, const Profile& g);

/// Read-only interface every operad presentation implements. Operations of a
/// profile are numbered 0..op_count-1.
class Operad {
 public:
  virtual ~Operad() = default;

  virtual int colour_count() const = 0;
  virtual std::string colour_name(Colour c) const = 0;
  virtual int op_count(const Profile& p) const = 0;
  virtual std::string op_name(const Profile& p, OpId f) const = 0;
  virtual OpId identity(Colour c) const = 0;
  /// f o_i g, where g's output is input i of f. Result lives in
  /// compose_profile(pf, i, pg).
  virtual OpId compose(const Profile& pf, OpId f, int i, const Profile& pg,
                       OpId g) const = 0;
  /// f.sigma, living in permute(p, sigma). Satisfies
  /// (f.sigma).tau = f.(sigma o tau).
  virtual OpId act(const Profile& p, OpId f, const Perm& sigma) const = 0;
  /// Largest arity with complete tables, or -1 when unbounded.
  virtual int max_arity() const { return -1; }

  Colour colour(const std::string& name) const;  // throws if unknown
};

/// Explicit tables. Composition and action entries are looked up; a missing
/// entry is an error at lookup time.
class TableOperad : public Operad {
 public:
  TableOperad(std::vector<std::string> colours, int max_arity);

  /// Copy every table entry of `p` up to `max_arity`.
  static TableOperad materialize(const Operad& p, int max_arity);

  OpId add_op(const Profile& p, std::string name);
  void set_identity(Colour c, OpId f);
  void set_compose(const Profile& pf, OpId f, int i, const Profile& pg, OpId g,
                   OpId result);
  void set_act(const Profile& p, OpId f, const Perm& sigma, OpId result);

  struct ComposeEntry {
    Profile pf;
    OpId f;
    int i;
    Profile pg;
    OpId g;
    OpId result;
  };
  std::vector<ComposeEntry> compose_entries() const;
  struct ActEntry {
    Profile p;
    OpId f;
    Perm sigma;
    OpId result;
  };
  std::vector<ActEntry> act_entries() const;
  std::vector<Profile> profiles() const;

  int colour_count() const override { return static_cast<int>(colours_.size()); }
  std::string colour_name(Colour c) const override { return colours_.at(c); }
  int op_count(const Profile& p) const override;
  std::string op_name(const Profile& p, OpId f) const override;
  OpId identity(Colour c) const override;
  OpId compose(const Profile& pf, OpId f, int i, const Profile& pg,
               OpId g) const override;
  OpId act(const Profile& p, OpId f, const Perm& sigma) const override;
  int max_arity() const override { return max_arity_; }

 private:
  using Key = std::vector<int>;
  std::vector<std::string> colours_;
  int max_arity_;
  std::map<Profile, std::vector<std::string>> ops_;
  std::vector<OpId> identity_;
  std::map<Key, OpId> compose_;
  std::map<Key, OpId> act_;
};

// ---------------------------------------------------------------------------

/// A finite strict symmetric monoidal category. The n-fold tensor is the
/// iterated binary tensor, which strict associativity makes unbiased.
struct FiniteSMC {
  struct Morphism {
    std::string name;
    int source;
    int target;
  };

  std::vector<std::string> objects;
  int unit = 0;
  std::vector<std::vector<int>> tensor;  // objects
  std::vector<Morphism> morphisms;
  std::vector<int> identity;                  // per object
  std::vector<std::vector<int>> compose;      // [g][f] = g o f, -1 if not composable
  std::vector<std::vector<int>> tensor_mor;   // [f][g] = f (x) g
  std::vector<std::vector<int>> symmetry;     // [x][y] : x (x) y -> y (x) x

  int object_count() const { return static_cast<int>(objects.size()); }
  int morphism_count() const { return static_cast<int>(morphisms.size()); }

  int tensor_all(const std::vector<int>& objs) const;
  int tensor_mor_all(const std::vector<int>& mors) const;
  /// Morphisms x -> y in id order.
  std::vector<int> hom(int x, int y) const;
};

/// Axiom violations of a finite SMC; empty iff valid.
std::vector<std::string> validate_smc(const FiniteSMC& c);

/// Discrete SMC on a finite abelian group given by its operation table.
/// Throws std::invalid_argument when the table is not an abelian group.
FiniteSMC discrete_abelian(const std::vector<std::vector<int>>& table,
                           std::vector<std::string> names = {});
/// Discrete SMC on a commutative monoid table (no inverses required).
FiniteSMC discrete_monoid(const std::vector<std::vector<int>>& table,
                          std::vector<std::string> names = {});
/// One object whose endomorphisms form the given abelian group; composition
/// and tensor are both the group operation, symmetry is the identity.
FiniteSMC one_object_groupoid(const std::vector<std::vector<int>>& table);
/// Objects are group elements, tensor is the group operation, and there is
/// exactly one morphism between any two objects.
FiniteSMC codiscrete_groupoid(const std::vector<std::vector<int>>& table);

std::vector<std::vector<int>> cyclic_table(int n);
std::vector<std::vector<int>> product_table(const std::vector<std::vector<int>>& a,
                                            const std::vector<std::vector<int>>& b);

/// Every morphism invertible and every object invertible up to isomorphism.
bool picard_check(const FiniteSMC& c);
/// Only identity morphisms and an abelian group of objects.
bool is_discrete_abelian(const FiniteSMC& c);

/// The operad with operations Hom(c_1 (x) ... (x) c_n, c).
class SmcOperad : public Operad {
 public:
  explicit SmcOperad(FiniteSMC c);  // throws if c is not a valid SMC

  const FiniteSMC& smc() const { return c_; }
  /// The morphism behind an operation.
  int morphism(const Profile& p, OpId f) const;

  int colour_count() const override { return c_.object_count(); }
  std::string colour_name(Colour c) const override { return c_.objects.at(c); }
  int op_count(const Profile& p) const override;
  std::string op_name(const Profile& p, OpId f) const override;
  OpId identity(Colour c) const override;
  OpId compose(const Profile& pf, OpId f, int i, const Profile& pg,
               OpId g) const override;
  OpId act(const Profile& p, OpId f, const Perm& sigma) const override;

 private:
  OpId index_in(const Profile& p, int morphism) const;

  FiniteSMC c_;
  std::vector<std::vector<std::vector<int>>> homs_;  // [x][y] -> morphisms
};

// ---------------------------------------------------------------------------

struct OperadViolation {
  std::string law;
  std::string instance;
  /// Table entries consulted while evaluating both sides, formatted by
  /// compose_entry_label and act_entry_label.
  std::vector<std::string> entries;
};

std::string compose_entry_label(const Operad& p, const Profile& pf, OpId f,
                                int i, const Profile& pg, OpId g);

std::string act_entry_label(const Operad& p, const Profile& pf, OpId f,
                            const Perm& sigma);

/// Checks unit, associativity (sequential and parallel), action and
/// equivariance laws on every instance whose arities stay within max_arity.
std::vector<OperadViolation> validate_operad(const Operad& p, int max_arity);

/// Every profile of arity <= max_arity with a nonempty operation set.
std::vector<Profile> nonempty_profiles(const Operad& p, int max_arity);

/// One colour, identity operation only.
TableOperad trivial_operad();

}  // namespace dendro
