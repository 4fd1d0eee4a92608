#pragma once

#include <map>
#include <string>
#include <vector>

#include "bispan/bispan.hpp"
#include "bispan/gset.hpp"
#include "bispan/semiring.hpp"

namespace bispan {

/// An isomorphism class in the slice over a finite G-set: for each orbit of
/// the base, orbit multiplicities of the fibre over the orbit representative,
/// indexed by conjugacy classes of subgroups of the representative's
/// stabilizer (largest stabilizers first). This is the value of the
/// decategorified slice functor; over an orbit G/H it is an element of the
/// Burnside semiring A(H).
struct BurnsideElement {
  Obj base;
  std::vector<Orbit> orbits;                  // orbit decomposition of base
  std::vector<std::pair<int, int>> locate;    // base point -> (orbit index, g with g.rep = point)
  std::vector<std::vector<BigInt>> counts;    // per orbit, per local class position
};

/// Burnside add/mul tables of A(H) on the orbit basis, for axiom checks and
/// table output.
struct BurnsideTable {
  int subgroup = 0;  // H, as a subgroup index of G
  std::vector<std::string> basis_names;
  std::vector<std::vector<std::vector<BigInt>>> mul;  // [i][j] -> counts vector
};

/// The decategorified slice functor on finite G-sets: restriction along the
/// backward leg, multiplicative transfer (norm) along the F-leg, additive
/// transfer along the L-leg. Norms are computed by counting fixed points of
/// section families and inverting the table of marks, which stays exact at
/// scales where the section set itself could never be materialized; the
/// materialized route is kept alongside as the small-scale oracle. One
/// context caches the per-subgroup Burnside machinery for one group; it is
/// not safe for concurrent mutation.
class TambaraContext {
public:
  explicit TambaraContext(GroupPtr g);

  const GroupPtr& group() const { return group_; }

  BurnsideElement zero(const Obj& base);
  BurnsideElement one(const Obj& base);  // class of id: base -> base
  BurnsideElement basis(const Obj& base, int orbit_index, int class_position);
  int class_positions(int subgroup_index);  // number of basis classes of A(stab)

  /// The class of an arbitrary t: T -> base.
  BurnsideElement decompose(const Mor& t);
  /// A representing G-map for a value with small multiplicities.
  Mor represent(const BurnsideElement& v);

  bool equal(const BurnsideElement& a, const BurnsideElement& b);
  BurnsideElement add(const BurnsideElement& a, const BurnsideElement& b);
  BurnsideElement mul(const BurnsideElement& a, const BurnsideElement& b);

  BurnsideElement restriction(const BurnsideElement& x, const Mor& q);       // q: base' -> base(x)
  BurnsideElement additive_transfer(const BurnsideElement& x, const Mor& l); // l: base(x) -> base'
  BurnsideElement norm(const BurnsideElement& x, const Mor& f);              // f: base(x) -> base'
  /// Section-enumeration route (requires small multiplicities).
  BurnsideElement norm_materialized(const BurnsideElement& x, const Mor& f);

  /// restriction, then norm, then additive transfer along the three legs.
  BurnsideElement evaluate_bispan(const Bispan& b, const BurnsideElement& x);
  /// Independent route through one materialized representative.
  BurnsideElement evaluate_bispan_materialized(const Bispan& b, const BurnsideElement& x);

  /// "2·[C2/C2] + 1·[C2/e]"; orbit blocks joined with " | " for non-orbit
  /// bases.
  std::string show(const BurnsideElement& v);
  std::string basis_name(int subgroup_index, int class_position);

  BurnsideTable burnside_table(int subgroup_index);

private:
  struct Local {
    int subgroup = 0;             // index into the ambient group's lattice
    GroupPtr local_group;
    std::vector<int> embed;       // local element -> ambient element
    std::vector<int> class_order; // local class id, largest subgroups first
    std::vector<int> position;    // local class id -> position in class_order
    std::vector<std::vector<BigInt>> marks;  // [pos u][pos j] = |(S/K_j)^{K_u}|
  };

  const Local& local(int subgroup_index);
  int local_subgroup_position(const Local& loc, std::uint64_t ambient_mask);
  std::vector<BigInt> invert_marks(const Local& loc, const std::vector<BigInt>& marks_vec);
  /// [S/A].[S/B] in A(S), by the double-coset formula inside S.
  const std::vector<BigInt>& basis_product(int subgroup_index, int pos_a, int pos_b);
  /// Fixed points of the fibre of x over a base point under an ambient-group
  /// subgroup mask contained in that point's stabilizer.
  BigInt fixed_count(const BurnsideElement& x, int point, std::uint64_t witness_mask);
  BurnsideElement from_base(const Obj& base);

  GroupPtr group_;
  std::map<int, Local> locals_;
  std::map<std::tuple<int, int, int>, std::vector<BigInt>> product_cache_;
};

}  // namespace bispan
