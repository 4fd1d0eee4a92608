#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bispan {

/// A finite group given by its full multiplication table. Element 0 is the
/// identity. The subgroup lattice and subgroup conjugacy classes are computed
/// eagerly at construction and are immutable afterwards; the practical bound
/// is order <= 48 (subgroups are stored as 64-bit masks).
class Group {
public:
  static std::shared_ptr<const Group> from_table(std::vector<std::vector<int>> mul,
                                                 std::string name = "");
  // Generators act on {0..degree-1}; elements are enumerated by BFS from the
  // identity, multiplying by generators on the right.
  static std::shared_ptr<const Group> from_permutations(int degree,
                                                        const std::vector<std::vector<int>>& gens,
                                                        std::string name = "");
  static std::shared_ptr<const Group> trivial();
  static std::shared_ptr<const Group> cyclic(int n);
  static std::shared_ptr<const Group> symmetric(int n);  // n <= 4
  static std::shared_ptr<const Group> klein_four();

  int order() const { return n_; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return 0; }
  int element_order(int a) const;
  const std::string& name() const { return name_; }

  // --- subgroup lattice ---
  int subgroup_count() const { return static_cast<int>(subgroups_.size()); }
  const std::vector<int>& subgroup_elements(int s) const { return subgroups_[s]; }
  std::uint64_t subgroup_mask(int s) const { return masks_[s]; }
  int subgroup_order(int s) const { return static_cast<int>(subgroups_[s].size()); }
  int full_subgroup() const { return static_cast<int>(subgroups_.size()) - 1; }
  int trivial_subgroup() const { return 0; }

  /// Index of the subgroup with exactly this element set; -1 if the set is
  /// not a subgroup.
  int subgroup_index(std::uint64_t mask) const;
  /// Smallest subgroup containing the given elements.
  int subgroup_closure(const std::vector<int>& elems) const;
  bool subgroup_contains(int outer, int inner) const;
  int conjugate_subgroup(int s, int g) const;  // g S g^-1
  int intersect_subgroups(int a, int b) const;

  // --- conjugacy classes of subgroups ---
  int subgroup_class(int s) const { return class_of_[s]; }
  int class_count() const { return static_cast<int>(class_reps_.size()); }
  int class_representative(int c) const { return class_reps_[c]; }
  /// Some g with g S g^-1 = T, if the two subgroups are conjugate.
  std::optional<int> conjugator(int s, int t) const;

  /// Display name for a subgroup, by isomorphism type at desk scale
  /// (e, C2, C3, C4, V4, S3, C6, ...; falls back to "O<order>").
  std::string subgroup_name(int s) const;

private:
  Group() = default;
  void build_lattice();

  int n_ = 1;
  std::string name_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> subgroups_;  // sorted element lists, sorted by (order, mask)
  std::vector<std::uint64_t> masks_;
  std::vector<int> class_of_;
  std::vector<int> class_reps_;  // one subgroup index per class
};

using GroupPtr = std::shared_ptr<const Group>;

/// An action of a group on a finite carrier: table[g][i] = g . i.
/// Identity/compatibility laws are checked exhaustively at construction.
class GAction {
public:
  GAction(GroupPtr group, std::vector<std::vector<int>> table);

  const GroupPtr& group() const { return group_; }
  int size() const { return size_; }
  int apply(int g, int i) const { return table_[g][i]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  // pointer fast path, structural group comparison otherwise
  bool operator==(const GAction& other) const;

private:
  GroupPtr group_;
  int size_ = 0;
  std::vector<std::vector<int>> table_;
};

using GActionPtr = std::shared_ptr<const GAction>;

bool same_group_tables(const Group& a, const Group& b);

}  // namespace bispan
