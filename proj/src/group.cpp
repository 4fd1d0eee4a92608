#include "bispan/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace bispan {

namespace {

std::vector<int> mask_to_elems(std::uint64_t m) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (m >> i & 1) out.push_back(i);
  return out;
}

}  // namespace

std::shared_ptr<const Group> Group::from_table(std::vector<std::vector<int>> mul,
                                               std::string name) {
  auto g = std::shared_ptr<Group>(new Group());
  g->n_ = static_cast<int>(mul.size());
  if (g->n_ < 1 || g->n_ > 48)
    throw std::invalid_argument("group order must be in [1, 48]");
  for (auto& row : mul)
    if (static_cast<int>(row.size()) != g->n_)
      throw std::invalid_argument("multiplication table is not square");
  g->mul_ = std::move(mul);
  g->name_ = std::move(name);

  const int n = g->n_;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->mul_[a][b] < 0 || g->mul_[a][b] >= n)
        throw std::invalid_argument("multiplication table entry out of range");
  for (int a = 0; a < n; ++a)
    if (g->mul_[0][a] != a || g->mul_[a][0] != a)
      throw std::invalid_argument("element 0 is not an identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g->mul_[g->mul_[a][b]][c] != g->mul_[a][g->mul_[b][c]])
          throw std::invalid_argument("multiplication table is not associative");
  g->inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g->mul_[a][b] == 0) {
        g->inv_[a] = b;
        break;
      }
    if (g->inv_[a] < 0) throw std::invalid_argument("element without inverse");
  }
  g->build_lattice();
  return g;
}

std::shared_ptr<const Group> Group::from_permutations(int degree,
                                                      const std::vector<std::vector<int>>& gens,
                                                      std::string name) {
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree)
      throw std::invalid_argument("permutation degree mismatch");
    std::vector<char> seen(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v]) throw std::invalid_argument("not a permutation");
      seen[v] = 1;
    }
  }
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& gperm : gens) {
      std::vector<int> next(degree);
      for (int v = 0; v < degree; ++v) next[v] = gperm[elems[i][v]];  // g after elems[i]
      if (index.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(next);
        if (elems.size() > 48) throw std::invalid_argument("generated group exceeds order 48");
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod(degree);
      for (int v = 0; v < degree; ++v) prod[v] = elems[a][elems[b][v]];
      mul[a][b] = index.at(prod);
    }
  return from_table(std::move(mul), std::move(name));
}

std::shared_ptr<const Group> Group::trivial() {
  return from_table({{0}}, "e");
}

std::shared_ptr<const Group> Group::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
  return from_table(std::move(mul), "C" + std::to_string(n));
}

std::shared_ptr<const Group> Group::symmetric(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("symmetric(n) supports n in [1, 4]");
  if (n == 1) return trivial();
  std::vector<int> transposition(n), cycle(n);
  std::iota(transposition.begin(), transposition.end(), 0);
  std::swap(transposition[0], transposition[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return from_permutations(n, {transposition, cycle}, "S" + std::to_string(n));
}

std::shared_ptr<const Group> Group::klein_four() {
  // C2 x C2 acting on four points as two independent swaps.
  return from_permutations(4, {{1, 0, 2, 3}, {0, 1, 3, 2}}, "V4");
}

int Group::element_order(int a) const {
  int k = 1, x = a;
  while (x != 0) {
    x = mul_[x][a];
    ++k;
  }
  return k;
}

void Group::build_lattice() {
  const int n = n_;
  // Closure of every subset grown element-by-element from known subgroups.
  std::vector<std::uint64_t> found{1};  // trivial subgroup {0}
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (int g = 1; g < n; ++g) {
      if (found[i] >> g & 1) continue;
      std::vector<int> base = mask_to_elems(found[i]);
      base.push_back(g);
      // close under multiplication
      std::uint64_t m = 0;
      for (int e : base) m |= 1ull << e;
      bool grew = true;
      while (grew) {
        grew = false;
        auto elems = mask_to_elems(m);
        for (int a : elems)
          for (int b : elems) {
            int c = mul_[a][b];
            if (!(m >> c & 1)) {
              m |= 1ull << c;
              grew = true;
            }
          }
      }
      if (std::find(found.begin(), found.end(), m) == found.end()) found.push_back(m);
    }
  }
  std::sort(found.begin(), found.end(), [](std::uint64_t a, std::uint64_t b) {
    int ca = __builtin_popcountll(a), cb = __builtin_popcountll(b);
    return ca != cb ? ca < cb : a < b;
  });
  masks_ = std::move(found);
  subgroups_.clear();
  for (auto m : masks_) subgroups_.push_back(mask_to_elems(m));

  // conjugacy classes, brute force over all g
  const int sc = static_cast<int>(masks_.size());
  class_of_.assign(sc, -1);
  class_reps_.clear();
  for (int s = 0; s < sc; ++s) {
    if (class_of_[s] >= 0) continue;
    int c = static_cast<int>(class_reps_.size());
    class_reps_.push_back(s);
    for (int g = 0; g < n; ++g) {
      int t = conjugate_subgroup(s, g);
      class_of_[t] = c;
    }
  }
}

int Group::subgroup_index(std::uint64_t mask) const {
  auto it = std::find(masks_.begin(), masks_.end(), mask);
  return it == masks_.end() ? -1 : static_cast<int>(it - masks_.begin());
}

int Group::subgroup_closure(const std::vector<int>& elems) const {
  std::uint64_t m = 1;
  for (int e : elems) {
    if (e < 0 || e >= n_) throw std::invalid_argument("element index out of range");
    m |= 1ull << e;
  }
  bool grew = true;
  while (grew) {
    grew = false;
    auto es = mask_to_elems(m);
    for (int a : es)
      for (int b : es) {
        int c = mul_[a][b];
        if (!(m >> c & 1)) {
          m |= 1ull << c;
          grew = true;
        }
      }
  }
  int idx = subgroup_index(m);
  if (idx < 0) throw std::logic_error("closure did not produce a known subgroup");
  return idx;
}

bool Group::subgroup_contains(int outer, int inner) const {
  return (masks_[inner] & ~masks_[outer]) == 0;
}

int Group::conjugate_subgroup(int s, int g) const {
  std::uint64_t m = 0;
  int gi = inv_[g];
  for (int e : subgroups_[s]) m |= 1ull << mul_[mul_[g][e]][gi];
  int idx = subgroup_index(m);
  if (idx < 0) throw std::logic_error("conjugate of a subgroup is not a subgroup");
  return idx;
}

int Group::intersect_subgroups(int a, int b) const {
  int idx = subgroup_index(masks_[a] & masks_[b]);
  if (idx < 0) throw std::logic_error("intersection of subgroups is not a subgroup");
  return idx;
}

std::optional<int> Group::conjugator(int s, int t) const {
  for (int g = 0; g < n_; ++g)
    if (conjugate_subgroup(s, g) == t) return g;
  return std::nullopt;
}

std::string Group::subgroup_name(int s) const {
  const auto& elems = subgroups_[s];
  const int m = static_cast<int>(elems.size());
  if (m == 1) return "e";
  if (m == n_ && !name_.empty()) return name_;
  bool cyclic = false;
  for (int e : elems)
    if (element_order(e) == m) cyclic = true;
  bool abelian = true;
  for (int a : elems)
    for (int b : elems)
      if (mul_[a][b] != mul_[b][a]) abelian = false;
  if (cyclic) return "C" + std::to_string(m);
  if (m == 4) return "V4";
  if (m == 6 && !abelian) return "S3";
  return "O" + std::to_string(m);
}

bool same_group_tables(const Group& a, const Group& b) {
  if (a.order() != b.order()) return false;
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      if (a.mul(x, y) != b.mul(x, y)) return false;
  return true;
}

bool GAction::operator==(const GAction& other) const {
  if (this == &other) return true;
  if (group_ != other.group_ && !same_group_tables(*group_, *other.group_)) return false;
  return table_ == other.table_;
}

GAction::GAction(GroupPtr group, std::vector<std::vector<int>> table)
    : group_(std::move(group)), table_(std::move(table)) {
  if (!group_) throw std::invalid_argument("action needs a group");
  const int n = group_->order();
  if (static_cast<int>(table_.size()) != n)
    throw std::invalid_argument("action table must have one row per group element");
  size_ = table_.empty() ? 0 : static_cast<int>(table_[0].size());
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != size_)
      throw std::invalid_argument("ragged action table");
    for (int v : row)
      if (v < 0 || v >= size_) throw std::invalid_argument("action value out of range");
  }
  for (int i = 0; i < size_; ++i)
    if (table_[0][i] != i) throw std::invalid_argument("identity must act trivially");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int gh = group_->mul(g, h);
      for (int i = 0; i < size_; ++i)
        if (table_[g][table_[h][i]] != table_[gh][i])
          throw std::invalid_argument("action does not respect multiplication");
    }
}

}  // namespace bispan
