#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gcnnvc {

using Element = std::size_t;
using Permutation = std::vector<Element>;

enum class GroupKind { cyclic, dihedral, grid, product, custom };

// Textual / JSON description of a builder invocation. Strings use the forms
// `cyclic:N`, `dihedral:N`, `grid:HxW` and `product:(desc,desc)`.
struct GroupDescriptor {
  GroupKind kind = GroupKind::cyclic;
  std::size_t n = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<GroupDescriptor> factors;

  static GroupDescriptor parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const GroupDescriptor&, const GroupDescriptor&) = default;
};

/// A finite discretization G^r of a group, stored as index tables.
///
/// Elements are the indices [0, r). Every discretization carries a difference
/// table: entry (i, j) is the index, in the difference domain D, of
/// g_i^{-1} g_j. For closed groups D is the group itself and full composition
/// and inverse tables are available. For grid translations D is the set of
/// (2H-1)(2W-1) offset vectors and composition is undefined (zero padding).
///
/// Canonical enumeration orders:
///   cyclic:N    element i is rotation by i, identity 0
///   dihedral:N  element s*N+k is sigma^s rho^k (sigma rho = rho^-1 sigma)
///   grid:HxW    element row*W+col is the shift (row, col), identity 0
///   product     element i*|B|+j is (a_i, b_j)
class DiscretizedGroup {
 public:
  // Builds a closed group from raw tables without validating the axioms, so
  // corrupted tables can be fed to validate_group_axioms. Sizes must agree.
  static DiscretizedGroup from_tables(std::vector<std::uint32_t> compose,
                                      std::vector<std::uint32_t> inverse, Element identity,
                                      std::string label);

  std::size_t resolution() const { return r_; }
  Element identity() const { return identity_; }
  bool closed() const { return closed_; }
  const std::string& label() const { return label_; }
  GroupKind kind() const { return kind_; }
  const std::optional<GroupDescriptor>& descriptor() const { return descriptor_; }

  std::size_t diff_count() const { return diff_count_; }
  std::size_t identity_difference() const { return identity_diff_; }
  std::size_t difference(Element i, Element j) const { return diff_[i * r_ + j]; }
  std::span<const std::uint32_t> diff_table() const { return diff_; }

  // Closed groups only; UnsupportedOperation otherwise.
  Element compose(Element a, Element b) const;
  Element inverse(Element a) const;
  std::span<const std::uint32_t> compose_table() const;
  std::span<const std::uint32_t> inverse_table() const;

  // Grid geometry (zero for other kinds).
  std::size_t grid_height() const { return grid_h_; }
  std::size_t grid_width() const { return grid_w_; }
  // Index in D of the offset (dr, dc); InvalidArgument when out of range.
  std::size_t grid_offset_index(long dr, long dc) const;

 private:
  friend DiscretizedGroup build_cyclic(std::size_t);
  friend DiscretizedGroup build_dihedral(std::size_t);
  friend DiscretizedGroup build_grid_translation(std::size_t, std::size_t);
  friend DiscretizedGroup build_product(const DiscretizedGroup&, const DiscretizedGroup&);

  DiscretizedGroup() = default;
  void derive_closed_differences();

  std::size_t r_ = 0;
  Element identity_ = 0;
  bool closed_ = false;
  GroupKind kind_ = GroupKind::custom;
  std::string label_;
  std::optional<GroupDescriptor> descriptor_;

  std::size_t diff_count_ = 0;
  std::size_t identity_diff_ = 0;
  std::vector<std::uint32_t> diff_;
  std::vector<std::uint32_t> compose_;
  std::vector<std::uint32_t> inverse_;

  std::size_t grid_h_ = 0;
  std::size_t grid_w_ = 0;
};

DiscretizedGroup build_cyclic(std::size_t n);
DiscretizedGroup build_dihedral(std::size_t n);
DiscretizedGroup build_grid_translation(std::size_t height, std::size_t width);
DiscretizedGroup build_product(const DiscretizedGroup& a, const DiscretizedGroup& b);
DiscretizedGroup build_group(const GroupDescriptor& desc);
inline DiscretizedGroup build_group(std::string_view desc) {
  return build_group(GroupDescriptor::parse(desc));
}

enum class AxiomKind { closure, identity, inverse, associativity, difference_table };

struct AxiomViolation {
  AxiomKind kind;
  Element a = 0;
  Element b = 0;
  Element c = 0;

  std::string to_string() const;
};

struct ValidationReport {
  // At most kMaxListed violations are kept; `total` counts all of them.
  static constexpr std::size_t kMaxListed = 32;
  std::vector<AxiomViolation> violations;
  std::size_t total = 0;

  bool ok() const { return total == 0; }
};

// Exhaustive check of closure, identity, inverse, associativity and the
// consistency of the difference table. Closed groups only.
ValidationReport validate_group_axioms(const DiscretizedGroup& g);

// pi with (a o f)(g_j) = f(g_pi(j)), i.e. pi(j) = index of a^{-1} o g_j.
// The map a -> pi_a satisfies pi_{a o b} = pi_b o pi_a.
Permutation left_action_permutation(const DiscretizedGroup& g, Element a);

}  // namespace gcnnvc
