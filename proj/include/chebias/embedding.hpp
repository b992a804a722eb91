#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chebias/error.hpp"
#include "chebias/perm_group.hpp"

namespace chebias {

/// A subgroup G inside an ambient group G+ with coset bookkeeping.
///
/// Coset representatives come from a greedy sweep over the ambient element
/// list, so each representative is the smallest element of its coset.
class SubgroupEmbedding {
 public:
  SubgroupEmbedding(GroupPtr ambient, GroupPtr sub) : ambient_(std::move(ambient)), sub_(std::move(sub)) {
    if (!ambient_ || !sub_) throw error("SubgroupEmbedding: null group");
    if (ambient_->degree() != sub_->degree()) throw error("SubgroupEmbedding: degree mismatch");
    const std::size_t n = ambient_->order();
    sub_to_ambient_.reserve(sub_->order());
    ambient_to_sub_.assign(n, npos);
    for (std::size_t i = 0; i < sub_->order(); ++i) {
      auto j = ambient_->index_of(sub_->element(i));
      if (!j) throw error("SubgroupEmbedding: not a subgroup (" + sub_->element(i).to_cycles() + " missing)");
      sub_to_ambient_.push_back(*j);
      ambient_to_sub_[*j] = i;
    }
    sweep(left_reps_, left_coset_of_, /*left=*/true);
    sweep(right_reps_, right_coset_of_, /*left=*/false);
    if (left_reps_.size() * sub_->order() != n) throw error("SubgroupEmbedding: coset count mismatch");
  }

  const PermutationGroup& ambient() const noexcept { return *ambient_; }
  const PermutationGroup& sub() const noexcept { return *sub_; }
  const GroupPtr& ambient_ptr() const noexcept { return ambient_; }
  const GroupPtr& sub_ptr() const noexcept { return sub_; }

  std::size_t index() const noexcept { return left_reps_.size(); }

  /// Representatives a of the left cosets aG (ambient element indices).
  const std::vector<std::size_t>& left_coset_reps() const noexcept { return left_reps_; }
  /// Representatives t of the right cosets Gt (ambient element indices).
  const std::vector<std::size_t>& right_coset_reps() const noexcept { return right_reps_; }
  std::size_t left_coset_of(std::size_t ambient_index) const { return left_coset_of_.at(ambient_index); }
  std::size_t right_coset_of(std::size_t ambient_index) const { return right_coset_of_.at(ambient_index); }

  std::size_t to_ambient(std::size_t sub_index) const { return sub_to_ambient_.at(sub_index); }
  std::optional<std::size_t> to_sub(std::size_t ambient_index) const {
    std::size_t s = ambient_to_sub_.at(ambient_index);
    if (s == npos) return std::nullopt;
    return s;
  }

  /// Class of the ambient group containing the given class of the subgroup.
  std::size_t ambient_class_of(std::size_t sub_class) const {
    return ambient_->class_of(to_ambient(sub_->class_members(sub_class).front()));
  }

 private:
  void sweep(std::vector<std::size_t>& reps, std::vector<std::size_t>& coset_of, bool left) {
    const std::size_t n = ambient_->order();
    coset_of.assign(n, npos);
    for (std::size_t a = 0; a < n; ++a) {
      if (coset_of[a] != npos) continue;
      const std::size_t c = reps.size();
      reps.push_back(a);
      for (std::size_t h : sub_to_ambient_) {
        std::size_t x = left ? ambient_->multiply(a, h) : ambient_->multiply(h, a);
        if (coset_of[x] != npos) throw error("SubgroupEmbedding: overlapping cosets");
        coset_of[x] = c;
      }
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  GroupPtr ambient_;
  GroupPtr sub_;
  std::vector<std::size_t> sub_to_ambient_;
  std::vector<std::size_t> ambient_to_sub_;
  std::vector<std::size_t> left_reps_, left_coset_of_;
  std::vector<std::size_t> right_reps_, right_coset_of_;
};

}  // namespace chebias
