#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace layoutrec {

using Displacement = std::int64_t;

/// Ordered, non-empty list of displacements. Duplicates and negative values
/// are allowed.
class DisplacementSequence {
 public:
  /// Throws std::invalid_argument when `elems` is empty.
  explicit DisplacementSequence(std::vector<Displacement> elems);
  DisplacementSequence(std::initializer_list<Displacement> elems);

  std::size_t size() const noexcept { return elems_.size(); }
  Displacement operator[](std::size_t i) const noexcept { return elems_[i]; }
  Displacement front() const noexcept { return elems_.front(); }
  std::span<const Displacement> values() const noexcept { return elems_; }
  auto begin() const noexcept { return elems_.begin(); }
  auto end() const noexcept { return elems_.end(); }

  bool is_normal_form() const noexcept { return elems_.front() == 0; }
  bool has_duplicates() const;

  /// Shifted copy with a leading 0. Throws OverflowError if the spread of the
  /// values does not fit in an int64, so every pairwise difference is
  /// representable afterwards.
  DisplacementSequence normal_form() const;

  friend bool operator==(const DisplacementSequence&, const DisplacementSequence&) = default;

 private:
  std::vector<Displacement> elems_;
};

/// Read-only window [first, last] of a sequence, viewed in normal form:
/// element k is base[first + k] - base[first]. The base must outlive the view.
class SegmentView {
 public:
  SegmentView(const DisplacementSequence& base, std::size_t first, std::size_t last);

  std::size_t size() const noexcept { return last_ - first_ + 1; }
  std::size_t first() const noexcept { return first_; }
  std::size_t last() const noexcept { return last_; }
  /// Absolute value of the first element (the segment's shift).
  Displacement offset() const noexcept { return (*base_)[first_]; }

  /// Normalized element; throws OverflowError if the difference overflows.
  Displacement operator[](std::size_t k) const;

  SegmentView prefix(std::size_t length) const;
  std::vector<Displacement> values() const;

 private:
  const DisplacementSequence* base_;
  std::size_t first_;
  std::size_t last_;
};

}  // namespace layoutrec
