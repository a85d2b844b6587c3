#include "layoutrec/sequence.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "layoutrec/checked.hpp"

namespace layoutrec {

DisplacementSequence::DisplacementSequence(std::vector<Displacement> elems)
    : elems_(std::move(elems)) {
  if (elems_.empty()) throw std::invalid_argument("displacement sequence must not be empty");
}

DisplacementSequence::DisplacementSequence(std::initializer_list<Displacement> elems)
    : DisplacementSequence(std::vector<Displacement>(elems)) {}

bool DisplacementSequence::has_duplicates() const {
  std::vector<Displacement> sorted = elems_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

DisplacementSequence DisplacementSequence::normal_form() const {
  auto [lo, hi] = std::minmax_element(elems_.begin(), elems_.end());
  (void)checked_sub(*hi, *lo);
  std::vector<Displacement> shifted;
  shifted.reserve(elems_.size());
  const Displacement origin = elems_.front();
  for (Displacement d : elems_) shifted.push_back(checked_sub(d, origin));
  return DisplacementSequence(std::move(shifted));
}

SegmentView::SegmentView(const DisplacementSequence& base, std::size_t first, std::size_t last)
    : base_(&base), first_(first), last_(last) {
  if (first > last || last >= base.size()) {
    throw ContractViolation("segment [" + std::to_string(first) + ", " + std::to_string(last) +
                            "] out of range for length " + std::to_string(base.size()));
  }
}

Displacement SegmentView::operator[](std::size_t k) const {
  return checked_sub((*base_)[first_ + k], (*base_)[first_]);
}

SegmentView SegmentView::prefix(std::size_t length) const {
  if (length == 0 || length > size()) throw ContractViolation("prefix length out of range");
  return SegmentView(*base_, first_, first_ + length - 1);
}

std::vector<Displacement> SegmentView::values() const {
  std::vector<Displacement> out;
  out.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) out.push_back((*this)[k]);
  return out;
}

}  // namespace layoutrec
