#pragma once

#include <span>
#include <vector>

#include "agenda_metrics/lexicon.hpp"

namespace agenda_metrics {

/// Sparse non-negative weights over vocabulary indices.
///
/// Entries are kept sorted by index and every stored weight is > 0; zeros are
/// never materialized. Dot products walk both supports in lockstep.
class TermVector {
 public:
  struct Entry {
    TermIndex index;
    double weight;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  TermVector() = default;

  /// Raw occurrence counts of the given indices (order irrelevant).
  static TermVector from_indices(std::vector<TermIndex> indices);

  /// Adds `weight` (> 0) to the entry at `index`.
  void add(TermIndex index, double weight);

  double weight(TermIndex index) const;
  std::span<const Entry> entries() const& noexcept { return entries_; }
  std::span<const Entry> entries() const&& = delete;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  double dot(const TermVector& other) const;
  double norm() const;   // Euclidean
  double total() const;  // sum of weights

  /// this + factor * other, dropping entries whose result is below `prune`.
  TermVector plus_scaled(const TermVector& other, double factor, double prune = 0.0) const;

  friend bool operator==(const TermVector&, const TermVector&) = default;

 private:
  std::vector<Entry> entries_;
};

}  // namespace agenda_metrics
