#include "agenda_metrics/term_vector.hpp"

#include <algorithm>
#include <cmath>

namespace agenda_metrics {

TermVector TermVector::from_indices(std::vector<TermIndex> indices) {
  std::sort(indices.begin(), indices.end());
  TermVector out;
  for (std::size_t i = 0; i < indices.size();) {
    std::size_t j = i;
    while (j < indices.size() && indices[j] == indices[i]) ++j;
    out.entries_.push_back({indices[i], static_cast<double>(j - i)});
    i = j;
  }
  return out;
}

void TermVector::add(TermIndex index, double weight) {
  if (!(weight > 0.0)) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, TermIndex i) { return e.index < i; });
  if (it != entries_.end() && it->index == index) {
    it->weight += weight;
  } else {
    entries_.insert(it, {index, weight});
  }
}

double TermVector::weight(TermIndex index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, TermIndex i) { return e.index < i; });
  return (it != entries_.end() && it->index == index) ? it->weight : 0.0;
}

double TermVector::dot(const TermVector& other) const {
  double sum = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->index < b->index) {
      ++a;
    } else if (b->index < a->index) {
      ++b;
    } else {
      sum += a->weight * b->weight;
      ++a;
      ++b;
    }
  }
  return sum;
}

double TermVector::norm() const { return std::sqrt(dot(*this)); }

double TermVector::total() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.weight;
  return sum;
}

TermVector TermVector::plus_scaled(const TermVector& other, double factor, double prune) const {
  TermVector out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto keep = [&](TermIndex index, double w) {
    if (w > 0.0 && w >= prune) out.entries_.push_back({index, w});
  };
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
      keep(a->index, a->weight);
      ++a;
    } else if (a == entries_.end() || b->index < a->index) {
      keep(b->index, factor * b->weight);
      ++b;
    } else {
      keep(a->index, a->weight + factor * b->weight);
      ++a;
      ++b;
    }
  }
  return out;
}

}  // namespace agenda_metrics
