#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "opchain/core/scalar.hpp"

namespace opchain {

using Index = std::size_t;

// Finitely supported sequence. Entries are kept sorted by index with no
// stored zeros (zero in the sense of ScalarTraits<S>::is_zero).
template <Scalar S>
class FinVec {
 public:
  using Entry = std::pair<Index, S>;
  using Traits = ScalarTraits<S>;

  FinVec() = default;
  FinVec(std::initializer_list<Entry> entries) {
    for (const auto& [i, v] : entries) add_to(i, v);
  }

  static FinVec basis(Index i) {
    FinVec v;
    v.entries_.emplace_back(i, Traits::from_rational(1));
    return v;
  }

  // Builds from arbitrary (index, value) pairs; duplicates are summed.
  static FinVec from_entries(std::vector<Entry> raw) {
    std::stable_sort(raw.begin(), raw.end(),
                     [](const Entry& a, const Entry& b) { return a.first < b.first; });
    FinVec v;
    for (auto& [i, s] : raw) {
      if (!v.entries_.empty() && v.entries_.back().first == i) {
        v.entries_.back().second = v.entries_.back().second + s;
      } else {
        v.entries_.emplace_back(i, std::move(s));
      }
    }
    v.drop_zeros();
    return v;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  S operator[](Index i) const {
    auto it = find(i);
    return it == entries_.end() ? S() : it->second;
  }
  bool contains(Index i) const { return find(i) != entries_.end(); }
  // Largest index in the support; requires !empty().
  Index max_index() const { return entries_.back().first; }
  Index min_index() const { return entries_.front().first; }

  void add_to(Index i, const S& value) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) {
      it->second = it->second + value;
      if (Traits::is_zero(it->second)) entries_.erase(it);
    } else if (!Traits::is_zero(value)) {
      entries_.insert(it, Entry(i, value));
    }
  }

  FinVec scaled(const S& c) const {
    FinVec out;
    if (Traits::is_zero(c)) return out;
    out.entries_.reserve(entries_.size());
    for (const auto& [i, v] : entries_) out.entries_.emplace_back(i, c * v);
    out.drop_zeros();
    return out;
  }

  // this + c * other, by merging.
  FinVec axpy(const S& c, const FinVec& other) const {
    if (Traits::is_zero(c) || other.empty()) return *this;
    FinVec out;
    out.entries_.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        out.entries_.push_back(*a++);
      } else if (a == entries_.end() || b->first < a->first) {
        out.entries_.emplace_back(b->first, c * b->second);
        ++b;
      } else {
        out.entries_.emplace_back(a->first, a->second + c * b->second);
        ++a;
        ++b;
      }
    }
    out.drop_zeros();
    return out;
  }

  FinVec conj() const {
    FinVec out;
    out.entries_.reserve(entries_.size());
    for (const auto& [i, v] : entries_) out.entries_.emplace_back(i, Traits::conj(v));
    return out;
  }

  // Bilinear pairing sum_i f_i x_i (functional f applied to x, no conjugation).
  S pair(const FinVec& x) const {
    S acc{};
    auto a = entries_.begin();
    auto b = x.entries_.begin();
    while (a != entries_.end() && b != x.entries_.end()) {
      if (a->first < b->first) {
        ++a;
      } else if (b->first < a->first) {
        ++b;
      } else {
        acc = acc + a->second * b->second;
        ++a;
        ++b;
      }
    }
    return acc;
  }

  typename Traits::Magnitude norm_sq() const {
    auto acc = Traits::magnitude_zero();
    for (const auto& [i, v] : entries_) acc = acc + Traits::norm_sq(v);
    return acc;
  }

  // Coordinates restricted to [lo, hi).
  FinVec restricted(Index lo, Index hi) const {
    FinVec out;
    for (const auto& e : entries_) {
      if (e.first >= lo && e.first < hi) out.entries_.push_back(e);
    }
    return out;
  }

  friend FinVec operator+(const FinVec& a, const FinVec& b) {
    return a.axpy(Traits::from_rational(1), b);
  }
  friend FinVec operator-(const FinVec& a, const FinVec& b) {
    return a.axpy(Traits::from_rational(-1), b);
  }
  friend bool operator==(const FinVec& a, const FinVec& b) { return a.entries_ == b.entries_; }

 private:
  typename std::vector<Entry>::const_iterator find(Index i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, Index k) { return e.first < k; });
    return (it != entries_.end() && it->first == i) ? it : entries_.end();
  }

  void drop_zeros() {
    std::erase_if(entries_, [](const Entry& e) { return Traits::is_zero(e.second); });
  }

  std::vector<Entry> entries_;
};

}  // namespace opchain
