#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "freecum/partition.hpp"

namespace fc {

// Permutation of {0..n-1} in one-line form. Composition (s*t)(i) = s(t(i)).
class Permutation {
 public:
  static constexpr int kMaxN = 16;

  Permutation() = default;
  explicit Permutation(int n);
  static Permutation from_images(const std::vector<int>& image);
  // 0-based cycles; missing points are fixed
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);
  // "(1 3)(2 5 6)(4)"; n = 0 means the largest label seen
  static Permutation parse(std::string_view s, int n = 0);
  static Permutation transposition(int n, int a, int b);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<std::uint8_t>& image() const { return img_; }

  Permutation operator*(const Permutation& t) const;
  Permutation inverse() const;
  std::vector<std::vector<int>> cycles() const;  // each starts at its minimum, ordered by minimum
  int num_cycles() const;
  int length() const { return size() - num_cycles(); }
  IntegerPartition cycle_type() const;
  bool is_identity() const;
  // cycle containing i
  std::vector<int> cycle_of(int i) const;

  std::string to_string() const;
  std::size_t hash() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<std::uint8_t> img_;
};

Permutation gamma_of(const IntegerPartition& lambda);
// consecutive cycles in the given (unsorted) order
Permutation gamma_of_profile(const std::vector<int>& profile);
SetPartition orbit_partition(const Permutation& s);
// restriction to a union of cycles, relabeled increasingly onto 0..|G|-1
Permutation restrict(const Permutation& s, const std::vector<int>& subset);
Permutation restrict_mask(const Permutation& s, std::uint32_t mask);

void for_each_permutation(int n, const std::function<void(const Permutation&)>& f);
void for_each_in_class(const IntegerPartition& lambda, const std::function<void(const Permutation&)>& f);
std::vector<Permutation> conjugacy_class(const IntegerPartition& lambda);

constexpr int kMaxSymmetricN = 10;

}  // namespace fc

template <>
struct std::hash<fc::Permutation> {
  std::size_t operator()(const fc::Permutation& p) const { return p.hash(); }
};
