#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freecum/rational.hpp"

namespace fc {

// Integer partition, parts weakly decreasing.
class IntegerPartition {
 public:
  IntegerPartition() = default;
  explicit IntegerPartition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int size() const { return n_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int multiplicity(int part) const;
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }

  std::string to_string() const;  // "3+2+2"
  static IntegerPartition parse(std::string_view s);  // accepts '+' or ',' separators

  auto operator<=>(const IntegerPartition&) const = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

std::vector<IntegerPartition> integer_partitions(int n);
// all partitions of every n in [1, max_n], ordered by n then reverse-lex
std::vector<IntegerPartition> integer_partitions_upto(int max_n, int max_length = 1 << 20);

// Set partition of {0..n-1}; canonical restricted growth string, blocks numbered by minimum.
class SetPartition {
 public:
  static constexpr int kMaxN = 16;

  SetPartition() = default;
  static SetPartition finest(int n);
  static SetPartition coarsest(int n);
  static SetPartition from_labels(const std::vector<int>& labels);
  static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks);
  static SetPartition from_masks(int n, const std::vector<std::uint32_t>& masks);
  static SetPartition parse(std::string_view s);  // "{1,3|2,5,6|4}"

  int size() const { return static_cast<int>(rgs_.size()); }
  int num_blocks() const { return nblocks_; }
  int block_of(int i) const { return rgs_[i]; }
  const std::vector<std::uint8_t>& rgs() const { return rgs_; }
  std::vector<std::vector<int>> blocks() const;
  std::vector<std::uint32_t> block_masks() const;

  bool leq(const SetPartition& o) const;  // this refines o
  SetPartition join(const SetPartition& o) const;
  SetPartition meet(const SetPartition& o) const;
  bool is_finest() const { return nblocks_ == size(); }
  bool is_coarsest() const { return nblocks_ <= 1; }

  std::string to_string() const;
  std::size_t hash() const;

  auto operator<=>(const SetPartition&) const = default;

 private:
  std::vector<std::uint8_t> rgs_;
  int nblocks_ = 0;
};

// Möbius function of the partition lattice, requires a <= b.
Integer mobius(const SetPartition& a, const SetPartition& b);

// L[pt, pb; base] = #base - #pt - #pb + #(pt v pb); requires pt, pb >= base.
int excess_L(const SetPartition& pt, const SetPartition& pb, const SetPartition& base);

// Enumerates every partition of {0..n-1} (at or above floor, when given).
void for_each_set_partition(int n, const std::function<void(const SetPartition&)>& f,
                            const SetPartition* floor = nullptr);
std::vector<SetPartition> enumerate_set_partitions(int n, const std::optional<SetPartition>& floor = {});

constexpr int kMaxSetPartitionN = 12;

}  // namespace fc

template <>
struct std::hash<fc::SetPartition> {
  std::size_t operator()(const fc::SetPartition& p) const { return p.hash(); }
};
