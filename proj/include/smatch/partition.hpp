#ifndef SMATCH_PARTITION_HPP
#define SMATCH_PARTITION_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smatch {

// A partition of the site indices {1..n}, i.e. one type of match.  Stored in
// canonical form as a restricted growth string: label(i) is the 0-based block
// id of site i+1, and block ids appear in order of first use.  This makes the
// block list automatically ordered by smallest element, so equality of the
// label strings is equality of partitions.
class Partition {
public:
  Partition() = default;

  static Partition single_block(int n); // the true match, one block {1..n}
  static Partition discrete(int n);     // n singleton blocks
  // Accepts any labelling (one label per site); relabels to canonical form.
  static Partition from_labels(std::span<const int> labels);
  // blocks must cover 1..n exactly once, no empty block.
  static Partition from_blocks(int n, const std::vector<std::vector<int>>& blocks);
  // Parses the text form "1,2|3" for {{1,2},{3}}.
  static Partition parse(std::string_view text);

  int size() const { return static_cast<int>(labels_.size()); } // n
  int block_count() const { return block_count_; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }

  // Sites are 1-based.
  bool same_block(int i, int j) const { return labels_[i - 1] == labels_[j - 1]; }

  // Blocks ordered by smallest element, elements ascending; sites 1-based.
  std::vector<std::vector<int>> blocks() const;

  std::string to_string() const; // "1,2|3"

  bool operator==(const Partition&) const = default;
  // Orders by n first, then lexicographically on the label string.  Matching
  // the enumeration order of enumerate_partitions.
  bool operator<(const Partition& other) const;

private:
  std::vector<std::uint8_t> labels_;
  int block_count_ = 0;

  friend std::vector<Partition> enumerate_partitions(int n);
  Partition(std::vector<std::uint8_t> canonical_labels, int block_count)
      : labels_(std::move(canonical_labels)), block_count_(block_count) {}
};

// An n-tuple of observation keys, one per site, in site order.
using ObservationTuple = std::vector<std::string>;

// Bell number B(n), the size of the set of partitions of {1..n}.  n <= 25.
std::int64_t bell_number(int n);

// All partitions of {1..n} in restricted-growth-string lexicographic order
// (the single-block partition first, the discrete partition last).
// 1 <= n <= 12.
std::vector<Partition> enumerate_partitions(int n);

// The type of match of a tuple: sites i and j share a block iff the
// observations at i and j are equal.
Partition type_of_match(const ObservationTuple& tuple);
// Integer-key fast path used by the counting kernels and the brute-force
// oracle; same semantics.
Partition type_of_match(std::span<const int> keys);

// True iff a is coarser than or equal to b: every pair of sites co-blocked in
// b is co-blocked in a.  The single-block partition precedes everything; the
// discrete partition is the maximum.
bool precedes(const Partition& a, const Partition& b);

// Number of blocks; free-function form of Partition::block_count.
int block_count(const Partition& p);

// The partitions covering p in the refinement order: all results of splitting
// one block of p into two non-empty parts.  Sorted canonically.  The discrete
// partition returns an empty list.
std::vector<Partition> immediate_successors(const Partition& p);

// All partitions strictly preceding m (i.e. strictly coarser), produced by
// merging blocks of m.  Deterministic order.  There are Bell(#m)-1 of them.
std::vector<Partition> strict_predecessors(const Partition& m);

// DOT digraph of the Hasse diagram of the partitions of {1..n}: one node per
// partition labelled with its text form, one edge q -> p per cover relation
// q covering p, nodes ranked by block count (finest at the top).  1 <= n <= 7.
std::string export_hasse_dot(int n);

} // namespace smatch

template <> struct std::hash<smatch::Partition> {
  std::size_t operator()(const smatch::Partition& p) const noexcept {
    // FNV-1a over the label bytes
    std::size_t h = 1469598103934665603ull;
    for (auto b : p.labels()) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return h;
  }
};

#endif
