#include "smatch/partition.hpp"

#include "smatch/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <unordered_map>

namespace smatch {

namespace {

constexpr int kMaxSites = 64;         // ceiling for any partition/tuple
constexpr int kMaxEnumerateSites = 12; // Bell(12) = 4,213,597
constexpr int kMaxHasseSites = 7;

void check_site_count(int n, int limit, const char* what) {
  if (n < 1 || n > limit)
    throw ValidationError(std::string(what) + ": site count " + std::to_string(n) +
                          " outside [1, " + std::to_string(limit) + "]");
}

// Canonicalizes an arbitrary labelling into first-use order.
template <class Label>
std::pair<std::vector<std::uint8_t>, int> canonicalize(std::span<const Label> raw) {
  std::vector<std::uint8_t> out(raw.size());
  std::unordered_map<Label, std::uint8_t> seen;
  seen.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto [it, inserted] = seen.emplace(raw[i], static_cast<std::uint8_t>(seen.size()));
    out[i] = it->second;
  }
  return {std::move(out), static_cast<int>(seen.size())};
}

} // namespace

Partition Partition::single_block(int n) {
  check_site_count(n, kMaxSites, "single_block");
  return Partition(std::vector<std::uint8_t>(n, 0), 1);
}

Partition Partition::discrete(int n) {
  check_site_count(n, kMaxSites, "discrete");
  std::vector<std::uint8_t> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = static_cast<std::uint8_t>(i);
  return Partition(std::move(labels), n);
}

Partition Partition::from_labels(std::span<const int> labels) {
  check_site_count(static_cast<int>(labels.size()), kMaxSites, "from_labels");
  auto [canon, count] = canonicalize(labels);
  return Partition(std::move(canon), count);
}

Partition Partition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  check_site_count(n, kMaxSites, "from_blocks");
  std::vector<int> label_of(n, -1);
  int next = 0;
  for (const auto& block : blocks) {
    if (block.empty()) throw ValidationError("from_blocks: empty block");
    for (int site : block) {
      if (site < 1 || site > n)
        throw ValidationError("from_blocks: site " + std::to_string(site) +
                              " outside 1.." + std::to_string(n));
      if (label_of[site - 1] != -1)
        throw ValidationError("from_blocks: site " + std::to_string(site) + " appears twice");
      label_of[site - 1] = next;
    }
    ++next;
  }
  for (int i = 0; i < n; ++i)
    if (label_of[i] == -1)
      throw ValidationError("from_blocks: site " + std::to_string(i + 1) + " missing");
  return from_labels(label_of);
}

Partition Partition::parse(std::string_view text) {
  std::vector<std::vector<int>> blocks(1);
  int n = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == '|') {
      blocks.emplace_back();
      ++pos;
    } else if (text[pos] == ',') {
      ++pos;
    } else {
      int value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
      if (ec != std::errc() || ptr == text.data() + pos)
        throw ValidationError("parse: bad partition text '" + std::string(text) + "'");
      blocks.back().push_back(value);
      pos = static_cast<std::size_t>(ptr - text.data());
      ++n;
    }
  }
  if (n == 0) throw ValidationError("parse: empty partition text");
  return from_blocks(n, blocks);
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out(block_count_);
  for (int i = 0; i < size(); ++i) out[labels_[i]].push_back(i + 1);
  return out;
}

std::string Partition::to_string() const {
  std::string out;
  const auto bs = blocks();
  for (std::size_t b = 0; b < bs.size(); ++b) {
    if (b) out += '|';
    for (std::size_t k = 0; k < bs[b].size(); ++k) {
      if (k) out += ',';
      out += std::to_string(bs[b][k]);
    }
  }
  return out;
}

bool Partition::operator<(const Partition& other) const {
  if (size() != other.size()) return size() < other.size();
  return labels_ < other.labels_;
}

std::int64_t bell_number(int n) {
  if (n < 0 || n > 25) throw ValidationError("bell_number: n outside [0, 25]");
  // Bell triangle
  std::vector<std::int64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> next;
    next.reserve(row.size() + 1);
    next.push_back(row.back());
    for (std::int64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

std::vector<Partition> enumerate_partitions(int n) {
  check_site_count(n, kMaxEnumerateSites, "enumerate_partitions");
  std::vector<Partition> out;
  out.reserve(static_cast<std::size_t>(bell_number(n)));

  // Restricted growth strings in lexicographic order: a[0] = 0 and
  // a[i] <= 1 + max(a[0..i-1]).
  std::vector<std::uint8_t> a(n, 0);
  std::vector<std::uint8_t> prefix_max(n, 0); // max of a[0..i]
  while (true) {
    out.push_back(Partition(a, prefix_max[n - 1] + 1));
    int i = n - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

Partition type_of_match(const ObservationTuple& tuple) {
  if (tuple.empty()) throw ValidationError("type_of_match: empty tuple");
  if (tuple.size() > kMaxSites)
    throw ValidationError("type_of_match: tuple longer than 64 sites");
  std::vector<std::uint8_t> labels(tuple.size());
  std::unordered_map<std::string_view, std::uint8_t> seen;
  seen.reserve(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    auto [it, inserted] =
        seen.emplace(std::string_view(tuple[i]), static_cast<std::uint8_t>(seen.size()));
    labels[i] = it->second;
  }
  std::vector<int> as_int(labels.begin(), labels.end());
  return Partition::from_labels(as_int);
}

Partition type_of_match(std::span<const int> keys) {
  if (keys.empty()) throw ValidationError("type_of_match: empty tuple");
  return Partition::from_labels(keys);
}

bool precedes(const Partition& a, const Partition& b) {
  if (a.size() != b.size())
    throw ValidationError("precedes: partitions of different site counts (" +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  // a <= b iff the sites of every block of b share one block of a, i.e. the
  // label map b -> a is a function.
  std::array<int, 256> image;
  image.fill(-1);
  const auto& la = a.labels();
  const auto& lb = b.labels();
  for (int i = 0; i < a.size(); ++i) {
    int& slot = image[lb[i]];
    if (slot == -1)
      slot = la[i];
    else if (slot != la[i])
      return false;
  }
  return true;
}

int block_count(const Partition& p) { return p.block_count(); }

std::vector<Partition> immediate_successors(const Partition& p) {
  std::vector<Partition> out;
  const auto bs = p.blocks();
  std::vector<int> labels(p.labels().begin(), p.labels().end());
  for (std::size_t b = 0; b < bs.size(); ++b) {
    const auto& block = bs[b];
    const auto k = block.size();
    if (k < 2) continue;
    // Each split into two non-empty parts, counted once: the part keeping
    // block[0] is selected by the complement of a non-empty subset of the
    // remaining k-1 elements.
    const int fresh = p.block_count(); // canonicalized away later
    for (std::uint64_t moved = 1; moved < (std::uint64_t(1) << (k - 1)); ++moved) {
      for (std::size_t j = 1; j < k; ++j)
        if (moved & (std::uint64_t(1) << (j - 1))) labels[block[j] - 1] = fresh;
      out.push_back(Partition::from_labels(labels));
      for (std::size_t j = 1; j < k; ++j) labels[block[j] - 1] = static_cast<int>(b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Partition> strict_predecessors(const Partition& m) {
  std::vector<Partition> out;
  const int k = m.block_count();
  if (k < 2) return out;
  if (k > kMaxEnumerateSites)
    throw CapacityError("strict_predecessors: " + std::to_string(k) +
                        " blocks exceeds the enumeration ceiling of 12");
  out.reserve(static_cast<std::size_t>(bell_number(k)) - 1);
  std::vector<int> merged(m.size());
  for (const Partition& grouping : enumerate_partitions(k)) {
    if (grouping.block_count() == k) continue; // the identity grouping is m itself
    const auto& g = grouping.labels();
    for (int i = 0; i < m.size(); ++i) merged[i] = g[m.labels()[i]];
    out.push_back(Partition::from_labels(merged));
  }
  return out;
}

std::string export_hasse_dot(int n) {
  check_site_count(n, kMaxHasseSites, "export_hasse_dot");
  const auto parts = enumerate_partitions(n);
  std::unordered_map<Partition, std::size_t> index;
  index.reserve(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) index.emplace(parts[i], i);

  std::string dot = "digraph hasse {\n";
  dot += "  rankdir=TB;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < parts.size(); ++i)
    dot += "  n" + std::to_string(i) + " [label=\"" + parts[i].to_string() + "\"];\n";
  // finest partitions at the top of the diagram
  for (int blocks = n; blocks >= 1; --blocks) {
    dot += "  { rank=same;";
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (parts[i].block_count() == blocks) dot += " n" + std::to_string(i) + ";";
    dot += " }\n";
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const Partition& q : immediate_successors(parts[i]))
      dot += "  n" + std::to_string(index.at(q)) + " -> n" + std::to_string(i) + ";\n";
  dot += "}\n";
  return dot;
}

} // namespace smatch
