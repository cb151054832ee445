#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polyfreq/binning.hpp"

namespace polyfreq {

using BinIndex = std::int64_t;
using BinCount = std::uint64_t;
using CountMap = std::unordered_map<BinIndex, BinCount>;

// Counts per occupied bin. Empty bins are never stored, so memory and
// per-bin work scale with the number of occupied bins p_n, not with the
// range of the data.
class SparseHistogram {
 public:
  // Throws DomainError if a stored count is zero or the counts sum past n.
  SparseHistogram(BinningScheme scheme, CountMap counts, std::uint64_t sample_size);

  const BinningScheme& scheme() const noexcept { return scheme_; }
  double bin_width() const noexcept { return scheme_.bin_width(); }
  std::uint64_t sample_size() const noexcept { return n_; }
  std::size_t occupied_bins() const noexcept { return counts_.size(); }
  std::uint64_t total_count() const noexcept { return total_; }
  const CountMap& counts() const noexcept { return counts_; }

  BinCount count(BinIndex z) const;
  // count(z) / (n * b)
  double density(BinIndex z) const;

  // (index, count) pairs with ascending index.
  std::vector<std::pair<BinIndex, BinCount>> sorted_bins() const;

  // Rough heap footprint of the count map.
  std::size_t memory_bytes() const;

  friend bool operator==(const SparseHistogram& a, const SparseHistogram& b) {
    return a.scheme_ == b.scheme_ && a.n_ == b.n_ && a.counts_ == b.counts_;
  }

 private:
  BinningScheme scheme_;
  CountMap counts_;
  std::uint64_t n_;
  std::uint64_t total_;
};

// Single-pass streaming accumulator. Non-finite values are not binned;
// their ordinal positions are remembered so the caller can report them.
class HistogramBuilder {
 public:
  explicit HistogramBuilder(BinningScheme scheme) : scheme_(scheme) {}

  void add(double x);
  // Adds another builder's counts. Bin counts are integers, so any merge
  // order gives the same result.
  void merge(const HistogramBuilder& other);

  std::uint64_t seen() const noexcept { return seen_; }
  const std::vector<std::size_t>& rejected() const noexcept { return rejected_; }

  // Throws DataError if any value was rejected or nothing was added.
  SparseHistogram finish() const;

 private:
  BinningScheme scheme_;
  CountMap counts_;
  std::uint64_t seen_ = 0;
  std::vector<std::size_t> rejected_;
};

// Bins a whole sample. With threads != 1 the sample is partitioned and the
// partial count maps are merged; the result is identical to the sequential
// build. Throws DataError listing indices of non-finite entries, DomainError
// for an empty sample.
SparseHistogram build_histogram(std::span<const double> sample, const BinningScheme& scheme,
                                unsigned threads = 1);

// Histogram density f_n(x) = count(bin of x) / (n b).
double histogram_eval(const SparseHistogram& h, double x);

// {"bin_width": b, "n": n, "bins": [[index, count], ...]} with ascending indices.
std::string histogram_to_json(const SparseHistogram& h);
SparseHistogram histogram_from_json(std::string_view text);

}  // namespace polyfreq
