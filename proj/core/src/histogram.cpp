#include "polyfreq/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "polyfreq/error.hpp"
#include "polyfreq/parallel.hpp"

namespace polyfreq {

namespace {

std::string list_positions(const std::vector<std::size_t>& positions) {
  constexpr std::size_t kShown = 20;
  std::ostringstream os;
  for (std::size_t i = 0; i < positions.size() && i < kShown; ++i) {
    if (i) os << ", ";
    os << positions[i];
  }
  if (positions.size() > kShown) os << ", ... (" << positions.size() << " total)";
  return os.str();
}

}  // namespace

SparseHistogram::SparseHistogram(BinningScheme scheme, CountMap counts, std::uint64_t sample_size)
    : scheme_(scheme), counts_(std::move(counts)), n_(sample_size), total_(0) {
  for (const auto& [z, c] : counts_) {
    if (c == 0) throw DomainError("sparse histogram cannot store an empty bin");
    total_ += c;
  }
  if (n_ == 0) throw DomainError("histogram sample size must be positive");
  if (total_ > n_) throw DomainError("bin counts exceed the sample size");
}

BinCount SparseHistogram::count(BinIndex z) const {
  const auto it = counts_.find(z);
  return it == counts_.end() ? 0 : it->second;
}

double SparseHistogram::density(BinIndex z) const {
  const auto it = counts_.find(z);
  if (it == counts_.end()) return 0.0;
  return static_cast<double>(it->second) / (static_cast<double>(n_) * scheme_.bin_width());
}

std::vector<std::pair<BinIndex, BinCount>> SparseHistogram::sorted_bins() const {
  std::vector<std::pair<BinIndex, BinCount>> bins(counts_.begin(), counts_.end());
  std::sort(bins.begin(), bins.end());
  return bins;
}

std::size_t SparseHistogram::memory_bytes() const {
  // One node per entry plus the bucket array.
  constexpr std::size_t kNode = sizeof(void*) + sizeof(std::pair<const BinIndex, BinCount>) + sizeof(std::size_t);
  return counts_.size() * kNode + counts_.bucket_count() * sizeof(void*);
}

void HistogramBuilder::add(double x) {
  const std::size_t position = seen_++;
  if (!std::isfinite(x)) {
    rejected_.push_back(position);
    return;
  }
  ++counts_[scheme_.bin_index(x)];
}

void HistogramBuilder::merge(const HistogramBuilder& other) {
  if (!(other.scheme_ == scheme_)) throw DomainError("cannot merge histograms with different bins");
  for (const auto& [z, c] : other.counts_) counts_[z] += c;
  for (std::size_t p : other.rejected_) rejected_.push_back(seen_ + p);
  seen_ += other.seen_;
}

SparseHistogram HistogramBuilder::finish() const {
  if (seen_ == 0) throw DomainError("cannot build a histogram from an empty sample");
  if (!rejected_.empty()) {
    throw DataError("non-finite values at indices " + list_positions(rejected_), rejected_);
  }
  return SparseHistogram(scheme_, counts_, seen_);
}

SparseHistogram build_histogram(std::span<const double> sample, const BinningScheme& scheme,
                                unsigned threads) {
  if (sample.empty()) throw DomainError("cannot build a histogram from an empty sample");

  constexpr std::size_t kMinChunk = 1 << 16;
  const std::size_t chunks = std::clamp<std::size_t>(sample.size() / kMinChunk, 1, resolve_threads(threads));
  std::vector<HistogramBuilder> partial(chunks, HistogramBuilder(scheme));
  const std::size_t step = (sample.size() + chunks - 1) / chunks;
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t begin = c * step;
    const std::size_t end = std::min(sample.size(), begin + step);
    for (std::size_t i = begin; i < end; ++i) partial[c].add(sample[i]);
  });
  for (std::size_t c = 1; c < chunks; ++c) partial.front().merge(partial[c]);
  return partial.front().finish();
}

double histogram_eval(const SparseHistogram& h, double x) {
  return h.density(h.scheme().bin_index(x));
}

std::string histogram_to_json(const SparseHistogram& h) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& [z, c] : h.sorted_bins()) bins.push_back({z, c});
  nlohmann::json doc;
  doc["bin_width"] = h.bin_width();
  doc["n"] = h.sample_size();
  doc["bins"] = std::move(bins);
  return doc.dump();
}

SparseHistogram histogram_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    CountMap counts;
    for (const auto& entry : doc.at("bins")) {
      const auto z = entry.at(0).get<BinIndex>();
      const auto c = entry.at(1).get<BinCount>();
      if (!counts.emplace(z, c).second) throw DataError("duplicate bin index " + std::to_string(z));
    }
    return SparseHistogram(BinningScheme(doc.at("bin_width").get<double>()), std::move(counts),
                           doc.at("n").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed histogram JSON: ") + e.what());
  }
}

}  // namespace polyfreq
