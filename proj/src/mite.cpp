#include "stabtherm/mite.hpp"

#include <atomic>
#include <mutex>

#include "stabtherm/parallel.hpp"
#include "stabtherm/subsets.hpp"

namespace stabtherm {

MiteVerdict is_mite_on(const StabilizerTableau& t, const BitVec& region) {
  if (region.size() != t.num_sites())
    throw std::invalid_argument("region size does not match tableau");
  MiteVerdict v;
  auto sub = t.subgroup_supported_in(region);
  if (sub.empty()) {
    v.holds = true;
    v.regions_checked = 1;
    return v;
  }
  v.holds = false;
  v.witness = MiteWitness{mask_sites(region), sub.front()};
  return v;
}

MiteVerdict k_body_mite(const StabilizerTableau& t, uint32_t k,
                        unsigned threads) {
  const uint32_t n = t.num_sites();
  if (k < 1 || k > n)
    throw std::invalid_argument("subsystem size must lie in 1..n");
  MiteVerdict verdict;
  // Only subsets of exactly k sites need scanning: a violation on fewer
  // sites is also one on any k-site superset.
  const uint64_t total = ColexSubsets::count(n, k);
  std::atomic<uint64_t> first_bad{~uint64_t{0}};
  parallel_chunks(total, threads, [&](uint64_t begin, uint64_t end, unsigned) {
    ColexSubsets subs(n, k, begin);
    for (uint64_t idx = begin; idx < end; ++idx, subs.advance()) {
      if (idx >= first_bad.load(std::memory_order_relaxed)) break;
      BitVec region(n);
      for (uint32_t s : subs.current()) region.set(s, true);
      if (t.has_element_supported_in(region)) {
        uint64_t cur = first_bad.load(std::memory_order_relaxed);
        while (idx < cur &&
               !first_bad.compare_exchange_weak(cur, idx,
                                                std::memory_order_relaxed)) {
        }
        break;
      }
    }
  });
  // The winning index is the true colex minimum: no thread skips an index
  // below the current first_bad, and first_bad only ever holds real hits.
  // Counting confirmed regions this way keeps the verdict independent of
  // the thread count.
  const uint64_t bad = first_bad.load();
  verdict.regions_checked = bad == ~uint64_t{0} ? total : bad;
  if (bad == ~uint64_t{0}) {
    verdict.holds = true;
    return verdict;
  }
  ColexSubsets subs(n, k, bad);
  BitVec region(n);
  for (uint32_t s : subs.current()) region.set(s, true);
  auto sub = t.subgroup_supported_in(region);
  verdict.holds = false;
  verdict.witness = MiteWitness{mask_sites(region), sub.front()};
  return verdict;
}

MiteVerdict l_local_mite(const StabilizerTableau& t, uint32_t l) {
  const uint32_t n = t.num_sites();
  if (l < 1 || l > n)
    throw std::invalid_argument("window length must lie in 1..n");
  MiteVerdict verdict;
  for (uint32_t start = 1; start <= n; ++start) {
    BitVec region(n);
    for (uint32_t j = 0; j < l; ++j) region.set((start - 1 + j) % n, true);
    if (t.has_element_supported_in(region)) {
      auto sub = t.subgroup_supported_in(region);
      verdict.holds = false;
      verdict.witness = MiteWitness{mask_sites(region), sub.front()};
      return verdict;
    }
    ++verdict.regions_checked;
  }
  verdict.holds = true;
  return verdict;
}

bool graph_mite_criterion(const Graph& g, const BitVec& region) {
  const uint32_t n = g.num_sites();
  if (region.size() != n)
    throw std::invalid_argument("region size does not match graph");
  const auto inside = mask_sites(region);
  const uint32_t k = static_cast<uint32_t>(inside.size());
  if (k == 0) return true;
  if (k > 24)
    throw SubsetLimitError("criterion scans 2^|A| subsets; |A| > 24 refused");
  std::vector<uint32_t> outside;
  for (uint32_t s = 1; s <= n; ++s)
    if (!region.get(s - 1)) outside.push_back(s);
  // Precompute, per outside vertex, the bitmask of its neighbors inside A
  // over the compressed index space of `inside`.
  std::vector<uint64_t> nbr(outside.size(), 0);
  for (size_t o = 0; o < outside.size(); ++o) {
    const BitVec& row = g.neighbors(outside[o]);
    for (uint32_t p = 0; p < k; ++p)
      if (row.get(inside[p] - 1)) nbr[o] |= uint64_t{1} << p;
  }
  const uint64_t lim = uint64_t{1} << k;
  for (uint64_t b = 1; b < lim; ++b) {
    bool found = false;
    for (size_t o = 0; o < outside.size() && !found; ++o)
      found = std::popcount(nbr[o] & b) & 1;
    if (!found) return false;
  }
  return true;
}

uint32_t max_uniformity(const StabilizerTableau& t) {
  auto w = t.min_weight(t.num_sites());
  if (!w) throw std::logic_error("a nontrivial group always has finite weight");
  return *w - 1;
}

}  // namespace stabtherm
