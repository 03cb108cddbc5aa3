#include "scidtb/analysis.hpp"

#include <algorithm>
#include <cstdlib>

namespace scidtb {
namespace {

constexpr std::array<std::string_view, kNumDistanceBuckets> kBucketLabels = {
    "0", "1", "2", "3-5", "6-10", "11-15", ">15"};

bool counts_for_distance(const EduNode& e) {
  return e.head != kVirtualRoot && e.relation.fine != Fine::kSameUnit;
}

}  // namespace

bool is_projective(const DiscourseTree& tree) {
  const int n = tree.size();
  auto head_of = [&](int v) { return v == kVirtualRoot ? -1 : tree.edu(v).head; };
  auto dominates = [&](int h, int v) {
    for (int u = v; u != -1; u = head_of(u)) {
      if (u == h) return true;
    }
    return false;
  };
  for (const auto& e : tree.edus) {
    const int lo = std::min(e.head, e.id);
    const int hi = std::max(e.head, e.id);
    for (int k = lo + 1; k < hi; ++k) {
      if (k > n || !dominates(e.head, k)) return false;
    }
  }
  return true;
}

int dependency_distance(EduId head, EduId dep) {
  if (head == kVirtualRoot) throw RootArcError("ROOT arcs have no dependency distance");
  return std::abs(head - dep) - 1;
}

int distance_bucket(int distance) {
  if (distance <= 2) return distance;
  if (distance <= 5) return 3;
  if (distance <= 10) return 4;
  if (distance <= 15) return 5;
  return 6;
}

std::string_view distance_bucket_label(int bucket) { return kBucketLabels[bucket]; }

double DistanceHistogram::long_range_share() const {
  if (total == 0) return 0.0;
  return static_cast<double>(counts[4] + counts[5] + counts[6]) / static_cast<double>(total);
}

DistanceHistogram& DistanceHistogram::operator+=(const DistanceHistogram& other) {
  for (int b = 0; b < kNumDistanceBuckets; ++b) counts[b] += other.counts[b];
  total += other.total;
  return *this;
}

DistanceHistogram distance_histogram(const std::vector<DiscourseTree>& corpus) {
  DistanceHistogram h;
  for (const auto& tree : corpus) {
    for (const auto& e : tree.edus) {
      if (!counts_for_distance(e)) continue;
      ++h.counts[distance_bucket(dependency_distance(e.head, e.id))];
      ++h.total;
    }
  }
  return h;
}

std::vector<std::pair<Fine, long>> long_range_relation_profile(
    const std::vector<DiscourseTree>& corpus, int min_distance) {
  std::array<long, kNumFine> counts{};
  for (const auto& tree : corpus) {
    for (const auto& e : tree.edus) {
      if (counts_for_distance(e) && dependency_distance(e.head, e.id) > min_distance) {
        ++counts[index_of(e.relation.fine)];
      }
    }
  }
  std::vector<std::pair<Fine, long>> out;
  for (int i = 0; i < kNumFine; ++i) {
    if (counts[i] > 0) out.emplace_back(fine_from_index(i), counts[i]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return fine_name(a.first) < fine_name(b.first);
  });
  return out;
}

}  // namespace scidtb
