// Structural corpus statistics.

#ifndef SCIDTB_ANALYSIS_HPP_
#define SCIDTB_ANALYSIS_HPP_

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scidtb/corpus.hpp"

namespace scidtb {

class RootArcError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_projective(const DiscourseTree& tree);

// Number of EDUs strictly between head and dependent. Throws RootArcError
// for head 0.
int dependency_distance(EduId head, EduId dep);

// Buckets 0, 1, 2, 3-5, 6-10, 11-15, >15.
inline constexpr int kNumDistanceBuckets = 7;
int distance_bucket(int distance);
std::string_view distance_bucket_label(int bucket);

struct DistanceHistogram {
  std::array<long, kNumDistanceBuckets> counts{};
  long total = 0;

  double percentage(int bucket) const {
    return total == 0 ? 0.0 : static_cast<double>(counts[bucket]) / static_cast<double>(total);
  }
  // Share of arcs with distance > 5.
  double long_range_share() const;

  DistanceHistogram& operator+=(const DistanceHistogram& other);
};

// Over all arcs except ROOT and Same-unit attachments.
DistanceHistogram distance_histogram(const std::vector<DiscourseTree>& corpus);

// Fine labels of arcs with distance > min_distance, by count descending, ties
// by label name. ROOT and Same-unit arcs are excluded as in the histogram.
std::vector<std::pair<Fine, long>> long_range_relation_profile(
    const std::vector<DiscourseTree>& corpus, int min_distance);

}  // namespace scidtb

#endif  // SCIDTB_ANALYSIS_HPP_
