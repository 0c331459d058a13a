#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prefmodel/telemetry.hpp"

namespace prefmodel {

// Identity plus target-preference flag; the unit all splits operate on.
struct SampleKey {
  std::string id;
  bool with_pref = false;
};

// Stratified subsample: partition by flag (flagged block first, input order
// preserved), shuffle each partition with one seeded generator, keep the
// first floor(size * perc) of each, concatenate. Returns indices into the
// input, flagged block first.
std::vector<std::size_t> sample_indices(const std::vector<SampleKey>& matches,
                                        double perc, std::uint64_t seed);

std::vector<MatchLog> sample_matches(const std::vector<MatchLog>& matches,
                                     Preference target, double perc,
                                     std::uint64_t seed);

// Holds out floor(n * fraction) whole matches, stratified by flag via
// largest-remainder allocation. Returns (test, remainder) index lists, each
// in ascending input order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> make_test_split(
    const std::vector<SampleKey>& matches, double fraction, std::uint64_t seed);

struct FoldSpec {
  int k = 0;
  std::uint64_t seed = 0;
  std::map<std::string, int> assignment;  // match_id -> fold index

  int fold_of(const std::string& id) const;
};

// Per-class shuffle then a round-robin deal with a cursor carried across
// classes, so per-fold class counts differ by at most one.
FoldSpec stratified_kfold(const std::vector<SampleKey>& matches, int k,
                          std::uint64_t seed);

std::string fold_spec_to_json(const FoldSpec& spec);
FoldSpec fold_spec_from_json(const std::string& text);

}  // namespace prefmodel
