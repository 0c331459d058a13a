#include "prefmodel/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "prefmodel/featurize.hpp"

namespace prefmodel {

namespace {

// (flagged, unflagged) index lists in input order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> partition(
    const std::vector<SampleKey>& matches) {
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> parts;
  for (std::size_t i = 0; i < matches.size(); ++i)
    (matches[i].with_pref ? parts.first : parts.second).push_back(i);
  return parts;
}

}  // namespace

std::vector<std::size_t> sample_indices(const std::vector<SampleKey>& matches,
                                        double perc, std::uint64_t seed) {
  if (!(perc >= 0.0 && perc <= 1.0))
    throw DomainError("perc must be in [0,1], got " + format_double(perc));
  auto [with, without] = partition(matches);
  Rng rng(seed);
  rng.shuffle(with);
  rng.shuffle(without);
  const auto take = [perc](std::vector<std::size_t>& part) {
    part.resize(static_cast<std::size_t>(
        std::floor(static_cast<double>(part.size()) * perc)));
  };
  take(with);
  take(without);
  std::vector<std::size_t> out = std::move(with);
  out.insert(out.end(), without.begin(), without.end());
  return out;
}

std::vector<MatchLog> sample_matches(const std::vector<MatchLog>& matches,
                                     Preference target, double perc,
                                     std::uint64_t seed) {
  std::vector<SampleKey> keys;
  keys.reserve(matches.size());
  for (const MatchLog& log : matches)
    keys.push_back(
        {log.match_id, binarize_label(log.preference.level(target)) > 0});
  std::vector<MatchLog> out;
  for (std::size_t i : sample_indices(keys, perc, seed))
    out.push_back(matches[i]);
  return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> make_test_split(
    const std::vector<SampleKey>& matches, double fraction,
    std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw DomainError("test fraction must be in (0,1), got " +
                      format_double(fraction));
  const std::size_t n = matches.size();
  const std::size_t total = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * fraction));
  if (total < 1)
    throw DomainError("test split of " + std::to_string(n) +
                      " matches at fraction " + format_double(fraction) +
                      " selects no matches");

  auto [with, without] = partition(matches);
  Rng rng(seed);
  rng.shuffle(with);
  rng.shuffle(without);

  struct ClassPart {
    std::vector<std::size_t>* indices;
    std::size_t base;
    double remainder;
  };
  const double dn = static_cast<double>(n);
  auto quota = [&](const std::vector<std::size_t>& part) {
    return static_cast<double>(part.size()) * static_cast<double>(total) / dn;
  };
  ClassPart parts[2] = {
      {&with, static_cast<std::size_t>(std::floor(quota(with))),
       quota(with) - std::floor(quota(with))},
      {&without, static_cast<std::size_t>(std::floor(quota(without))),
       quota(without) - std::floor(quota(without))},
  };
  std::size_t assigned = parts[0].base + parts[1].base;
  // Hand leftovers to the larger remainder; ties go to the bigger class,
  // then to the flagged class.
  while (assigned < total) {
    int pick;
    if (parts[0].remainder != parts[1].remainder)
      pick = parts[0].remainder > parts[1].remainder ? 0 : 1;
    else
      pick = parts[0].indices->size() >= parts[1].indices->size() ? 0 : 1;
    parts[pick].base += 1;
    parts[pick].remainder = -1.0;
    ++assigned;
  }

  std::vector<std::size_t> test, remainder;
  for (const ClassPart& part : parts) {
    const std::size_t cut = std::min(part.base, part.indices->size());
    test.insert(test.end(), part.indices->begin(),
                part.indices->begin() + static_cast<std::ptrdiff_t>(cut));
    remainder.insert(remainder.end(),
                     part.indices->begin() + static_cast<std::ptrdiff_t>(cut),
                     part.indices->end());
  }
  std::sort(test.begin(), test.end());
  std::sort(remainder.begin(), remainder.end());
  return {std::move(test), std::move(remainder)};
}

int FoldSpec::fold_of(const std::string& id) const {
  auto it = assignment.find(id);
  if (it == assignment.end())
    throw ContractError("match '" + id + "' has no fold assignment");
  return it->second;
}

FoldSpec stratified_kfold(const std::vector<SampleKey>& matches, int k,
                          std::uint64_t seed) {
  if (k < 2) throw DomainError("fold count must be >= 2, got " +
                               std::to_string(k));
  if (matches.size() < static_cast<std::size_t>(k))
    throw DomainError("cannot stratify " + std::to_string(matches.size()) +
                      " matches into " + std::to_string(k) + " folds");
  {
    std::set<std::string> ids;
    for (const SampleKey& key : matches)
      if (!ids.insert(key.id).second)
        throw StructureError("duplicate match id '" + key.id + "'");
  }

  auto [with, without] = partition(matches);
  Rng rng(seed);
  rng.shuffle(with);
  rng.shuffle(without);

  FoldSpec spec;
  spec.k = k;
  spec.seed = seed;
  int cursor = 0;
  for (const std::vector<std::size_t>* part : {&with, &without}) {
    for (std::size_t idx : *part) {
      spec.assignment[matches[idx].id] = cursor % k;
      ++cursor;
    }
  }
  return spec;
}

std::string fold_spec_to_json(const FoldSpec& spec) {
  nlohmann::json j;
  j["k"] = spec.k;
  j["seed"] = spec.seed;
  j["assignment"] = spec.assignment;
  return j.dump(2) + "\n";
}

FoldSpec fold_spec_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("fold spec is not valid JSON: ") + e.what());
  }
  FoldSpec spec;
  try {
    spec.k = j.at("k").get<int>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.assignment =
        j.at("assignment").get<std::map<std::string, int>>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("fold spec: ") + e.what());
  }
  for (const auto& [id, fold] : spec.assignment)
    if (fold < 0 || fold >= spec.k)
      throw DomainError("fold index " + std::to_string(fold) + " for '" + id +
                        "' outside [0," + std::to_string(spec.k) + ")");
  return spec;
}

}  // namespace prefmodel
