#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/ground_truth.hpp"
#include "core/metrics.hpp"
#include "core/rating_table.hpp"

namespace reprank {

enum class RatingsFormat {
  movielens_dat,  // user::object::rating::timestamp, no header
  csv_triples,    // header "user,object,rating"
};

struct DeclaredCounts {
  std::uint32_t num_users = 0;
  std::uint32_t num_objects = 0;
  std::optional<std::uint32_t> num_benchmarks;
};

// Flat key=value description of one dataset. Keys: name, ratings_path,
// benchmark_path, format, rating_scale, declared_counts. Relative paths are
// resolved against the manifest's directory.
struct DatasetManifest {
  std::string name;
  std::filesystem::path ratings_path;
  std::optional<std::filesystem::path> benchmark_path;
  RatingsFormat format = RatingsFormat::csv_triples;
  RatingBounds rating_scale{0.0, 5.0};
  std::optional<DeclaredCounts> declared_counts;
};

DatasetManifest read_manifest(const std::filesystem::path& path);

// External-to-internal id translation kept from loading. Internal indices
// follow sorted external-id order (numeric when every id is numeric), so a
// load is reproducible no matter how the file was ordered.
struct IdMap {
  std::vector<std::string> names;                        // internal -> external
  std::unordered_map<std::string, std::uint32_t> index;  // external -> internal
};

struct Dataset {
  RatingTable table;
  IdMap users;
  IdMap objects;
};

/// Parses the ratings file, re-indexes external ids densely, validates
/// ratings against the scale, and checks declared counts when present.
/// Duplicate (user, object) pairs keep the last occurrence.
Dataset load_ratings(const DatasetManifest& manifest);

struct LoadedBenchmarks {
  BenchmarkSet set;
  std::size_t skipped = 0;  // ids that resolved to no known object
};

/// Reads one external object id per line ('#' lines are comments), translates
/// through the dataset's object map, and skips unknown ids with a count.
LoadedBenchmarks load_benchmarks(const DatasetManifest& manifest,
                                 const Dataset& dataset);

/// Writes ratings.csv (and, when truth is given, truth_objects.csv and
/// truth_users.csv) into dir. Ratings are printed in shortest round-trip
/// form, so a load of the export reproduces the table bit for bit.
void export_table(const RatingTable& table, const GroundTruth* truth,
                  const std::filesystem::path& dir);

}  // namespace reprank
