#include "core/ingest.hpp"

#include <algorithm>
#include <fstream>

#include "core/text.hpp"

namespace reprank {

namespace {

std::string location(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::ifstream open_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open " + path.string());
  }
  return in;
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              std::string_view value) {
  std::filesystem::path p{std::string(value)};
  if (p.is_relative()) p = base / p;
  return p;
}

}  // namespace

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in = open_text(path);
  const std::filesystem::path base = path.parent_path();

  DatasetManifest manifest;
  bool saw_ratings_path = false;
  bool saw_format = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::parse,
                  location(path, line_no) + ": expected key=value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "name") {
      manifest.name = std::string(value);
    } else if (key == "ratings_path") {
      manifest.ratings_path = resolve(base, value);
      saw_ratings_path = true;
    } else if (key == "benchmark_path") {
      manifest.benchmark_path = resolve(base, value);
    } else if (key == "format") {
      if (value == "movielens_dat" || value == "MovieLensDat") {
        manifest.format = RatingsFormat::movielens_dat;
      } else if (value == "csv_triples" || value == "CsvTriples") {
        manifest.format = RatingsFormat::csv_triples;
      } else {
        throw Error(ErrorCode::parse,
                    location(path, line_no) + ": unknown format '" +
                        std::string(value) +
                        "' (expected movielens_dat or csv_triples)");
      }
      saw_format = true;
    } else if (key == "rating_scale") {
      const auto parts = split(value, ",");
      std::optional<double> lo, hi;
      if (parts.size() == 2) {
        lo = parse_double(trim(parts[0]));
        hi = parse_double(trim(parts[1]));
      }
      if (!lo || !hi || !(*lo < *hi)) {
        throw Error(ErrorCode::parse,
                    location(path, line_no) +
                        ": rating_scale must be 'lo,hi' with lo < hi");
      }
      manifest.rating_scale = {*lo, *hi};
    } else if (key == "declared_counts") {
      const auto parts = split(value, ",");
      if (parts.size() != 2 && parts.size() != 3) {
        throw Error(ErrorCode::parse,
                    location(path, line_no) +
                        ": declared_counts must be 'N,M' or 'N,M,S'");
      }
      DeclaredCounts counts;
      const auto n = parse_u32(trim(parts[0]));
      const auto m = parse_u32(trim(parts[1]));
      if (!n || !m) {
        throw Error(ErrorCode::parse,
                    location(path, line_no) + ": declared_counts must be numeric");
      }
      counts.num_users = *n;
      counts.num_objects = *m;
      if (parts.size() == 3) {
        const auto s = parse_u32(trim(parts[2]));
        if (!s) {
          throw Error(ErrorCode::parse, location(path, line_no) +
                                            ": declared_counts must be numeric");
        }
        counts.num_benchmarks = *s;
      }
      manifest.declared_counts = counts;
    } else {
      throw Error(ErrorCode::parse, location(path, line_no) +
                                        ": unknown key '" + std::string(key) +
                                        "'");
    }
  }

  if (!saw_ratings_path) {
    throw Error(ErrorCode::parse,
                path.string() + ": manifest is missing ratings_path");
  }
  if (!saw_format) {
    throw Error(ErrorCode::parse, path.string() + ": manifest is missing format");
  }
  if (manifest.name.empty()) {
    manifest.name = path.stem().string();
  }
  return manifest;
}

namespace {

struct RawRating {
  std::string user;
  std::string object;
  double value;
};

std::vector<RawRating> parse_movielens(const std::filesystem::path& path,
                                       RatingBounds scale) {
  std::ifstream in = open_text(path);
  std::vector<RawRating> rows;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto parts = split(line, "::");
    if (parts.size() != 4) {
      throw Error(ErrorCode::parse,
                  location(path, line_no) +
                      ": expected user::object::rating::timestamp");
    }
    const auto rating = parse_double(trim(parts[2]));
    if (!rating) {
      throw Error(ErrorCode::parse, location(path, line_no) +
                                        ": non-numeric rating '" +
                                        std::string(parts[2]) + "'");
    }
    if (!parse_u64(trim(parts[3]))) {
      throw Error(ErrorCode::parse, location(path, line_no) +
                                        ": non-numeric timestamp '" +
                                        std::string(parts[3]) + "'");
    }
    if (!(*rating >= scale.lo && *rating <= scale.hi)) {
      throw Error(ErrorCode::validation,
                  location(path, line_no) + ": rating " +
                      format_double(*rating) + " outside scale [" +
                      format_double(scale.lo) + ", " + format_double(scale.hi) +
                      "]");
    }
    rows.push_back({std::string(trim(parts[0])), std::string(trim(parts[1])),
                    *rating});
    if (rows.back().user.empty() || rows.back().object.empty()) {
      throw Error(ErrorCode::parse,
                  location(path, line_no) + ": empty user or object id");
    }
  }
  return rows;
}

std::vector<RawRating> parse_csv_triples(const std::filesystem::path& path,
                                         RatingBounds scale) {
  std::ifstream in = open_text(path);
  std::vector<RawRating> rows;
  std::string raw;
  if (!std::getline(in, raw)) {
    throw Error(ErrorCode::parse, path.string() + ": empty file");
  }
  if (trim(raw) != "user,object,rating") {
    throw Error(ErrorCode::parse,
                location(path, 1) + ": expected header 'user,object,rating'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto parts = split(line, ",");
    if (parts.size() != 3) {
      throw Error(ErrorCode::parse,
                  location(path, line_no) + ": expected user,object,rating");
    }
    const auto rating = parse_double(trim(parts[2]));
    if (!rating) {
      throw Error(ErrorCode::parse, location(path, line_no) +
                                        ": non-numeric rating '" +
                                        std::string(parts[2]) + "'");
    }
    if (!(*rating >= scale.lo && *rating <= scale.hi)) {
      throw Error(ErrorCode::validation,
                  location(path, line_no) + ": rating " +
                      format_double(*rating) + " outside scale [" +
                      format_double(scale.lo) + ", " + format_double(scale.hi) +
                      "]");
    }
    rows.push_back({std::string(trim(parts[0])), std::string(trim(parts[1])),
                    *rating});
    if (rows.back().user.empty() || rows.back().object.empty()) {
      throw Error(ErrorCode::parse,
                  location(path, line_no) + ": empty user or object id");
    }
  }
  return rows;
}

// Dense re-indexing in sorted external-id order: numeric when every id is a
// plain decimal, lexicographic otherwise. Sorting (instead of first
// appearance) makes the index independent of file order and lets an exported
// table reload with identical indices.
IdMap build_id_map(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  const bool all_numeric =
      std::all_of(ids.begin(), ids.end(), [](const std::string& id) {
        return parse_u64(id).has_value();
      });
  if (all_numeric) {
    std::sort(ids.begin(), ids.end(),
              [](const std::string& a, const std::string& b) {
                const std::uint64_t va = *parse_u64(a);
                const std::uint64_t vb = *parse_u64(b);
                return va != vb ? va < vb : a < b;
              });
  }

  IdMap map;
  map.names = std::move(ids);
  map.index.reserve(map.names.size());
  for (std::uint32_t i = 0; i < map.names.size(); ++i) {
    map.index.emplace(map.names[i], i);
  }
  return map;
}

}  // namespace

Dataset load_ratings(const DatasetManifest& manifest) {
  std::vector<RawRating> rows;
  switch (manifest.format) {
    case RatingsFormat::movielens_dat:
      rows = parse_movielens(manifest.ratings_path, manifest.rating_scale);
      break;
    case RatingsFormat::csv_triples:
      rows = parse_csv_triples(manifest.ratings_path, manifest.rating_scale);
      break;
  }

  std::vector<std::string> user_ids;
  std::vector<std::string> object_ids;
  user_ids.reserve(rows.size());
  object_ids.reserve(rows.size());
  for (const RawRating& r : rows) {
    user_ids.push_back(r.user);
    object_ids.push_back(r.object);
  }

  Dataset dataset;
  dataset.users = build_id_map(std::move(user_ids));
  dataset.objects = build_id_map(std::move(object_ids));

  if (manifest.declared_counts) {
    const DeclaredCounts& declared = *manifest.declared_counts;
    if (dataset.users.names.size() != declared.num_users) {
      throw Error(ErrorCode::validation,
                  manifest.ratings_path.string() + ": declared " +
                      std::to_string(declared.num_users) + " users, found " +
                      std::to_string(dataset.users.names.size()));
    }
    if (dataset.objects.names.size() != declared.num_objects) {
      throw Error(ErrorCode::validation,
                  manifest.ratings_path.string() + ": declared " +
                      std::to_string(declared.num_objects) +
                      " objects, found " +
                      std::to_string(dataset.objects.names.size()));
    }
  }

  std::vector<RatingTriple> triples;
  triples.reserve(rows.size());
  for (const RawRating& r : rows) {
    triples.push_back({dataset.users.index.at(r.user),
                       dataset.objects.index.at(r.object), r.value});
  }
  dataset.table = RatingTable::build(
      triples, static_cast<std::uint32_t>(dataset.users.names.size()),
      static_cast<std::uint32_t>(dataset.objects.names.size()),
      manifest.rating_scale);
  return dataset;
}

LoadedBenchmarks load_benchmarks(const DatasetManifest& manifest,
                                 const Dataset& dataset) {
  if (!manifest.benchmark_path) {
    throw Error(ErrorCode::invalid_argument,
                "manifest '" + manifest.name + "' names no benchmark file");
  }
  std::ifstream in = open_text(*manifest.benchmark_path);

  std::vector<std::uint32_t> ids;
  std::size_t skipped = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto it = dataset.objects.index.find(std::string(line));
    if (it == dataset.objects.index.end()) {
      ++skipped;
      continue;
    }
    ids.push_back(it->second);
  }

  if (ids.empty()) {
    throw Error(ErrorCode::validation,
                manifest.benchmark_path->string() +
                    ": no benchmark id resolves to a known object (" +
                    std::to_string(skipped) + " skipped)");
  }

  LoadedBenchmarks loaded;
  loaded.set = make_benchmark_set(std::move(ids), dataset.table.num_objects());
  loaded.skipped = skipped;

  if (manifest.declared_counts && manifest.declared_counts->num_benchmarks) {
    const std::uint32_t declared = *manifest.declared_counts->num_benchmarks;
    if (loaded.set.size() != declared) {
      throw Error(ErrorCode::validation,
                  manifest.benchmark_path->string() + ": declared " +
                      std::to_string(declared) + " benchmarks, found " +
                      std::to_string(loaded.set.size()));
    }
  }
  return loaded;
}

void export_table(const RatingTable& table, const GroundTruth* truth,
                  const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::io,
                "cannot create directory " + dir.string() + ": " + ec.message());
  }

  const auto open_out = [](const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) {
      throw Error(ErrorCode::io, "cannot write " + p.string());
    }
    return out;
  };

  {
    std::ofstream out = open_out(dir / "ratings.csv");
    out << "user,object,rating\n";
    for (const RatingTriple& t : table.triples()) {
      out << t.user << ',' << t.object << ',' << format_double(t.value)
          << '\n';
    }
    if (!out.flush()) {
      throw Error(ErrorCode::io, "write failed for " + (dir / "ratings.csv").string());
    }
  }

  if (truth) {
    if (truth->intrinsic_quality.size() != table.num_objects() ||
        truth->noise_level.size() != table.num_users()) {
      throw Error(ErrorCode::invalid_argument,
                  "ground truth dimensions do not match the table");
    }
    std::ofstream objects = open_out(dir / "truth_objects.csv");
    objects << "object,Q\n";
    for (std::uint32_t k = 0; k < table.num_objects(); ++k) {
      objects << k << ',' << format_double(truth->intrinsic_quality[k]) << '\n';
    }
    std::ofstream users = open_out(dir / "truth_users.csv");
    users << "user,zeta\n";
    for (std::uint32_t i = 0; i < table.num_users(); ++i) {
      users << i << ',' << format_double(truth->noise_level[i]) << '\n';
    }
    if (!objects.flush() || !users.flush()) {
      throw Error(ErrorCode::io, "write failed under " + dir.string());
    }
  }
}

}  // namespace reprank
