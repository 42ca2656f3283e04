#include "core/rating_table.hpp"

#include <algorithm>
#include <unordered_map>

namespace reprank {

namespace {

std::string triple_text(const RatingTriple& t) {
  return "(" + std::to_string(t.user) + ", " + std::to_string(t.object) +
         ", " + std::to_string(t.value) + ")";
}

}  // namespace

RatingTable RatingTable::build(std::span<const RatingTriple> triples,
                               std::uint32_t num_users,
                               std::uint32_t num_objects,
                               RatingBounds bounds) {
  if (!(bounds.lo < bounds.hi)) {
    throw Error(ErrorCode::invalid_argument,
                "rating bounds must satisfy lo < hi, got [" +
                    std::to_string(bounds.lo) + ", " +
                    std::to_string(bounds.hi) + "]");
  }

  for (const RatingTriple& t : triples) {
    if (t.user >= num_users) {
      throw Error(ErrorCode::invalid_argument,
                  "user index out of range in triple " + triple_text(t) +
                      ": expected < " + std::to_string(num_users));
    }
    if (t.object >= num_objects) {
      throw Error(ErrorCode::invalid_argument,
                  "object index out of range in triple " + triple_text(t) +
                      ": expected < " + std::to_string(num_objects));
    }
    if (!(t.value >= bounds.lo && t.value <= bounds.hi)) {
      throw Error(ErrorCode::invalid_argument,
                  "rating outside bounds [" + std::to_string(bounds.lo) +
                      ", " + std::to_string(bounds.hi) + "] in triple " +
                      triple_text(t));
    }
  }

  RatingTable table;
  table.num_users_ = num_users;
  table.num_objects_ = num_objects;
  table.bounds_ = bounds;

  // Keep-last duplicate resolution: later occurrences overwrite earlier ones
  // in place, preserving first-seen position until the canonical sort.
  std::vector<RatingTriple> kept;
  kept.reserve(triples.size());
  std::unordered_map<std::uint64_t, std::size_t> seen;
  seen.reserve(triples.size());
  for (const RatingTriple& t : triples) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(t.user) << 32) | t.object;
    auto [it, inserted] = seen.emplace(key, kept.size());
    if (inserted) {
      kept.push_back(t);
    } else {
      kept[it->second].value = t.value;
      ++table.duplicates_;
    }
  }

  std::sort(kept.begin(), kept.end(),
            [](const RatingTriple& a, const RatingTriple& b) {
              return a.user != b.user ? a.user < b.user : a.object < b.object;
            });
  table.triples_ = std::move(kept);

  // User view: the canonical sort is already user-major with ascending
  // objects inside each user.
  table.user_offsets_.assign(num_users + 1, 0);
  for (const RatingTriple& t : table.triples_) {
    ++table.user_offsets_[t.user + 1];
  }
  for (std::uint32_t u = 0; u < num_users; ++u) {
    table.user_offsets_[u + 1] += table.user_offsets_[u];
  }
  table.user_entries_.reserve(table.triples_.size());
  for (const RatingTriple& t : table.triples_) {
    table.user_entries_.push_back({t.object, t.value});
  }

  // Object view via counting sort; walking triples in user order keeps user
  // ids ascending inside each object bucket.
  table.object_offsets_.assign(num_objects + 1, 0);
  for (const RatingTriple& t : table.triples_) {
    ++table.object_offsets_[t.object + 1];
  }
  for (std::uint32_t k = 0; k < num_objects; ++k) {
    table.object_offsets_[k + 1] += table.object_offsets_[k];
  }
  table.object_entries_.resize(table.triples_.size());
  std::vector<std::size_t> cursor(table.object_offsets_.begin(),
                                  table.object_offsets_.end() - 1);
  for (const RatingTriple& t : table.triples_) {
    table.object_entries_[cursor[t.object]++] = {t.user, t.value};
  }

  return table;
}

std::span<const RatingTable::Entry> RatingTable::ratings_by_user(
    std::uint32_t user) const {
  const std::size_t begin = user_offsets_[user];
  const std::size_t end = user_offsets_[user + 1];
  return {user_entries_.data() + begin, end - begin};
}

std::span<const RatingTable::Entry> RatingTable::ratings_of_object(
    std::uint32_t object) const {
  const std::size_t begin = object_offsets_[object];
  const std::size_t end = object_offsets_[object + 1];
  return {object_entries_.data() + begin, end - begin};
}

std::size_t RatingTable::user_degree(std::uint32_t user) const {
  return user_offsets_[user + 1] - user_offsets_[user];
}

std::size_t RatingTable::object_votes(std::uint32_t object) const {
  return object_offsets_[object + 1] - object_offsets_[object];
}

std::uint32_t RatingTable::silent_user_count() const {
  std::uint32_t n = 0;
  for (std::uint32_t u = 0; u < num_users_; ++u) {
    if (user_degree(u) == 0) ++n;
  }
  return n;
}

std::uint32_t RatingTable::unrated_object_count() const {
  std::uint32_t n = 0;
  for (std::uint32_t k = 0; k < num_objects_; ++k) {
    if (object_votes(k) == 0) ++n;
  }
  return n;
}

double density(const RatingTable& table) {
  if (table.num_users() == 0 || table.num_objects() == 0) {
    throw Error(ErrorCode::invalid_argument,
                "density undefined for an empty user or object set");
  }
  return static_cast<double>(table.num_ratings()) /
         (static_cast<double>(table.num_users()) *
          static_cast<double>(table.num_objects()));
}

}  // namespace reprank
