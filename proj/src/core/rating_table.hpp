#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/error.hpp"

namespace reprank {

struct RatingBounds {
  double lo = 0.0;
  double hi = 5.0;
};

struct RatingTriple {
  std::uint32_t user;
  std::uint32_t object;
  double value;
};

inline bool operator==(const RatingTriple& a, const RatingTriple& b) {
  return a.user == b.user && a.object == b.object && a.value == b.value;
}

// Immutable sparse store of (user, object, rating) triples with both
// adjacency views. Construction validates indices and bounds and resolves
// duplicate (user, object) pairs by keeping the last occurrence. After build
// the table never changes, so concurrent reads need no synchronization.
class RatingTable {
 public:
  struct Entry {
    std::uint32_t id;  // object id in user views, user id in object views
    double value;
  };

  /// Empty table; use build() for anything real.
  RatingTable() = default;

  static RatingTable build(std::span<const RatingTriple> triples,
                           std::uint32_t num_users, std::uint32_t num_objects,
                           RatingBounds bounds = {});

  std::uint32_t num_users() const { return num_users_; }
  std::uint32_t num_objects() const { return num_objects_; }
  std::size_t num_ratings() const { return triples_.size(); }
  std::size_t duplicates_dropped() const { return duplicates_; }
  RatingBounds bounds() const { return bounds_; }

  /// Ratings cast by one user, ascending object id.
  std::span<const Entry> ratings_by_user(std::uint32_t user) const;

  /// Ratings received by one object, ascending user id.
  std::span<const Entry> ratings_of_object(std::uint32_t object) const;

  std::size_t user_degree(std::uint32_t user) const;
  std::size_t object_votes(std::uint32_t object) const;

  std::uint32_t silent_user_count() const;
  std::uint32_t unrated_object_count() const;

  /// All kept triples in canonical (user, object) ascending order.
  const std::vector<RatingTriple>& triples() const { return triples_; }

 private:
  std::uint32_t num_users_ = 0;
  std::uint32_t num_objects_ = 0;
  RatingBounds bounds_{};
  std::size_t duplicates_ = 0;
  std::vector<RatingTriple> triples_;
  std::vector<std::size_t> user_offsets_;    // size num_users_ + 1
  std::vector<std::size_t> object_offsets_;  // size num_objects_ + 1
  std::vector<Entry> user_entries_;
  std::vector<Entry> object_entries_;
};

/// Fraction of the num_users x num_objects grid that carries a rating.
double density(const RatingTable& table);

}  // namespace reprank
