#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oat {

// Malformed input: unknown labels, parse failures, violated call contracts.
// The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematically meaningful failure: a precondition on the object itself
// does not hold (non-regular ring, non-congruence, ...).  Exit code 1.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// An enumeration would exceed its configured bound.
struct SizeError : DomainError {
  explicit SizeError(const std::string& msg) : DomainError(msg) {}
};

// Sorted vector of distinct ints, used for subsets of element indices.
using IndexSet = std::vector<int>;

inline IndexSet make_set(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool set_contains(const IndexSet& s, int x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(r));
  return r;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(r));
  return r;
}

inline bool set_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Calls fn(subset) for every subset of {0,..,n-1}, as an IndexSet.  n <= 24.
template <typename Fn>
void for_each_subset(int n, Fn&& fn) {
  if (n > 24) throw SizeError("subset enumeration over " + std::to_string(n) +
                              " elements exceeds the supported bound");
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    IndexSet s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    fn(s);
  }
}

// Calls fn(subset) for every subset of the given ground set.
template <typename Fn>
void for_each_subset_of(const IndexSet& ground, Fn&& fn) {
  for_each_subset(static_cast<int>(ground.size()), [&](const IndexSet& idx) {
    IndexSet s;
    s.reserve(idx.size());
    for (int i : idx) s.push_back(ground[i]);
    fn(s);
  });
}

}  // namespace oat
