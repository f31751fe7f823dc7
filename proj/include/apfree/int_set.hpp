#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace apfree {

using value_t = std::int64_t;

// Sorted, duplicate-free finite set of integers. Ambient sets, trial sets
// and base sets are all IntSets; operations only need ordered iteration
// and membership tests, so the representation is a sorted vector.
class IntSet {
  public:
    IntSet() = default;
    IntSet(std::initializer_list<value_t> values);

    // Sorts and validates; throws std::domain_error on duplicates.
    static IntSet from_values(std::vector<value_t> values);
    // Input must already be strictly increasing.
    static IntSet from_sorted(std::vector<value_t> values);

    bool contains(value_t v) const;

    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    value_t min() const;
    value_t max() const;
    // max - min; zero for sets with fewer than two elements.
    value_t diameter() const;

    const std::vector<value_t>& elements() const { return elements_; }
    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }
    value_t operator[](std::size_t i) const { return elements_[i]; }

    IntSet set_minus(const IntSet& other) const;

    std::string to_string() const;

    bool operator==(const IntSet&) const = default;

  private:
    std::vector<value_t> elements_;
};

}  // namespace apfree
