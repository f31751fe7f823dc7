#include "apfree/int_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace apfree {

namespace {

void check_strictly_increasing(const std::vector<value_t>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] <= v[i - 1]) {
            throw std::domain_error("IntSet: elements must be strictly increasing (duplicate or misordered value " +
                                    std::to_string(v[i]) + ")");
        }
    }
}

}  // namespace

IntSet::IntSet(std::initializer_list<value_t> values) {
    elements_.assign(values);
    std::sort(elements_.begin(), elements_.end());
    check_strictly_increasing(elements_);
}

IntSet IntSet::from_values(std::vector<value_t> values) {
    std::sort(values.begin(), values.end());
    check_strictly_increasing(values);
    IntSet s;
    s.elements_ = std::move(values);
    return s;
}

IntSet IntSet::from_sorted(std::vector<value_t> values) {
    check_strictly_increasing(values);
    IntSet s;
    s.elements_ = std::move(values);
    return s;
}

bool IntSet::contains(value_t v) const {
    return std::binary_search(elements_.begin(), elements_.end(), v);
}

value_t IntSet::min() const {
    if (elements_.empty()) throw std::domain_error("IntSet::min on empty set");
    return elements_.front();
}

value_t IntSet::max() const {
    if (elements_.empty()) throw std::domain_error("IntSet::max on empty set");
    return elements_.back();
}

value_t IntSet::diameter() const {
    if (elements_.size() < 2) return 0;
    return elements_.back() - elements_.front();
}

IntSet IntSet::set_minus(const IntSet& other) const {
    std::vector<value_t> out;
    out.reserve(elements_.size());
    std::set_difference(elements_.begin(), elements_.end(), other.elements_.begin(), other.elements_.end(),
                        std::back_inserter(out));
    IntSet s;
    s.elements_ = std::move(out);
    return s;
}

std::string IntSet::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (i) os << ',';
        os << elements_[i];
    }
    os << '}';
    return os.str();
}

}  // namespace apfree
