#include "apfree/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "apfree/rng.hpp"

namespace apfree {

IntSet interval_set(std::int64_t n) {
    if (n < 1) throw std::domain_error("interval_set: n must be positive");
    std::vector<value_t> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), value_t{1});
    return IntSet::from_sorted(std::move(v));
}

IntSet squares_set(std::int64_t n) {
    if (n < 1) throw std::domain_error("squares_set: n must be positive");
    std::vector<value_t> v;
    v.reserve(static_cast<std::size_t>(n));
    for (value_t i = 1; i <= n; ++i) v.push_back(i * i);
    return IntSet::from_sorted(std::move(v));
}

double RandomSetModel::inclusion_probability() const {
    return c * std::pow(static_cast<double>(n), -1.0 / (k - 1));
}

IntSet random_bernoulli_set(const RandomSetModel& model) {
    if (model.n < 1) throw std::domain_error("random_bernoulli_set: n must be positive");
    if (model.k < 3) throw std::domain_error("random_bernoulli_set: k must be at least 3");
    const double p = model.inclusion_probability();
    if (!(p > 0.0)) throw std::domain_error("random_bernoulli_set: inclusion probability must be positive");
    if (p > 1.0) throw std::domain_error("random_bernoulli_set: inclusion probability exceeds 1");
    Rng rng(model.seed);
    std::vector<value_t> out;
    for (value_t i = 1; i <= model.n; ++i)
        if (rng.uniform01() < p) out.push_back(i);
    return IntSet::from_sorted(std::move(out));
}

ApCountEstimate expected_ap_count(std::int64_t n, double c, int k) {
    ApCountEstimate est;
    const double nd = static_cast<double>(n);
    const double p = c * std::pow(nd, -1.0 / (k - 1));
    est.expected = 0.5 * nd * (nd - 1.0) * std::pow(p, k - 2);
    est.upper_bound = 0.5 * std::pow(c, k - 2) * std::pow(nd, static_cast<double>(k) / (k - 1));
    return est;
}

std::vector<SquareTriple> squares_3ap_bruteforce(std::int64_t n) {
    if (n < 1) throw std::domain_error("squares_3ap_bruteforce: n must be positive");
    std::vector<SquareTriple> out;
    for (value_t a = 1; a <= n; ++a) {
        for (value_t c = a + 1; c <= n; ++c) {
            const value_t sum = a * a + c * c;
            if (sum % 2 != 0) continue;
            const value_t half = sum / 2;
            const value_t root = static_cast<value_t>(std::llround(std::sqrt(static_cast<double>(half))));
            for (value_t b = std::max<value_t>(1, root - 1); b <= root + 1; ++b) {
                if (b * b == half && b <= n) {
                    out.push_back(SquareTriple{a, b, c});
                    break;
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ParameterizedTriples squares_3ap_parameterized(std::int64_t n) {
    if (n < 1) throw std::domain_error("squares_3ap_parameterized: n must be positive");
    ParameterizedTriples result;
    std::set<SquareTriple> seen;
    for (value_t s = 1; s * s + 1 <= n; ++s) {
        for (value_t t = 1; s * s + t * t <= n; ++t) {
            if (std::gcd(s, t) != 1) continue;
            const value_t raw_a = 2 * s * t - s * s + t * t;
            const value_t raw_b = s * s + t * t;
            const value_t raw_c = 2 * s * t + s * s - t * t;
            for (value_t u = 1; u * raw_b <= n; ++u) {
                ++result.stu_count;
                const value_t a = std::abs(u * raw_a);
                const value_t b = u * raw_b;
                const value_t c = std::abs(u * raw_c);
                if (a == 0 || c == 0) continue;  // degenerate: an endpoint square vanishes
                if (a == b || a == c) continue;  // constant progression
                if (a > n || c > n) continue;
                seen.insert(SquareTriple{std::min(a, c), b, std::max(a, c)});
            }
        }
    }
    result.triples.assign(seen.begin(), seen.end());
    return result;
}

IntSet load_set(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_set: cannot open " + path.string());
    std::vector<value_t> values;
    std::set<value_t> dedup;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        if (line[begin] == '#') continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(begin, end - begin + 1);
        value_t v = 0;
        try {
            std::size_t consumed = 0;
            v = std::stoll(token, &consumed);
            if (consumed != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw std::runtime_error("load_set: " + path.string() + ":" + std::to_string(line_no) +
                                     ": not an integer: '" + token + "'");
        }
        if (!dedup.insert(v).second)
            throw std::runtime_error("load_set: " + path.string() + ":" + std::to_string(line_no) +
                                     ": duplicate value " + std::to_string(v));
        values.push_back(v);
    }
    return IntSet::from_values(std::move(values));
}

void save_set(const IntSet& set, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("save_set: cannot open " + tmp.string());
        for (value_t v : set) out << v << '\n';
        if (!out) throw std::runtime_error("save_set: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace apfree
