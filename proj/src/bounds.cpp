#include "apfree/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "apfree/construct.hpp"

namespace apfree {

namespace {

// exponent(L) = -n 2^{(n-1)/2} D^{(n-1)/n} L^{1/n} + log2(L)/(2n), the
// shared shape of the interval and main bounds with L the driving log.
double density_exponent(int k, int degree_bound, double big_log) {
    const int n = derive_n(k, degree_bound);
    return -n * std::exp2(0.5 * (n - 1)) * std::pow(static_cast<double>(degree_bound), (n - 1.0) / n) *
               std::pow(big_log, 1.0 / n) +
           std::log2(big_log) / (2.0 * n);
}

}  // namespace

double bound_kssz(double r_k_interval_value, KsszVariant variant) {
    if (r_k_interval_value < 0) throw std::domain_error("bound_kssz: input must be nonnegative");
    switch (variant) {
        case KsszVariant::standard:
            return std::ldexp(r_k_interval_value, -15);
        case KsszVariant::refined:
            return r_k_interval_value / 34.0;
    }
    throw std::logic_error("bound_kssz: unknown variant");
}

double bound_interval_log2(int k, int degree_bound, double log2_n, double constant) {
    if (!(log2_n >= 2.0)) throw std::domain_error("bound_interval: requires N >= 4");
    if (!(constant > 0.0)) throw std::domain_error("bound_interval: constant must be positive");
    return std::log2(constant) + density_exponent(k, degree_bound, log2_n);
}

double bound_interval(int k, int degree_bound, double n, double constant) {
    return std::exp2(bound_interval_log2(k, degree_bound, std::log2(n), constant));
}

double bound_main_log2(int k, int degree_bound, double log2_psi, double constant) {
    if (!(log2_psi >= 1.0)) throw std::domain_error("bound_main: requires psi >= 2");
    if (!(constant > 0.0)) throw std::domain_error("bound_main: constant must be positive");
    return std::log2(constant) + density_exponent(k, degree_bound, log2_psi);
}

double bound_main(int k, int degree_bound, double psi, double constant) {
    return std::exp2(bound_main_log2(k, degree_bound, std::log2(psi), constant));
}

double bound_squares_log2(double log2_n, double constant) {
    if (!(log2_n >= std::log2(5.0))) throw std::domain_error("bound_squares: requires N >= 5");
    if (!(constant > 0.0)) throw std::domain_error("bound_squares: constant must be positive");
    const double llog = std::log2(log2_n);
    return std::log2(constant) + log2_n - 2.0 * std::sqrt(2.0) * std::sqrt(llog) + 0.25 * std::log2(llog);
}

double bound_squares(double n, double constant) {
    return std::exp2(bound_squares_log2(std::log2(n), constant));
}

TypeUpperBound type_upper_bound(const IntSet& set, int k, int degree_bound) {
    (void)k;  // the bounds depend on the set and degree only
    TypeUpperBound out;
    const double n = static_cast<double>(set.size());
    out.n_power = std::pow(n, degree_bound + 1);
    out.n_diam = n * static_cast<double>(set.diameter());
    out.min_value = std::min(out.n_power, out.n_diam);
    return out;
}

}  // namespace apfree
