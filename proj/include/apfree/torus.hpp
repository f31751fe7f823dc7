#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "apfree/int_set.hpp"

namespace apfree {

// Point on the d-torus, every coordinate reduced into [-1/2, 1/2).
struct TorusVector {
    std::vector<double> coords;

    int dim() const { return static_cast<int>(coords.size()); }
};

// Componentwise reduction into [-1/2, 1/2).
double reduce_mod1(double x);
TorusVector mod1(std::span<const double> x);

// Strict membership in the open box (-2^{-D-1}, 2^{-D-1})^d.
bool in_box(const TorusVector& x, int degree_bound);

struct Moments {
    double mu;     // mean of the squared norm of a uniform box point
    double sigma;  // its standard deviation
};

// mu = 2^{-2D} d / 12, sigma = 2^{-2D} sqrt(d/180); these are exact for
// every d, not just asymptotically.
Moments moments(int dim, int degree_bound);

// Volume of the d-ball, via log-gamma for stability at large d.
double ball_volume(int dim, double radius);

// max over degrees 1..D of (D'! 2^{D'})^2 / (2D')!; bounds the squared
// norm of the lead coefficient of a shell-confined polynomial relative to
// sigma*delta.
double f_constant(int degree_bound);

// Union of thin spherical shells inside BOX_D. A torus point x belongs
// when it lies in the open box and the normalized squared norm
// t = (|x|^2 - mu)/sigma falls in some open interval
// z - (a-1)/n0 +- delta with a in the base set. z is stored normalized:
// the raw center mu + z*sigma corresponds to z in [-1, 1].
class AnnuliSpec {
  public:
    AnnuliSpec(int dim, int degree_bound, IntSet base, std::int64_t n0, double delta, double z);

    int dim() const { return dim_; }
    int degree_bound() const { return degree_bound_; }
    const IntSet& base() const { return base_; }
    std::int64_t n0() const { return n0_; }
    double delta() const { return delta_; }
    double z() const { return z_; }
    double mu() const { return mu_; }
    double sigma() const { return sigma_; }

    bool contains(const TorusVector& x) const;
    // Interval-union test on the normalized squared norm alone.
    bool contains_normalized(double t) const;
    // Distance from t to the nearest shell boundary; used for diagnostics
    // on decisions that sit within float noise of an endpoint.
    double boundary_distance(double t) const;

  private:
    int dim_;
    int degree_bound_;
    IntSet base_;
    std::int64_t n0_;
    double delta_;
    double z_;
    double mu_;
    double sigma_;
    std::vector<char> base_flags_;  // base_flags_[a-1] for a in [1, n0]
};

struct VolumeEstimate {
    double relative = 0.0;   // fraction of BOX_D
    double absolute = 0.0;   // relative * 2^{-dD}
    double std_error = 0.0;  // sqrt(p(1-p)/samples) on the relative value
    std::int64_t samples = 0;
};

// Monte-Carlo volume of the annuli: uniform points in BOX_D, hit fraction
// of the shell test. Deterministic given the seed; the sample budget is
// split into fixed-size chunks with per-chunk derived seeds, so results do
// not depend on thread scheduling.
VolumeEstimate estimate_volume(const AnnuliSpec& spec, std::int64_t samples, std::uint64_t seed);

// Evaluates the volume on an evenly spaced grid of normalized centers in
// [-1, 1] (all candidates share the same sample draws) and returns the
// argmax, ties to the smallest z.
double choose_z(int dim, int degree_bound, const IntSet& base, std::int64_t n0, double delta, int candidates,
                std::int64_t samples, std::uint64_t seed);

}  // namespace apfree
