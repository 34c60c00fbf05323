#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "frog/interval.hpp"
#include "frog/params.hpp"
#include "frog/rational.hpp"

namespace frog {

/// Sparse bivariate polynomial in (x, y) with exact rational coefficients and
/// nonnegative integer exponents. Zero coefficients are never stored.
class BivarPoly {
 public:
  using Exponents = std::pair<int, int>;  // (x-exponent, y-exponent)
  using Terms = std::map<Exponents, Rational>;

  BivarPoly() = default;
  static BivarPoly constant(const Rational& c);
  static BivarPoly monomial(int i, int j, const Rational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(int i, int j) const;

  BivarPoly& operator+=(const BivarPoly& rhs);
  BivarPoly& operator-=(const BivarPoly& rhs);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }

  /// this * c * x^i * y^j
  BivarPoly times_monomial(int i, int j, const Rational& c) const;

  Rational evaluate(const Rational& x, const Rational& y) const;
  Interval evaluate(const Interval& x, const Interval& y) const;

 private:
  void add_term(const Exponents& e, const Rational& c);

  Terms terms_;
};

/// s_{d,u}(x, y): s_{1,0} = 1,
///   s_{d,u} = C(d-1,u) (x y^{u+1})^{d-1-u} s_{u+1,u}   for 0 <= u <= d-2,
///   s_{d,d-1} = 1 - sum_{i<=d-2} s_{d,i}.
/// Only the diagonal family s_{u+1,u} is memoized; it is computed at most
/// once per u and shared between threads. Throws IndexError unless
/// 0 <= u <= d-1.
BivarPoly s_poly(int d, int u);

/// The memoized diagonal polynomial s_{u+1,u}.
std::shared_ptr<const BivarPoly> diagonal_s_poly(int u);

/// Values s_{d,u}(x, y) for u = 0..d-1 by running the recursion on intervals
/// (no polynomial expansion; O(d^2) interval operations).
std::vector<Interval> s_values(int d, const Interval& x, const Interval& y);

/// Distribution of the star-process activation count U(d, p, lambda).
struct UPmf {
  int d = 0;
  Rational p;
  double lambda = 0.0;
  std::vector<double> probs;  // P(U = u), u = 0..d-1
};

/// Certified P(U = u) = s_{d,u}(Phi_d, Lambda_d) at the given precision.
std::vector<Interval> u_pmf_intervals(const DriftParams& params, const Rational& lambda,
                                      Precision prec);

/// Midpoint probabilities, each with certified error below 1e-14. Precision
/// is raised from 128 bits as needed.
UPmf u_pmf(const DriftParams& params, double lambda);

/// Certified check that U(d+1, p, lambda) stochastically dominates
/// U(d, p, lambda): CDF_{d+1}(k) <= CDF_d(k) for k = 0..d-1. Throws
/// ArityMismatch when the second argument is not (d+1, same p), and
/// ResourceExhausted when the comparison stays undecided at 4096 bits.
bool u_cdf_dominates(const DriftParams& params_d, const DriftParams& params_d1, double lambda);

}  // namespace frog
