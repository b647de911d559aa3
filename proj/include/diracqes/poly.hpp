#pragma once

#include <map>
#include <vector>

namespace diracqes {

/// Dense polynomial; coeffs()[k] multiplies t^k. Trailing zeros are trimmed.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs);

  static Poly monomial(int k, double c = 1.0);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  double operator[](int k) const;
  const std::vector<double>& coeffs() const { return c_; }

  double eval(double t) const;
  Poly derivative() const;
  /// p(t^2) as a polynomial in t.
  Poly of_square() const;
  /// Coefficients with |c| <= tol * max|c| set to zero, then trimmed.
  Poly trimmed(double tol) const;
  double max_abs() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(double s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, double s) { return a *= s; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

private:
  void trim();
  std::vector<double> c_;
};

/// Pair of polynomials in a common working variable (r or x = r^2).
struct PolySpinor {
  Poly upper;
  Poly lower;
};

/// Finite Laurent series sum_k c_k t^k, k possibly negative. Used for
/// operator coefficients, where 1/r terms must be tracked exactly.
class Laurent {
public:
  Laurent() = default;
  Laurent(double constant);
  static Laurent monomial(int k, double c = 1.0);
  static Laurent from_poly(const Poly& p);

  bool is_zero() const { return terms_.empty(); }
  double coeff(int k) const;
  /// Only meaningful when !is_zero().
  int min_power() const { return terms_.begin()->first; }
  int max_power() const { return terms_.rbegin()->first; }
  const std::map<int, double>& terms() const { return terms_; }

  double eval(double t) const;
  Laurent derivative() const;
  /// Multiply by t^k.
  Laurent shifted(int k) const;
  /// Drop terms with |c| <= tol.
  Laurent pruned(double tol) const;
  double max_abs() const;
  /// Nonnegative-power part as a Poly; negative powers are ignored.
  Poly polynomial_part() const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(double s);

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(Laurent a, double s) { return a *= s; }
  friend Laurent operator*(double s, Laurent a) { return a *= s; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

private:
  void add_term(int k, double c);
  std::map<int, double> terms_;
};

} // namespace diracqes
