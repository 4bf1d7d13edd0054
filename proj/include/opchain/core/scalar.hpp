#pragma once

// Exact Gaussian-rational scalars and the traits layer that lets the operator
// algebra run unchanged over exact and certified (interval) scalars.

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <string>
#include <string_view>

namespace opchain {

using Rational = mpq_class;

std::string to_string(const Rational& q);
// Accepts "p", "-p", "p/q". Throws Error(ParseError).
Rational parse_rational(std::string_view text);
Rational abs(const Rational& q);
// Bit length of numerator plus denominator; a rough size measure.
std::size_t bit_size(const Rational& q);

// a + b i with a, b rational. The real field embeds as im == 0.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(const Rational& re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(long v) : re_(v) {}               // NOLINT(google-explicit-constructor)
  ExactScalar(const Rational& re, const Rational& im) : re_(re), im_(im) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_real() const { return im_ == 0; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }

  ExactScalar conj() const { return {re_, -im_}; }
  Rational norm_sq() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  // Throws Error(InvalidArgument) on zero.
  ExactScalar inverse() const;

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend ExactScalar operator-(const ExactScalar& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

ExactScalar imaginary_unit();
// "p/q", "p/q+r/si", "r/si", "i", "-i". Throws Error(ParseError).
ExactScalar parse_exact(std::string_view text);
std::string to_string(const ExactScalar& z);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactScalar> {
  using Magnitude = Rational;
  static constexpr std::string_view mode = "exact";

  static ExactScalar from_rational(const Rational& q) { return ExactScalar(q); }
  static bool is_zero(const ExactScalar& s) { return s.is_zero(); }
  static bool certainly_nonzero(const ExactScalar& s) { return !s.is_zero(); }
  static bool certainly_different(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }
  static bool possibly_equal(const ExactScalar& a, const ExactScalar& b) { return a == b; }
  static ExactScalar conj(const ExactScalar& s) { return s.conj(); }
  static Rational norm_sq(const ExactScalar& s) { return s.norm_sq(); }
  static std::complex<double> to_complex(const ExactScalar& s) { return s.to_complex(); }
  // |re| + |im| >= |s|.
  static Rational abs_upper(const ExactScalar& s) { return abs(s.re()) + abs(s.im()); }
  static std::string str(const ExactScalar& s) { return to_string(s); }

  static Rational magnitude_zero() { return 0; }
  static Rational magnitude_upper(const Rational& m) { return m; }
  static bool magnitude_certainly_positive(const Rational& m) { return m > 0; }
  static bool magnitude_greater(const Rational& a, const Rational& b) { return a > b; }
  static std::string magnitude_str(const Rational& m) { return to_string(m); }
};

template <class S>
concept Scalar = requires(S a, S b) {
  typename ScalarTraits<S>::Magnitude;
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { ScalarTraits<S>::is_zero(a) } -> std::convertible_to<bool>;
  { ScalarTraits<S>::conj(a) } -> std::convertible_to<S>;
  { ScalarTraits<S>::norm_sq(a) } -> std::convertible_to<typename ScalarTraits<S>::Magnitude>;
};

}  // namespace opchain
