#pragma once

// Closed intervals with rational endpoints. Arithmetic on endpoints is exact,
// so the only enclosure-widening steps are sqrt and the outward rounding that
// caps endpoint size on non-degenerate intervals.

#include <complex>
#include <string>
#include <string_view>

#include "opchain/core/scalar.hpp"

namespace opchain {

class Interval {
 public:
  // Endpoints of a non-degenerate interval are rounded outward to dyadic
  // rationals once either side exceeds this many bits.
  static constexpr std::size_t kMaxEndpointBits = 768;

  Interval() = default;
  Interval(const Rational& v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)
  Interval(long v) : lo_(v), hi_(v) {}             // NOLINT(google-explicit-constructor)
  // Throws Error(InvalidArgument) if lo > hi.
  Interval(const Rational& lo, const Rational& hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  bool is_exact() const { return lo_ == hi_; }
  bool is_exact_zero() const { return lo_ == 0 && hi_ == 0; }
  bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
  bool contains_zero() const { return contains(0); }
  bool excludes_zero() const { return !contains_zero(); }
  bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  // max(|lo|, |hi|)
  Rational mag() const;
  // inf |x| over the interval.
  Rational mig() const;
  double to_double() const { return mid().get_d(); }

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  // Throws Error(InvalidArgument) when o contains zero.
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  friend Interval operator-(const Interval& a) { return {Rational(-a.hi_), Rational(-a.lo_)}; }
  // Structural equality of enclosures, not of enclosed values.
  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  void tidy();

  Rational lo_{0};
  Rational hi_{0};
};

// Tight enclosure of x^2 (never has a negative lower end).
Interval sqr(const Interval& x);
// Enclosure of sqrt over the non-negative part of x; relative width at most
// about 2^-precision_bits. Perfect rational squares stay exact.
// Throws Error(InvalidArgument) if x lies entirely below zero.
Interval sqrt(const Interval& x, unsigned precision_bits);
Interval hull(const Interval& a, const Interval& b);

// Dyadic outward roundings with `bits` significant bits.
Rational round_down(const Rational& q, std::size_t bits);
Rational round_up(const Rational& q, std::size_t bits);

std::string to_string(const Interval& x);

// Certified complex value: one enclosure per component.
class CertComplex {
 public:
  CertComplex() = default;
  CertComplex(const Interval& re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  CertComplex(long v) : re_(v) {}               // NOLINT(google-explicit-constructor)
  CertComplex(const Interval& re, const Interval& im) : re_(re), im_(im) {}

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }
  CertComplex conj() const { return {re_, -im_}; }
  Interval norm_sq() const { return sqr(re_) + sqr(im_); }
  bool is_exact_zero() const { return re_.is_exact_zero() && im_.is_exact_zero(); }

  CertComplex& operator+=(const CertComplex& o);
  CertComplex& operator-=(const CertComplex& o);
  CertComplex& operator*=(const CertComplex& o);

  friend CertComplex operator+(CertComplex a, const CertComplex& b) { return a += b; }
  friend CertComplex operator-(CertComplex a, const CertComplex& b) { return a -= b; }
  friend CertComplex operator*(CertComplex a, const CertComplex& b) { return a *= b; }
  friend CertComplex operator-(const CertComplex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const CertComplex& a, const CertComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Interval re_;
  Interval im_;
};

std::string to_string(const CertComplex& z);

namespace detail {

struct IntervalMagnitudeOps {
  using Magnitude = Interval;
  static Interval magnitude_zero() { return Interval(); }
  static Rational magnitude_upper(const Interval& m) { return m.hi(); }
  static bool magnitude_certainly_positive(const Interval& m) { return m.lo() > 0; }
  // Orders by upper bound: the worst case is what a report must expose.
  static bool magnitude_greater(const Interval& a, const Interval& b) { return a.hi() > b.hi(); }
  static std::string magnitude_str(const Interval& m) { return to_string(m); }
};

}  // namespace detail

template <>
struct ScalarTraits<Interval> : detail::IntervalMagnitudeOps {
  static constexpr std::string_view mode = "certified";

  static Interval from_rational(const Rational& q) { return Interval(q); }
  // Canonical form drops only enclosures that are exactly [0,0].
  static bool is_zero(const Interval& s) { return s.is_exact_zero(); }
  static bool certainly_nonzero(const Interval& s) { return s.excludes_zero(); }
  static bool certainly_different(const Interval& a, const Interval& b) { return !a.overlaps(b); }
  static bool possibly_equal(const Interval& a, const Interval& b) { return a.overlaps(b); }
  static Interval conj(const Interval& s) { return s; }
  static Interval norm_sq(const Interval& s) { return sqr(s); }
  static std::complex<double> to_complex(const Interval& s) { return {s.to_double(), 0.0}; }
  static Rational abs_upper(const Interval& s) { return s.mag(); }
  static std::string str(const Interval& s) { return to_string(s); }
};

template <>
struct ScalarTraits<CertComplex> : detail::IntervalMagnitudeOps {
  static constexpr std::string_view mode = "certified-complex";

  static CertComplex from_rational(const Rational& q) { return CertComplex(Interval(q)); }
  static bool is_zero(const CertComplex& s) { return s.is_exact_zero(); }
  static bool certainly_nonzero(const CertComplex& s) {
    return s.re().excludes_zero() || s.im().excludes_zero();
  }
  static bool certainly_different(const CertComplex& a, const CertComplex& b) {
    return !a.re().overlaps(b.re()) || !a.im().overlaps(b.im());
  }
  static bool possibly_equal(const CertComplex& a, const CertComplex& b) {
    return !certainly_different(a, b);
  }
  static CertComplex conj(const CertComplex& s) { return s.conj(); }
  static Interval norm_sq(const CertComplex& s) { return s.norm_sq(); }
  static std::complex<double> to_complex(const CertComplex& s) {
    return {s.re().to_double(), s.im().to_double()};
  }
  static Rational abs_upper(const CertComplex& s) { return s.re().mag() + s.im().mag(); }
  static std::string str(const CertComplex& s) { return to_string(s); }
};

}  // namespace opchain
