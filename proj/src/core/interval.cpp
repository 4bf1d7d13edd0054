#include "opchain/core/interval.hpp"

#include <algorithm>

#include "opchain/core/error.hpp"

namespace opchain {

namespace {

std::size_t bits_of(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

// Smallest e with |q| * 2^e having at least `bits` integer bits.
long scale_exponent(const Rational& q, std::size_t bits) {
  const long magnitude =
      static_cast<long>(bits_of(q.get_num())) - static_cast<long>(bits_of(q.get_den()));
  return static_cast<long>(bits) - magnitude + 1;
}

Rational dyadic(const mpz_class& mantissa, long exponent) {
  Rational r(mantissa);
  if (exponent > 0) {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent));
  } else if (exponent < 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent));
  }
  return r;
}

mpz_class scaled_num(const Rational& q, long e) {
  mpz_class num = q.get_num();
  if (e > 0) mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return num;
}

mpz_class scaled_den(const Rational& q, long e) {
  mpz_class den = q.get_den();
  if (e < 0) mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return den;
}

bool is_perfect_square(const Rational& q) {
  return q >= 0 && mpz_perfect_square_p(q.get_num_mpz_t()) != 0 &&
         mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

Rational exact_sqrt(const Rational& q) {
  mpz_class n;
  mpz_class d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Lower and upper dyadic bounds on sqrt(q) for q > 0.
Rational sqrt_bound(const Rational& q, unsigned bits, bool upper) {
  if (q == 0) return 0;
  if (is_perfect_square(q)) return exact_sqrt(q);
  // q * 4^m has at least 2*(bits+2) integer bits.
  const long magnitude =
      static_cast<long>(bits_of(q.get_num())) - static_cast<long>(bits_of(q.get_den()));
  const long m = std::max(0L, (2L * (static_cast<long>(bits) + 2) - magnitude + 2) / 2);
  mpz_class scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * m));
  mpz_class quotient;
  if (upper) {
    mpz_cdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  } else {
    mpz_fdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  }
  mpz_class root;
  mpz_class rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), quotient.get_mpz_t());
  if (upper && rem != 0) root += 1;
  return dyadic(root, m);
}

}  // namespace

Rational round_down(const Rational& q, std::size_t bits) {
  if (q == 0) return q;
  const long e = scale_exponent(q, bits);
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), scaled_num(q, e).get_mpz_t(), scaled_den(q, e).get_mpz_t());
  return dyadic(out, e);
}

Rational round_up(const Rational& q, std::size_t bits) {
  if (q == 0) return q;
  const long e = scale_exponent(q, bits);
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), scaled_num(q, e).get_mpz_t(), scaled_den(q, e).get_mpz_t());
  return dyadic(out, e);
}

Interval::Interval(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
  if (lo_ > hi_) {
    throw Error(ErrorCode::InvalidArgument,
                "interval endpoints out of order: [" + to_string(lo_) + ", " + to_string(hi_) + "]");
  }
}

void Interval::tidy() {
  if (lo_ == hi_) return;
  if (bit_size(lo_) > kMaxEndpointBits) lo_ = round_down(lo_, kMaxEndpointBits / 2);
  if (bit_size(hi_) > kMaxEndpointBits) hi_ = round_up(hi_, kMaxEndpointBits / 2);
}

Rational Interval::mag() const { return std::max(abs(lo_), abs(hi_)); }

Rational Interval::mig() const {
  if (contains_zero()) return 0;
  return std::min(abs(lo_), abs(hi_));
}

Interval& Interval::operator+=(const Interval& o) {
  lo_ += o.lo_;
  hi_ += o.hi_;
  tidy();
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  lo_ -= o.hi_;
  hi_ -= o.lo_;
  tidy();
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  if (is_exact() && o.is_exact()) {
    lo_ *= o.lo_;
    hi_ = lo_;
    return *this;
  }
  const Rational a = lo_ * o.lo_;
  const Rational b = lo_ * o.hi_;
  const Rational c = hi_ * o.lo_;
  const Rational d = hi_ * o.hi_;
  lo_ = std::min({a, b, c, d});
  hi_ = std::max({a, b, c, d});
  tidy();
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.contains_zero()) {
    throw Error(ErrorCode::InvalidArgument, "interval division by an enclosure of zero");
  }
  const Interval inv(1 / o.hi_, 1 / o.lo_);
  return *this *= inv;
}

Interval sqr(const Interval& x) {
  const Rational a = x.lo() * x.lo();
  const Rational b = x.hi() * x.hi();
  if (x.contains_zero()) return {Rational(0), std::max(a, b)};
  return {std::min(a, b), std::max(a, b)};
}

Interval sqrt(const Interval& x, unsigned precision_bits) {
  if (x.hi() < 0) throw Error(ErrorCode::InvalidArgument, "sqrt of negative enclosure " + to_string(x));
  const Rational lo = x.lo() < 0 ? Rational(0) : x.lo();
  if (lo == x.hi() && is_perfect_square(lo)) return Interval(exact_sqrt(lo));
  return {sqrt_bound(lo, precision_bits, false), sqrt_bound(x.hi(), precision_bits, true)};
}

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

std::string to_string(const Interval& x) {
  if (x.is_exact()) return to_string(x.lo());
  return "[" + to_string(x.lo()) + ", " + to_string(x.hi()) + "]";
}

CertComplex& CertComplex::operator+=(const CertComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

CertComplex& CertComplex::operator-=(const CertComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

CertComplex& CertComplex::operator*=(const CertComplex& o) {
  Interval re = re_ * o.re_ - im_ * o.im_;
  Interval im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string to_string(const CertComplex& z) {
  return "(" + to_string(z.re()) + ") + (" + to_string(z.im()) + ")i";
}

}  // namespace opchain
