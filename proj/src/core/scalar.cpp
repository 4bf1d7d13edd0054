#include "opchain/core/scalar.hpp"

#include <algorithm>
#include <cctype>

#include "opchain/core/error.hpp"

namespace opchain {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::size_t bit_size(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) != 0;
    });
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num.front() == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+') {
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

ExactScalar ExactScalar::inverse() const {
  const Rational n = norm_sq();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero scalar");
  return {re_ / n, -im_ / n};
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  if (im_ == 0 && o.im_ == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

ExactScalar imaginary_unit() { return {Rational(0), Rational(1)}; }

ExactScalar parse_exact(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty scalar");
  if (s.back() != 'i') return ExactScalar(parse_rational(s));
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if (s[p] == '+' || s[p] == '-') {
      split = p;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  Rational im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = parse_rational(im_part);
  }
  return {parse_rational(re_part), im};
}

std::string to_string(const ExactScalar& z) {
  if (z.im() == 0) return to_string(z.re());
  std::string out = to_string(z.re());
  if (z.im() >= 0) out += '+';
  out += to_string(z.im());
  out += 'i';
  return out;
}

}  // namespace opchain
