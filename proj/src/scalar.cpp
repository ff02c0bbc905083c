#include "valshare/scalar.hpp"

#include <charconv>
#include <cmath>
#include <regex>

#include "valshare/error.hpp"

namespace valshare {

namespace {

std::string double_to_string(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  std::string out(buf, res.ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

double parse_decimal(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty numeric literal");
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw Error(ErrorKind::InvalidArgument, "malformed numeric literal '" + s + "'");
  }
  return v;
}

}  // namespace

bool looks_rational(std::string_view text) {
  static const std::regex re(R"(^[+-]?[0-9]+(/[0-9]+)?$)");
  return std::regex_match(text.begin(), text.end(), re);
}

mpq_class parse_rational(std::string_view text) {
  if (!looks_rational(text)) {
    throw Error(ErrorKind::InvalidArgument, "malformed rational '" + std::string(text) + "'");
  }
  std::string s(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  auto slash = s.find('/');
  mpz_class num(s.substr(0, slash));
  mpz_class den(1);
  if (slash != std::string::npos) den = mpz_class(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q, mpq_class(0));
}

Scalar Scalar::from_complex(Complex z) {
  Scalar s;
  s.exact_ = false;
  s.z_ = z;
  return s;
}

Scalar Scalar::parse(std::string_view re, std::string_view im) {
  if (looks_rational(re) && looks_rational(im)) {
    return Scalar(parse_rational(re), parse_rational(im));
  }
  auto part = [](std::string_view t) {
    return looks_rational(t) ? parse_rational(t).get_d() : parse_decimal(t);
  };
  return from_complex(Complex(part(re), part(im)));
}

bool Scalar::is_zero() const {
  if (exact_) return sgn(re_) == 0 && sgn(im_) == 0;
  return z_ == Complex(0.0, 0.0);
}

bool Scalar::is_real() const {
  if (exact_) return sgn(im_) == 0;
  return z_.imag() == 0.0;
}

bool Scalar::is_one() const {
  if (exact_) return re_ == 1 && sgn(im_) == 0;
  return z_ == Complex(1.0, 0.0);
}

Complex Scalar::to_complex() const {
  if (!exact_) return z_;
  return Complex(re_.get_d(), im_.get_d());
}

Scalar Scalar::conj() const {
  if (!exact_) return from_complex(std::conj(z_));
  return Scalar(re_, -im_);
}

std::string Scalar::re_string() const {
  return exact_ ? rational_to_string(re_) : double_to_string(z_.real());
}

std::string Scalar::im_string() const {
  return exact_ ? rational_to_string(im_) : double_to_string(z_.imag());
}

std::string Scalar::to_string() const {
  bool re_zero = exact_ ? sgn(re_) == 0 : z_.real() == 0.0;
  bool im_zero = exact_ ? sgn(im_) == 0 : z_.imag() == 0.0;
  if (im_zero) return re_string();
  std::string im = im_string();
  std::string imag_part = im + "*i";
  if (re_zero) return imag_part;
  if (!im.empty() && im[0] == '-') return re_string() + " - " + im.substr(1) + "*i";
  return re_string() + " + " + imag_part;
}

Scalar Scalar::operator-() const {
  if (!exact_) return from_complex(-z_);
  return Scalar(-re_, -im_);
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (exact_ && rhs.exact_) {
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
  }
  *this = from_complex(to_complex() + rhs.to_complex());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (exact_ && rhs.exact_) {
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
  }
  *this = from_complex(to_complex() - rhs.to_complex());
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (exact_ && rhs.exact_) {
    mpq_class re = re_ * rhs.re_ - im_ * rhs.im_;
    mpq_class im = re_ * rhs.im_ + im_ * rhs.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  *this = from_complex(to_complex() * rhs.to_complex());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::DivisionByZero, "scalar division by zero");
  if (exact_ && rhs.exact_) {
    mpq_class norm = rhs.re_ * rhs.re_ + rhs.im_ * rhs.im_;
    mpq_class re = (re_ * rhs.re_ + im_ * rhs.im_) / norm;
    mpq_class im = (im_ * rhs.re_ - re_ * rhs.im_) / norm;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  *this = from_complex(to_complex() / rhs.to_complex());
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return a.re_ == b.re_ && a.im_ == b.im_;
  return a.to_complex() == b.to_complex();
}

Scalar Scalar::pow(unsigned long k) const {
  Scalar result(1);
  Scalar base = *this;
  if (!exact_) result = from_complex(Complex(1.0, 0.0));
  while (k > 0) {
    if (k & 1UL) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

bool approx_equal(const Scalar& a, const Scalar& b, double abs_tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  Complex d = a.to_complex() - b.to_complex();
  return std::abs(d.real()) <= abs_tol && std::abs(d.imag()) <= abs_tol;
}

bool lex_less(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    int c = cmp(a.re_exact(), b.re_exact());
    if (c != 0) return c < 0;
    return cmp(a.im_exact(), b.im_exact()) < 0;
  }
  Complex x = a.to_complex();
  Complex y = b.to_complex();
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

}  // namespace valshare
