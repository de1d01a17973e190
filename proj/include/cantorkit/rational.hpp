#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace cantorkit {

/// Exact rational number. Always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;

  template <typename I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
  Rational(I v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  explicit Rational(mpz_class v) : q_(std::move(v)) {}

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  /// Parses "n", "-n", "p/q" (optional leading sign, decimal digits only).
  static Rational parse(std::string_view text) {
    auto bad = [&] {
      return std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
    };
    auto valid_int = [](std::string_view s) {
      std::size_t i = 0;
      if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) return false;
      for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
      return true;
    };
    auto to_mpz = [](std::string_view s) {
      if (!s.empty() && s[0] == '+') s.remove_prefix(1);
      return mpz_class(std::string(s), 10);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      if (!valid_int(text)) throw bad();
      return Rational(to_mpz(text));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!valid_int(num) || den.empty() || den[0] == '-' || den[0] == '+' || !valid_int(den))
      throw bad();
    mpz_class d = to_mpz(den);
    if (d == 0) throw std::domain_error("rational with zero denominator: \"" + std::string(text) + "\"");
    return Rational(to_mpz(num), d);
  }

  /// "p/q", or "n" when the denominator is 1.
  [[nodiscard]] std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  [[nodiscard]] mpz_class numerator() const { return q_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return q_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] double to_double() const { return q_.get_d(); }

  [[nodiscard]] mpz_class floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }
  [[nodiscard]] mpz_class ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.q_ = -a.q_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  [[nodiscard]] const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_{0};
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// base^exp for any integer exponent (negative exponents give reciprocals).
inline Rational pow(const Rational& base, long exp) {
  if (exp < 0) return Rational(1) / pow(base, -exp);
  Rational result(1);
  Rational b = base;
  auto e = static_cast<unsigned long>(exp);
  while (e != 0) {
    if (e & 1UL) result *= b;
    b *= b;
    e >>= 1U;
  }
  return result;
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace cantorkit
