#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "specseq/errors.hpp"

namespace specseq {

enum class FieldKind { rationals, prime };

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Coefficient field of every object: the rationals or a prime field F_p.
struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  std::uint32_t characteristic = 0;

  static FieldSpec rationals() { return {}; }

  static FieldSpec prime(std::uint64_t p) {
    if (!is_prime(p) || p >= (std::uint64_t{1} << 31))
      throw usage_error("field characteristic " + std::to_string(p) + " is not a supported prime");
    return {FieldKind::prime, static_cast<std::uint32_t>(p)};
  }

  // Accepts "Q" or "Fp:<prime>".
  static FieldSpec parse(std::string_view text) {
    if (text == "Q") return rationals();
    if (text.substr(0, 3) == "Fp:") {
      std::uint64_t p = 0;
      auto body = text.substr(3);
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
      if (ec != std::errc{} || ptr != body.data() + body.size() || body.empty())
        throw parse_error("bad field spec '" + std::string(text) + "'");
      if (!is_prime(p) || p >= (std::uint64_t{1} << 31))
        throw parse_error("field characteristic " + std::string(body) + " is not prime");
      return {FieldKind::prime, static_cast<std::uint32_t>(p)};
    }
    throw parse_error("bad field spec '" + std::string(text) + "'");
  }

  std::string to_string() const {
    return kind == FieldKind::rationals ? "Q" : "Fp:" + std::to_string(characteristic);
  }

  bool operator==(const FieldSpec&) const = default;
};

// Arbitrary-precision rational number, always in lowest terms.
class Rational {
 public:
  Rational() = default;
  explicit Rational(long v) : v_(v) {}
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  const mpq_class& value() const { return v_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

  bool is_zero() const { return sgn(v_) == 0; }

 private:
  mpq_class v_;
};

// Residue modulo a prime carried by the value. A default-constructed value is
// the zero of every prime field; all other values know their modulus, and
// mixing two different moduli is rejected.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t v, std::uint32_t p) : p_(p) {
    if (p == 0) throw usage_error("Fp needs a modulus");
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }

  std::uint32_t residue() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    auto p = common(a, b);
    if (p == 0) return {};
    std::uint64_t s = std::uint64_t{a.v_} + b.v_;
    return raw(static_cast<std::uint32_t>(s >= p ? s - p : s), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    auto p = common(a, b);
    if (p == 0) return {};
    return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : static_cast<std::uint32_t>(std::uint64_t{a.v_} + p - b.v_), p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    auto p = common(a, b);
    if (p == 0) return {};
    return raw(static_cast<std::uint32_t>(std::uint64_t{a.v_} * b.v_ % p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    auto p = common(a, b);
    return a * raw(b.inverse_residue(), p);
  }
  Fp operator-() const { return v_ == 0 ? Fp{} : raw(p_ - v_, p_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) throw usage_error("mixed prime fields");
    return a.v_ == b.v_;
  }

  bool is_zero() const { return v_ == 0; }

 private:
  static Fp raw(std::uint32_t v, std::uint32_t p) {
    Fp x;
    x.v_ = v;
    x.p_ = p;
    return x;
  }
  static std::uint32_t common(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) throw usage_error("mixed prime fields");
    return a.p_ ? a.p_ : b.p_;
  }
  std::uint32_t inverse_residue() const {
    // Fermat: v^(p-2)
    std::uint64_t result = 1, base = v_, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr FieldKind kind = FieldKind::rationals;

  static Rational from_int(long v, const FieldSpec&) { return Rational(v); }

  static Rational parse(std::string_view s, const FieldSpec&) {
    mpq_class q;
    std::string text(s);
    if (text.empty() || q.set_str(text, 10) != 0) throw parse_error("bad rational '" + text + "'");
    if (q.get_den() == 0) throw parse_error("zero denominator in '" + text + "'");
    return Rational(q);
  }

  static std::string format(const Rational& x) { return x.value().get_str(); }

  static Rational random(std::mt19937_64& rng, const FieldSpec&) {
    return Rational(std::uniform_int_distribution<long>(-3, 3)(rng));
  }
};

template <>
struct scalar_traits<Fp> {
  static constexpr FieldKind kind = FieldKind::prime;

  static Fp from_int(long v, const FieldSpec& f) { return Fp(v, f.characteristic); }

  static Fp parse(std::string_view s, const FieldSpec& f) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      throw parse_error("bad residue '" + std::string(s) + "'");
    if (v < 0 || v >= static_cast<std::int64_t>(f.characteristic))
      throw parse_error("residue '" + std::string(s) + "' not in [0, " + std::to_string(f.characteristic) + ")");
    return Fp(v, f.characteristic);
  }

  static std::string format(const Fp& x) { return std::to_string(x.residue()); }

  static Fp random(std::mt19937_64& rng, const FieldSpec& f) {
    return Fp(static_cast<std::int64_t>(std::uniform_int_distribution<std::uint32_t>(0, f.characteristic - 1)(rng)),
              f.characteristic);
  }
};

template <class K>
K from_int(long v, const FieldSpec& f) {
  return scalar_traits<K>::from_int(v, f);
}

template <class K>
K one(const FieldSpec& f) {
  return scalar_traits<K>::from_int(1, f);
}

template <class K>
bool is_zero(const K& x) {
  return x.is_zero();
}

template <class K>
std::string format_scalar(const K& x) {
  return scalar_traits<K>::format(x);
}

template <class K>
K parse_scalar(std::string_view s, const FieldSpec& f) {
  return scalar_traits<K>::parse(s, f);
}

template <class K>
K random_scalar(std::mt19937_64& rng, const FieldSpec& f) {
  return scalar_traits<K>::random(rng, f);
}

// Rejects a field spec that cannot be represented by the scalar type K.
template <class K>
void require_field(const FieldSpec& f) {
  if (f.kind != scalar_traits<K>::kind) throw usage_error("field " + f.to_string() + " does not match scalar type");
}

}  // namespace specseq
