#ifndef AINFTY_SCALAR_HPP
#define AINFTY_SCALAR_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "ainfty/error.hpp"

namespace ainfty {

enum class FieldKind { Rational, Prime };

/// The ground field: the rationals or F_p for a prime p.
struct Field {
  FieldKind kind = FieldKind::Rational;
  std::int64_t p = 0;  // modulus, Prime only

  static Field rationals() { return Field{FieldKind::Rational, 0}; }
  static Field prime(std::int64_t p);  // throws NotPrime

  bool operator==(const Field&) const = default;

  std::string to_string() const;
  static Field parse(const std::string& tag);  // "Q" or "F<p>"
};

/// Exact field element. Rationals are kept in lowest terms with positive
/// denominator (mpq_class canonical form); F_p residues lie in [0, p).
class Scalar {
public:
  Scalar() : field_(Field::rationals()), rat_(0) {}
  static Scalar zero(const Field& f);
  static Scalar one(const Field& f);
  static Scalar from_int(const Field& f, std::int64_t n);
  static Scalar parse(const Field& f, const std::string& text);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws DivisionByZero
  Scalar operator-() const;
  Scalar inverse() const;  // throws DivisionByZero

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string to_string() const;

private:
  Field field_;
  mpq_class rat_;          // Rational
  std::int64_t res_ = 0;   // Prime residue in [0, p)

  void check_same_field(const Scalar& o) const;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace ainfty

#endif
