#include "ainfty/scalar.hpp"

#include <ostream>

namespace ainfty {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotADifferential: return "NotADifferential";
    case ErrorKind::NotARetract: return "NotARetract";
    case ErrorKind::NotADgAlgebra: return "NotADgAlgebra";
    case ErrorKind::RetractMismatch: return "RetractMismatch";
    case ErrorKind::FormalSymbolApplied: return "FormalSymbolApplied";
    case ErrorKind::NotWeightDecreasing: return "NotWeightDecreasing";
    case ErrorKind::UnitViolation: return "UnitViolation";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SemanticError: return "SemanticError";
  }
  return "UnknownError";
}

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod_reduce(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

// Extended Euclid; m is prime so every nonzero residue is invertible.
std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return mod_reduce(t, p);
}

}  // namespace

Field Field::prime(std::int64_t p) {
  if (!is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  return Field{FieldKind::Prime, p};
}

std::string Field::to_string() const {
  return kind == FieldKind::Rational ? "Q" : "F" + std::to_string(p);
}

Field Field::parse(const std::string& tag) {
  if (tag == "Q") return rationals();
  if (tag.size() > 1 && tag[0] == 'F') {
    try {
      return prime(std::stoll(tag.substr(1)));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  fail(ErrorKind::ParseError, "unknown field tag '" + tag + "'");
}

Scalar Scalar::zero(const Field& f) { return from_int(f, 0); }
Scalar Scalar::one(const Field& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const Field& f, std::int64_t n) {
  Scalar s;
  s.field_ = f;
  if (f.kind == FieldKind::Rational) {
    s.rat_ = mpq_class(static_cast<long>(n));
  } else {
    s.res_ = mod_reduce(n, f.p);
  }
  return s;
}

Scalar Scalar::parse(const Field& f, const std::string& text) {
  Scalar s;
  s.field_ = f;
  try {
    if (f.kind == FieldKind::Rational) {
      mpq_class q(text);
      q.canonicalize();
      if (q.get_den() == 0) fail(ErrorKind::ParseError, "zero denominator");
      s.rat_ = q;
    } else {
      s.res_ = mod_reduce(std::stoll(text), f.p);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "bad scalar '" + text + "' for field " + f.to_string());
  }
  return s;
}

bool Scalar::is_zero() const {
  return field_.kind == FieldKind::Rational ? rat_ == 0 : res_ == 0;
}

bool Scalar::is_one() const {
  return field_.kind == FieldKind::Rational ? rat_ == 1 : res_ == 1;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_))
    fail(ErrorKind::FieldMismatch,
         field_.to_string() + " vs " + o.field_.to_string());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  Scalar r;
  r.field_ = field_;
  if (field_.kind == FieldKind::Rational)
    r.rat_ = rat_ + o.rat_;
  else
    r.res_ = mod_reduce(res_ + o.res_, field_.p);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(o);
  Scalar r;
  r.field_ = field_;
  if (field_.kind == FieldKind::Rational)
    r.rat_ = rat_ - o.rat_;
  else
    r.res_ = mod_reduce(res_ - o.res_, field_.p);
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  Scalar r;
  r.field_ = field_;
  if (field_.kind == FieldKind::Rational)
    r.rat_ = rat_ * o.rat_;
  else
    r.res_ = static_cast<std::int64_t>(
        (static_cast<__int128>(res_) * o.res_) % field_.p);
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar r;
  r.field_ = field_;
  if (field_.kind == FieldKind::Rational)
    r.rat_ = -rat_;
  else
    r.res_ = mod_reduce(-res_, field_.p);
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  Scalar r;
  r.field_ = field_;
  if (field_.kind == FieldKind::Rational)
    r.rat_ = 1 / rat_;
  else
    r.res_ = mod_inverse(res_, field_.p);
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  return field_.kind == FieldKind::Rational ? rat_ == o.rat_ : res_ == o.res_;
}

std::string Scalar::to_string() const {
  if (field_.kind == FieldKind::Prime) return std::to_string(res_);
  if (rat_.get_den() == 1) return rat_.get_num().get_str();
  return rat_.get_num().get_str() + "/" + rat_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

}  // namespace ainfty
