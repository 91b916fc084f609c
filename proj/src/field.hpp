#ifndef PIALG_FIELD_HPP
#define PIALG_FIELD_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace pialg {

/// Coefficient field Q(zeta_m) represented as Q[z]/(Phi_m(z)).
/// Conductor 1 gives the plain rationals. Instances are interned and
/// immutable; Scalar stores a raw pointer into the registry.
class FieldData {
public:
  unsigned conductor;             // m >= 1
  unsigned degree;                // deg Phi_m = euler_phi(m)
  std::vector<mpz_class> phi;     // Phi_m, monic, size degree+1, low to high

  bool operator==(const FieldData& o) const { return conductor == o.conductor; }
};

/// Interned field for a conductor. Pointers stay valid for the process
/// lifetime, so FieldData identity is pointer identity.
const FieldData* field(unsigned conductor);

unsigned euler_phi(unsigned m);

/// Element of Q(zeta_m): residue polynomial of degree < deg Phi_m with
/// rational coefficients, always kept at full fixed length.
class Scalar {
public:
  Scalar() : m_field(nullptr) {}
  explicit Scalar(const FieldData* f) : m_field(f), m_c(f->degree) {}
  Scalar(const FieldData* f, const mpq_class& rational);
  Scalar(const FieldData* f, long n);

  static Scalar zero(const FieldData* f) { return Scalar(f); }
  static Scalar one(const FieldData* f) { return Scalar(f, 1); }
  /// zeta_m as an element; requires conductor > 1 (for m = 1 returns 1).
  static Scalar zeta(const FieldData* f);

  const FieldData* field_data() const { return m_field; }
  const std::vector<mpq_class>& coeffs() const { return m_c; }
  std::vector<mpq_class>& coeffs_mut() { return m_c; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;           // all coefficients beyond z^0 vanish
  const mpq_class& rational_part() const { return m_c[0]; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;   // field division
  Scalar inverse() const;                    // throws on zero
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  /// total order (lexicographic on coefficients), for canonical sorting
  int cmp(const Scalar& o) const;
  bool operator<(const Scalar& o) const { return cmp(o) < 0; }

  /// complex-conjugation-free string form: "2", "-1/3", "1-2*z^2"
  std::string str() const;

private:
  const FieldData* m_field;
  std::vector<mpq_class> m_c;         // size == m_field->degree
};

/// Parse "p/q", integers, or polynomials in z like "1+2*z^3-z/2".
/// Throws std::runtime_error with a position hint on bad syntax.
Scalar parse_scalar(const FieldData* f, const std::string& text);

/// Clear denominators and strip integer content in place across a whole
/// row of scalars; keeps the row's span direction. No-op on zero rows.
void make_row_primitive(std::vector<Scalar>& row);

// plain rational-coefficient polynomial helpers used by Scalar::inverse;
// vectors are coefficient lists low to high, not length-normalized
std::vector<mpq_class> qpoly_trim(std::vector<mpq_class> p);
std::vector<mpq_class> qpoly_mul(const std::vector<mpq_class>& a,
                                 const std::vector<mpq_class>& b);
// divide by a monic-leading divisor, returns (quotient, remainder)
std::pair<std::vector<mpq_class>, std::vector<mpq_class>> qpoly_divmod(
    std::vector<mpq_class> num, const std::vector<mpq_class>& den);

}  // namespace pialg

#endif
