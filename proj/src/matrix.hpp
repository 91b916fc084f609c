#ifndef PIALG_MATRIX_HPP
#define PIALG_MATRIX_HPP

#include <optional>
#include <vector>

#include "field.hpp"

namespace pialg {

using Vec = std::vector<Scalar>;

Vec vec_zero(const FieldData* f, int n);
Vec vec_unit(const FieldData* f, int n, int i);
bool vec_is_zero(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& v);

/// Dense matrix over the cyclotomic field. Row-major.
class Matrix {
public:
  Matrix() : m_rows(0), m_cols(0), m_field(nullptr) {}
  Matrix(const FieldData* f, int rows, int cols)
      : m_rows(rows), m_cols(cols), m_field(f),
        m_a(size_t(rows) * cols, Scalar::zero(f)) {}

  static Matrix identity(const FieldData* f, int n);

  int rows() const { return m_rows; }
  int cols() const { return m_cols; }
  const FieldData* field_data() const { return m_field; }

  Scalar& at(int i, int j) { return m_a[size_t(i) * m_cols + j]; }
  const Scalar& at(int i, int j) const { return m_a[size_t(i) * m_cols + j]; }

  Vec row(int i) const;
  Vec col(int j) const;
  void set_row(int i, const Vec& v);
  void set_col(int j, const Vec& v);

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  Vec apply(const Vec& v) const;        // this * v (column vector)
  Matrix transpose() const;
  Scalar trace() const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;

  /// flatten row-major into one vector (for treating operators as vectors)
  Vec flatten() const { return m_a; }
  static Matrix unflatten(const FieldData* f, int rows, int cols, const Vec& v);

private:
  int m_rows, m_cols;
  const FieldData* m_field;
  std::vector<Scalar> m_a;
};

/// Canonical subspace of F^n: reduced row-echelon basis with unit pivots.
/// Equal subspaces have identical representations, so operator== is
/// structural equality.
class Subspace {
public:
  Subspace() : m_ambient(0), m_field(nullptr) {}
  Subspace(const FieldData* f, int ambient)
      : m_ambient(ambient), m_field(f) {}

  static Subspace zero(const FieldData* f, int ambient);
  static Subspace full(const FieldData* f, int ambient);
  /// span of the given vectors (canonicalized)
  static Subspace span(const FieldData* f, int ambient,
                       const std::vector<Vec>& vectors);

  int dim() const { return int(m_basis.size()); }
  int ambient_dim() const { return m_ambient; }
  const FieldData* field_data() const { return m_field; }
  const std::vector<Vec>& basis() const { return m_basis; }
  const std::vector<int>& pivots() const { return m_pivots; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  /// coordinates of v in the echelon basis; nullopt if v is outside
  std::optional<Vec> coordinates(const Vec& v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  /// basis as the rows of a dim x ambient matrix
  Matrix basis_matrix() const;
  /// unit vectors on non-pivot coordinates; complement as coordinate section
  Subspace coordinate_complement() const;

private:
  friend class EchelonBasis;
  int m_ambient;
  const FieldData* m_field;
  std::vector<Vec> m_basis;    // RREF rows, unit leading entries
  std::vector<int> m_pivots;   // strictly increasing pivot columns
};

/// Streaming row-space accumulator. Rows are reduced fraction-free
/// (cross-multiplication, integer content stripped per row) so entries
/// stay integral; canonical RREF only on finalize.
class EchelonBasis {
public:
  EchelonBasis(const FieldData* f, int cols) : m_cols(cols), m_field(f) {}

  /// reduce r against the current basis; keep the residue as a new pivot
  /// row if nonzero. Returns true when the rank grew.
  bool insert(Vec r);
  /// reduce r against the basis without inserting; the residue is returned
  Vec reduce(Vec r) const;

  int rank() const { return int(m_rows.size()); }
  int cols() const { return m_cols; }

  /// canonical reduced echelon subspace of the accumulated row space
  Subspace to_subspace() const;

private:
  int m_cols;
  const FieldData* m_field;
  std::vector<Vec> m_rows;     // echelon rows, integral-primitive
  std::vector<int> m_lead;     // leading column per row
};

// elimination-backed operations; all exact
int rank(const Matrix& m);
Subspace row_space(const Matrix& m);
Subspace kernel(const Matrix& m);                 // {x : Mx = 0}
Subspace image(const Matrix& m);                  // column space, in F^rows
std::optional<Vec> solve(const Matrix& m, const Vec& b);  // one solution of Mx=b
std::optional<Matrix> inverse(const Matrix& m);

/// rank of the matrix with entries mapped into F_p via a ring map sending
/// z to a root of Phi_m mod p; nullopt when p is unusable for this matrix
/// (denominator divisible by p, or Phi_m has no root mod p).
std::optional<long> rank_mod_p(const Matrix& m, uint32_t p);

/// solve X * A = B row-wise, i.e. express the rows of B in the row space
/// of A; nullopt if some row of B is outside
std::optional<Matrix> express_rows(const Matrix& b, const Matrix& a);

}  // namespace pialg

#endif
