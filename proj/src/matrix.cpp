#include "matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace pialg {

Vec vec_zero(const FieldData* f, int n) { return Vec(n, Scalar::zero(f)); }

Vec vec_unit(const FieldData* f, int n, int i) {
  Vec v(n, Scalar::zero(f));
  v[i] = Scalar::one(f);
  return v;
}

bool vec_is_zero(const Vec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec vec_scale(const Scalar& c, const Vec& v) {
  Vec r(v);
  for (auto& s : r) s *= c;
  return r;
}

// ---------------------------------------------------------------- Matrix

Matrix Matrix::identity(const FieldData* f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Vec Matrix::row(int i) const {
  Vec v;
  v.reserve(m_cols);
  for (int j = 0; j < m_cols; ++j) v.push_back(at(i, j));
  return v;
}

Vec Matrix::col(int j) const {
  Vec v;
  v.reserve(m_rows);
  for (int i = 0; i < m_rows; ++i) v.push_back(at(i, j));
  return v;
}

void Matrix::set_row(int i, const Vec& v) {
  for (int j = 0; j < m_cols; ++j) at(i, j) = v[j];
}

void Matrix::set_col(int j, const Vec& v) {
  for (int i = 0; i < m_rows; ++i) at(i, j) = v[i];
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (m_cols != o.m_rows) throw std::runtime_error("matrix shape mismatch");
  Matrix r(m_field, m_rows, o.m_cols);
  for (int i = 0; i < m_rows; ++i)
    for (int k = 0; k < m_cols; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.m_cols; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r(*this);
  for (size_t i = 0; i < r.m_a.size(); ++i) r.m_a[i] += o.m_a[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r(*this);
  for (size_t i = 0; i < r.m_a.size(); ++i) r.m_a[i] -= o.m_a[i];
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r(*this);
  for (auto& s : r.m_a) s *= c;
  return r;
}

Vec Matrix::apply(const Vec& v) const {
  if (int(v.size()) != m_cols) throw std::runtime_error("apply shape mismatch");
  Vec r = vec_zero(m_field, m_rows);
  for (int i = 0; i < m_rows; ++i)
    for (int j = 0; j < m_cols; ++j) {
      const Scalar& a = at(i, j);
      if (!a.is_zero() && !v[j].is_zero()) r[i] += a * v[j];
    }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(m_field, m_cols, m_rows);
  for (int i = 0; i < m_rows; ++i)
    for (int j = 0; j < m_cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

Scalar Matrix::trace() const {
  Scalar t = Scalar::zero(m_field);
  for (int i = 0; i < std::min(m_rows, m_cols); ++i) t += at(i, i);
  return t;
}

bool Matrix::operator==(const Matrix& o) const {
  if (m_rows != o.m_rows || m_cols != o.m_cols) return false;
  for (size_t i = 0; i < m_a.size(); ++i)
    if (m_a[i] != o.m_a[i]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& s : m_a)
    if (!s.is_zero()) return false;
  return true;
}

Matrix Matrix::unflatten(const FieldData* f, int rows, int cols, const Vec& v) {
  Matrix m(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = v[size_t(i) * cols + j];
  return m;
}

// ---------------------------------------------------------- EchelonBasis

namespace {
int leading_index(const Vec& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return int(i);
  return -1;
}
}  // namespace

Vec EchelonBasis::reduce(Vec r) const {
  for (size_t k = 0; k < m_rows.size(); ++k) {
    int lead = m_lead[k];
    if (r[lead].is_zero()) continue;
    // fraction-free cross-multiplication against the stored pivot row
    Scalar a = m_rows[k][lead];
    Scalar b = r[lead];
    for (int j = 0; j < m_cols; ++j) {
      Scalar t = a * r[j] - b * m_rows[k][j];
      r[j] = std::move(t);
    }
  }
  make_row_primitive(r);
  return r;
}

bool EchelonBasis::insert(Vec r) {
  if (int(r.size()) != m_cols) throw std::runtime_error("row width mismatch");
  r = reduce(std::move(r));
  int lead = leading_index(r);
  if (lead < 0) return false;
  // keep rows ordered by leading column so reduce() eliminates left to right
  size_t pos = 0;
  while (pos < m_lead.size() && m_lead[pos] < lead) ++pos;
  m_rows.insert(m_rows.begin() + pos, std::move(r));
  m_lead.insert(m_lead.begin() + pos, lead);
  return true;
}

Subspace EchelonBasis::to_subspace() const {
  // back-substitute to reduced form, then normalize pivots to 1
  std::vector<Vec> rows = m_rows;
  for (size_t i = 0; i < rows.size(); ++i) {
    int lead = m_lead[i];
    for (size_t j = 0; j < i; ++j) {
      if (rows[j][lead].is_zero()) continue;
      Scalar a = rows[i][lead];
      Scalar b = rows[j][lead];
      for (int c = 0; c < m_cols; ++c) {
        Scalar t = a * rows[j][c] - b * rows[i][c];
        rows[j][c] = std::move(t);
      }
      make_row_primitive(rows[j]);
    }
  }
  Subspace s(m_field, m_cols);
  s.m_basis = std::move(rows);
  s.m_pivots = m_lead;
  for (size_t i = 0; i < s.m_basis.size(); ++i) {
    Scalar inv = s.m_basis[i][m_lead[i]].inverse();
    for (auto& c : s.m_basis[i]) c *= inv;
  }
  return s;
}

// -------------------------------------------------------------- Subspace

Subspace Subspace::zero(const FieldData* f, int ambient) {
  return Subspace(f, ambient);
}

Subspace Subspace::full(const FieldData* f, int ambient) {
  Subspace s(f, ambient);
  for (int i = 0; i < ambient; ++i) {
    s.m_basis.push_back(vec_unit(f, ambient, i));
    s.m_pivots.push_back(i);
  }
  return s;
}

Subspace Subspace::span(const FieldData* f, int ambient,
                        const std::vector<Vec>& vectors) {
  EchelonBasis eb(f, ambient);
  for (const auto& v : vectors) eb.insert(v);
  return eb.to_subspace();
}

bool Subspace::contains(const Vec& v) const {
  Vec r = v;
  for (size_t i = 0; i < m_basis.size(); ++i) {
    const Scalar& c = r[m_pivots[i]];
    if (c.is_zero()) continue;
    Scalar cc = c;  // pivot entries are 1, plain subtraction suffices
    for (int j = 0; j < m_ambient; ++j) r[j] -= cc * m_basis[i][j];
  }
  return vec_is_zero(r);
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& b : other.m_basis)
    if (!contains(b)) return false;
  return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  Vec coords;
  coords.reserve(m_basis.size());
  Vec r = v;
  for (size_t i = 0; i < m_basis.size(); ++i) {
    Scalar c = r[m_pivots[i]];
    coords.push_back(c);
    if (c.is_zero()) continue;
    for (int j = 0; j < m_ambient; ++j) r[j] -= c * m_basis[i][j];
  }
  if (!vec_is_zero(r)) return std::nullopt;
  return coords;
}

Subspace Subspace::sum(const Subspace& other) const {
  EchelonBasis eb(m_field, m_ambient);
  for (const auto& b : m_basis) eb.insert(b);
  for (const auto& b : other.m_basis) eb.insert(b);
  return eb.to_subspace();
}

Subspace Subspace::intersect(const Subspace& other) const {
  // Zassenhaus: echelon rows of [[U U],[W 0]] whose left half vanished
  // have right halves spanning the intersection
  EchelonBasis eb(m_field, 2 * m_ambient);
  for (const auto& b : m_basis) {
    Vec r = b;
    r.insert(r.end(), b.begin(), b.end());
    eb.insert(std::move(r));
  }
  for (const auto& b : other.m_basis) {
    Vec r = b;
    Vec z = vec_zero(m_field, m_ambient);
    r.insert(r.end(), z.begin(), z.end());
    eb.insert(std::move(r));
  }
  Subspace big = eb.to_subspace();
  std::vector<Vec> inter;
  for (int i = 0; i < big.dim(); ++i) {
    if (big.pivots()[i] >= m_ambient) {
      Vec right(big.basis()[i].begin() + m_ambient, big.basis()[i].end());
      inter.push_back(std::move(right));
    }
  }
  return Subspace::span(m_field, m_ambient, inter);
}

bool Subspace::operator==(const Subspace& o) const {
  if (m_ambient != o.m_ambient || m_basis.size() != o.m_basis.size())
    return false;
  if (m_pivots != o.m_pivots) return false;
  for (size_t i = 0; i < m_basis.size(); ++i)
    for (int j = 0; j < m_ambient; ++j)
      if (m_basis[i][j] != o.m_basis[i][j]) return false;
  return true;
}

Matrix Subspace::basis_matrix() const {
  Matrix m(m_field, dim(), m_ambient);
  for (int i = 0; i < dim(); ++i) m.set_row(i, m_basis[i]);
  return m;
}

Subspace Subspace::coordinate_complement() const {
  std::vector<Vec> vs;
  size_t pi = 0;
  for (int j = 0; j < m_ambient; ++j) {
    if (pi < m_pivots.size() && m_pivots[pi] == j) {
      ++pi;
      continue;
    }
    vs.push_back(vec_unit(m_field, m_ambient, j));
  }
  return Subspace::span(m_field, m_ambient, vs);
}

// ------------------------------------------------------------ operations

int rank(const Matrix& m) {
  EchelonBasis eb(m.field_data(), m.cols());
  for (int i = 0; i < m.rows(); ++i) eb.insert(m.row(i));
  return eb.rank();
}

Subspace row_space(const Matrix& m) {
  EchelonBasis eb(m.field_data(), m.cols());
  for (int i = 0; i < m.rows(); ++i) eb.insert(m.row(i));
  return eb.to_subspace();
}

Subspace kernel(const Matrix& m) {
  Subspace rref = row_space(m);
  const FieldData* f = m.field_data();
  int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : rref.pivots()) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Vec v = vec_zero(f, n);
    v[j] = Scalar::one(f);
    for (int i = 0; i < rref.dim(); ++i)
      v[rref.pivots()[i]] = -rref.basis()[i][j];
    basis.push_back(std::move(v));
  }
  return Subspace::span(f, n, basis);
}

Subspace image(const Matrix& m) { return row_space(m.transpose()); }

std::optional<Matrix> express_rows(const Matrix& b, const Matrix& a) {
  if (a.cols() != b.cols()) throw std::runtime_error("express shape mismatch");
  const FieldData* f = a.field_data();
  int n = a.cols(), m = a.rows();
  // augmented rows [A_i | e_i | 0]; pivots restricted to the first n slots,
  // so a dependent row of A parks as a relation and never becomes a pivot
  std::vector<Vec> rows;
  std::vector<int> leads;
  auto reduce_in_place = [&](Vec& r) {
    for (size_t k = 0; k < rows.size(); ++k) {
      int lead = leads[k];
      if (r[lead].is_zero()) continue;
      Scalar p = rows[k][lead];
      Scalar c = r[lead];
      for (size_t j = 0; j < r.size(); ++j) {
        Scalar t = p * r[j] - c * rows[k][j];
        r[j] = std::move(t);
      }
    }
    make_row_primitive(r);
  };
  for (int i = 0; i < m; ++i) {
    Vec r = a.row(i);
    Vec tag = vec_zero(f, m + 1);
    tag[i] = Scalar::one(f);
    r.insert(r.end(), tag.begin(), tag.end());
    reduce_in_place(r);
    int lead = -1;
    for (int j = 0; j < n; ++j)
      if (!r[j].is_zero()) {
        lead = j;
        break;
      }
    if (lead < 0) continue;  // relation among A's rows
    size_t pos = 0;
    while (pos < leads.size() && leads[pos] < lead) ++pos;
    rows.insert(rows.begin() + pos, std::move(r));
    leads.insert(leads.begin() + pos, lead);
  }
  Matrix x(f, b.rows(), m);
  for (int i = 0; i < b.rows(); ++i) {
    Vec r = b.row(i);
    Vec tag = vec_zero(f, m + 1);
    tag[m] = Scalar::one(f);
    r.insert(r.end(), tag.begin(), tag.end());
    reduce_in_place(r);
    for (int j = 0; j < n; ++j)
      if (!r[j].is_zero()) return std::nullopt;
    // alpha * b_i + sum beta_k A_k = 0, with alpha = tracked last slot
    Scalar alpha = r[n + m];
    if (alpha.is_zero()) throw std::runtime_error("lost scale in express_rows");
    Scalar neg_inv = -alpha.inverse();
    for (int k = 0; k < m; ++k) x.at(i, k) = r[n + k] * neg_inv;
  }
  return x;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  Matrix brow(m.field_data(), 1, int(b.size()));
  brow.set_row(0, b);
  auto x = express_rows(brow, m.transpose());
  if (!x) return std::nullopt;
  return x->row(0);
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = express_rows(Matrix::identity(m.field_data(), m.rows()),
                        m.transpose());
  if (!x) return std::nullopt;
  return x->transpose();
}

// ----------------------------------------------------------- modular rank

namespace {

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = (unsigned __int128)(r)*b % p;
    b = (unsigned __int128)(b)*b % p;
    e >>= 1;
  }
  return r;
}

std::optional<uint64_t> phi_root_mod_p(const FieldData* f, uint64_t p) {
  unsigned m = f->conductor;
  if (m == 1) return 1 % p;
  if ((p - 1) % m != 0) return std::nullopt;
  auto eval_phi = [&](uint64_t x) {
    uint64_t acc = 0;
    for (int i = int(f->phi.size()) - 1; i >= 0; --i) {
      acc = (unsigned __int128)(acc)*x % p;
      mpz_class c = f->phi[i] % p;
      if (c < 0) c += p;
      acc = (acc + c.get_ui()) % p;
    }
    return acc;
  };
  for (uint64_t g = 2; g < 200 && g < p; ++g) {
    uint64_t x = pow_mod(g, (p - 1) / m, p);
    if (eval_phi(x) == 0) return x;
  }
  return std::nullopt;
}

}  // namespace

std::optional<long> rank_mod_p(const Matrix& m, uint32_t p) {
  const FieldData* f = m.field_data();
  auto root = phi_root_mod_p(f, p);
  if (!root) return std::nullopt;
  // powers of the chosen root of Phi_m
  std::vector<uint64_t> zp(f->degree, 1);
  for (unsigned i = 1; i < f->degree; ++i)
    zp[i] = (unsigned __int128)(zp[i - 1]) * *root % p;
  auto map_scalar = [&](const Scalar& s) -> std::optional<uint64_t> {
    uint64_t acc = 0;
    for (unsigned i = 0; i < f->degree; ++i) {
      const mpq_class& c = s.coeffs()[i];
      if (c == 0) continue;
      mpz_class den = c.get_den() % p;
      if (den == 0) return std::nullopt;
      mpz_class num = c.get_num() % p;
      if (num < 0) num += p;
      uint64_t val = (unsigned __int128)(num.get_ui()) *
                     pow_mod(den.get_ui(), p - 2, p) % p;
      acc = (acc + (unsigned __int128)(val)*zp[i]) % p;
    }
    return acc;
  };
  int R = m.rows(), C = m.cols();
  std::vector<std::vector<uint64_t>> a(R, std::vector<uint64_t>(C));
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) {
      auto v = map_scalar(m.at(i, j));
      if (!v) return std::nullopt;
      a[i][j] = *v;
    }
  long rk = 0;
  int rrow = 0;
  for (int c = 0; c < C && rrow < R; ++c) {
    int piv = -1;
    for (int i = rrow; i < R; ++i)
      if (a[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rrow]);
    uint64_t inv = pow_mod(a[rrow][c], p - 2, p);
    for (int j = c; j < C; ++j)
      a[rrow][j] = (unsigned __int128)(a[rrow][j]) * inv % p;
    for (int i = 0; i < R; ++i) {
      if (i == rrow || !a[i][c]) continue;
      uint64_t fac = a[i][c];
      for (int j = c; j < C; ++j) {
        uint64_t t = (unsigned __int128)(fac)*a[rrow][j] % p;
        a[i][j] = (a[i][j] + p - t) % p;
      }
    }
    ++rrow;
    ++rk;
  }
  return rk;
}

}  // namespace pialg
