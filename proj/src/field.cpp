#include "field.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace pialg {

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

using ZPoly = std::vector<mpz_class>;  // low to high, exact length

ZPoly zpoly_trim(ZPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

// exact division of integer polynomials, num = q*den (den monic-leading +-1
// not required; division here is known exact in our cyclotomic use)
ZPoly zpoly_div_exact(ZPoly num, const ZPoly& den) {
  num = zpoly_trim(num);
  ZPoly d = zpoly_trim(den);
  if (d.empty()) throw std::runtime_error("zpoly division by zero");
  if (num.empty()) return {};
  ZPoly q(num.size() - d.size() + 1, 0);
  for (int i = int(num.size()) - int(d.size()); i >= 0; --i) {
    mpz_class c = num[i + d.size() - 1] / d.back();
    q[i] = c;
    if (c != 0)
      for (size_t j = 0; j < d.size(); ++j) num[i + j] -= c * d[j];
  }
  for (const auto& r : num)
    if (r != 0) throw std::runtime_error("zpoly division not exact");
  return q;
}

// Phi_m via Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
ZPoly cyclotomic(unsigned m, std::map<unsigned, ZPoly>& cache) {
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  ZPoly num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d)
    if (m % d == 0) num = zpoly_div_exact(num, cyclotomic(d, cache));
  cache[m] = num;
  return num;
}

std::map<unsigned, std::unique_ptr<FieldData>>& registry() {
  static std::map<unsigned, std::unique_ptr<FieldData>> reg;
  return reg;
}
std::mutex& registry_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

const FieldData* field(unsigned conductor) {
  if (conductor == 0) throw std::runtime_error("conductor must be >= 1");
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& reg = registry();
  auto it = reg.find(conductor);
  if (it != reg.end()) return it->second.get();
  auto fd = std::make_unique<FieldData>();
  fd->conductor = conductor;
  std::map<unsigned, ZPoly> cache;
  fd->phi = cyclotomic(conductor, cache);
  fd->degree = unsigned(fd->phi.size() - 1);
  const FieldData* out = fd.get();
  reg.emplace(conductor, std::move(fd));
  return out;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const FieldData* f, const mpq_class& rational)
    : m_field(f), m_c(f->degree) {
  m_c[0] = rational;
}

Scalar::Scalar(const FieldData* f, long n) : m_field(f), m_c(f->degree) {
  m_c[0] = n;
}

Scalar Scalar::zeta(const FieldData* f) {
  Scalar s(f);
  if (f->degree == 1) {
    // z is congruent to the root of the linear Phi_m: z = -phi[0]
    s.m_c[0] = mpq_class(-f->phi[0]);
  } else {
    s.m_c[1] = 1;
  }
  return s;
}

bool Scalar::is_zero() const {
  for (const auto& c : m_c)
    if (c != 0) return false;
  return true;
}

bool Scalar::is_one() const {
  if (m_c[0] != 1) return false;
  for (size_t i = 1; i < m_c.size(); ++i)
    if (m_c[i] != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  for (size_t i = 1; i < m_c.size(); ++i)
    if (m_c[i] != 0) return false;
  return true;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r(*this);
  r += o;
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r(*this);
  r -= o;
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  for (auto& c : r.m_c) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (size_t i = 0; i < m_c.size(); ++i) m_c[i] += o.m_c[i];
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (size_t i = 0; i < m_c.size(); ++i) m_c[i] -= o.m_c[i];
  return *this;
}

Scalar Scalar::operator*(const Scalar& o) const {
  const unsigned d = m_field->degree;
  if (d == 1) {
    Scalar r(m_field);
    r.m_c[0] = m_c[0] * o.m_c[0];
    return r;
  }
  // schoolbook product then reduction by the monic integer Phi_m
  std::vector<mpq_class> prod(2 * d - 1);
  for (unsigned i = 0; i < d; ++i) {
    if (m_c[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j) {
      if (o.m_c[j] == 0) continue;
      prod[i + j] += m_c[i] * o.m_c[j];
    }
  }
  for (int k = int(prod.size()) - 1; k >= int(d); --k) {
    if (prod[k] == 0) continue;
    mpq_class c = prod[k];
    prod[k] = 0;
    for (unsigned j = 0; j < d; ++j) prod[k - d + j] -= c * m_field->phi[j];
  }
  Scalar r(m_field);
  for (unsigned i = 0; i < d; ++i) r.m_c[i] = prod[i];
  return r;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

std::vector<mpq_class> qpoly_trim(std::vector<mpq_class> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

std::vector<mpq_class> qpoly_mul(const std::vector<mpq_class>& a,
                                 const std::vector<mpq_class>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<mpq_class> r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return qpoly_trim(r);
}

std::pair<std::vector<mpq_class>, std::vector<mpq_class>> qpoly_divmod(
    std::vector<mpq_class> num, const std::vector<mpq_class>& den_in) {
  auto den = qpoly_trim(den_in);
  num = qpoly_trim(num);
  if (den.empty()) throw std::runtime_error("qpoly division by zero");
  if (num.size() < den.size()) return {{}, num};
  std::vector<mpq_class> q(num.size() - den.size() + 1);
  for (int i = int(num.size()) - int(den.size()); i >= 0; --i) {
    mpq_class c = num[i + den.size() - 1] / den.back();
    q[i] = c;
    if (c != 0)
      for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  return {qpoly_trim(q), qpoly_trim(num)};
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::runtime_error("division by zero scalar");
  const unsigned d = m_field->degree;
  if (d == 1) {
    Scalar r(m_field);
    r.m_c[0] = 1 / m_c[0];
    return r;
  }
  // extended Euclid in Q[z]: u*a + v*Phi = gcd = const (Phi irreducible)
  std::vector<mpq_class> r0(m_field->phi.begin(), m_field->phi.end());
  std::vector<mpq_class> r1 = qpoly_trim(m_c);
  std::vector<mpq_class> u0{}, u1{mpq_class(1)};  // coefficients on 'a'
  while (true) {
    auto [q, rem] = qpoly_divmod(r0, r1);
    // u2 = u0 - q*u1
    auto qu = qpoly_mul(q, u1);
    std::vector<mpq_class> u2(std::max(u0.size(), qu.size()));
    for (size_t i = 0; i < u0.size(); ++i) u2[i] += u0[i];
    for (size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
    u2 = qpoly_trim(u2);
    if (rem.empty()) {
      // r1 is the gcd, a nonzero constant times an irreducible check
      if (r1.size() != 1)
        throw std::runtime_error("scalar not invertible: gcd not constant");
      Scalar out(m_field);
      for (size_t i = 0; i < u1.size() && i < d; ++i)
        out.m_c[i] = u1[i] / r1[0];
      return out;
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  for (size_t i = 0; i < m_c.size(); ++i)
    if (m_c[i] != o.m_c[i]) return false;
  return true;
}

int Scalar::cmp(const Scalar& o) const {
  for (size_t i = 0; i < m_c.size(); ++i) {
    int c = ::mpq_cmp(m_c[i].get_mpq_t(), o.m_c[i].get_mpq_t());
    if (c != 0) return c;
  }
  return 0;
}

std::string Scalar::str() const {
  std::string out;
  bool first = true;
  for (size_t i = 0; i < m_c.size(); ++i) {
    if (m_c[i] == 0) continue;
    mpq_class c = m_c[i];
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? "-" : "+";
    }
    std::string cs = c.get_str();
    if (i == 0) {
      out += cs;
    } else {
      if (cs != "1") out += cs + "*";
      out += "z";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  if (first) out = "0";
  return out;
}

// ------------------------------------------------------------- parsing

namespace {

struct ScalarParser {
  const FieldData* f;
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error("scalar parse error at position " +
                             std::to_string(pos) + ": " + what + " in '" + s +
                             "'");
  }

  mpq_class parse_number() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected digits");
    mpz_class num(s.substr(start, pos - start));
    skip_ws();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      skip_ws();
      size_t dstart = pos;
      while (pos < s.size() &&
             std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (pos == dstart) fail("expected denominator digits");
      mpz_class den(s.substr(dstart, pos - dstart));
      if (den == 0) fail("zero denominator");
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    return mpq_class(num);
  }

  unsigned parse_power() {
    // callsite consumed 'z'; optional ^k
    skip_ws();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      skip_ws();
      size_t start = pos;
      while (pos < s.size() &&
             std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (pos == start) fail("expected exponent digits");
      return unsigned(std::stoul(s.substr(start, pos - start)));
    }
    return 1;
  }

  Scalar parse() {
    Scalar acc(f);
    bool any = false;
    skip_ws();
    while (pos < s.size()) {
      int sign = 1;
      skip_ws();
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (!any && s[pos] == '+') fail("unexpected leading +");
        sign = (s[pos] == '-') ? -1 : 1;
        ++pos;
      } else if (any) {
        fail("expected + or - between terms");
      }
      skip_ws();
      mpq_class coef = 1;
      bool have_coef = false;
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        coef = parse_number();
        have_coef = true;
      }
      unsigned power = 0;
      skip_ws();
      if (pos < s.size() && (s[pos] == '*' || s[pos] == 'z')) {
        if (s[pos] == '*') {
          ++pos;
          skip_ws();
          if (pos >= s.size() || s[pos] != 'z') fail("expected z after *");
        }
        ++pos;  // consume z
        power = parse_power();
        // a trailing /int divides the whole term, e.g. "z/2"
        skip_ws();
        if (pos < s.size() && s[pos] == '/') {
          ++pos;
          skip_ws();
          size_t start = pos;
          while (pos < s.size() &&
                 std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
          if (pos == start) fail("expected denominator digits");
          mpz_class den(s.substr(start, pos - start));
          if (den == 0) fail("zero denominator");
          coef /= mpq_class(den);
        }
      } else if (!have_coef) {
        fail("expected a number or z");
      }
      if (sign < 0) coef = -coef;
      // fold coef * z^power into the accumulator, reducing mod Phi
      Scalar term(f, coef);
      Scalar zp = Scalar::one(f);
      Scalar z = Scalar::zeta(f);
      for (unsigned i = 0; i < power; ++i) zp *= z;
      term *= zp;
      acc += term;
      any = true;
      skip_ws();
    }
    if (!any) fail("empty scalar");
    return acc;
  }
};

}  // namespace

Scalar parse_scalar(const FieldData* f, const std::string& text) {
  ScalarParser p{f, text};
  return p.parse();
}

void make_row_primitive(std::vector<Scalar>& row) {
  if (row.empty()) return;
  mpz_class lcm_den = 1, gcd_num = 0;
  for (const auto& s : row)
    for (const auto& c : s.coeffs())
      if (c != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
                          c.get_den().get_mpz_t());
  for (const auto& s : row)
    for (const auto& c : s.coeffs())
      if (c != 0) {
        mpz_class n = c.get_num() * (lcm_den / c.get_den());
        mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), n.get_mpz_t());
      }
  if (gcd_num == 0) return;  // zero row
  mpq_class factor(lcm_den, gcd_num);
  factor.canonicalize();
  if (factor == 1) return;
  for (auto& s : row)
    for (auto& c : s.coeffs_mut())
      if (c != 0) c *= factor;
}

}  // namespace pialg
