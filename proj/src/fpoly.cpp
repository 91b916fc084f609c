#include "fpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace pialg {

FPoly fpoly_trim(FPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

int fpoly_degree(const FPoly& p) { return int(p.size()) - 1; }

FPoly fpoly_make_monic(FPoly p) {
  p = fpoly_trim(std::move(p));
  if (p.empty()) return p;
  Scalar inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

FPoly fpoly_add(const FPoly& a, const FPoly& b) {
  FPoly r(std::max(a.size(), b.size()),
          Scalar::zero(a.empty() ? b[0].field_data() : a[0].field_data()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return fpoly_trim(r);
}

FPoly fpoly_sub(const FPoly& a, const FPoly& b) {
  FPoly r(std::max(a.size(), b.size()),
          Scalar::zero(a.empty() ? b[0].field_data() : a[0].field_data()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return fpoly_trim(r);
}

FPoly fpoly_mul(const FPoly& a, const FPoly& b) {
  if (a.empty() || b.empty()) return {};
  FPoly r(a.size() + b.size() - 1, Scalar::zero(a[0].field_data()));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  return fpoly_trim(r);
}

std::pair<FPoly, FPoly> fpoly_divmod(FPoly num, const FPoly& den_in) {
  FPoly den = fpoly_trim(den_in);
  num = fpoly_trim(std::move(num));
  if (den.empty()) throw std::runtime_error("fpoly division by zero");
  if (num.size() < den.size()) return {{}, num};
  const FieldData* f = den[0].field_data();
  Scalar lead_inv = den.back().inverse();
  FPoly q(num.size() - den.size() + 1, Scalar::zero(f));
  for (int i = int(num.size()) - int(den.size()); i >= 0; --i) {
    Scalar c = num[i + den.size() - 1] * lead_inv;
    q[i] = c;
    if (c.is_zero()) continue;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  return {fpoly_trim(q), fpoly_trim(num)};
}

FPoly fpoly_gcd(FPoly a, FPoly b) {
  a = fpoly_trim(std::move(a));
  b = fpoly_trim(std::move(b));
  while (!b.empty()) {
    auto [q, r] = fpoly_divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return fpoly_make_monic(std::move(a));
}

FPoly fpoly_derivative(const FPoly& p) {
  if (p.size() <= 1) return {};
  const FieldData* f = p[0].field_data();
  FPoly r(p.size() - 1, Scalar::zero(f));
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Scalar(f, long(i));
  return fpoly_trim(r);
}

Scalar fpoly_eval(const FPoly& p, const Scalar& x) {
  Scalar acc = Scalar::zero(x.field_data());
  for (int i = int(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
  return acc;
}

FPoly fpoly_squarefree_part(const FPoly& p) {
  FPoly g = fpoly_gcd(p, fpoly_derivative(p));
  if (fpoly_degree(g) <= 0) return fpoly_make_monic(p);
  auto [q, r] = fpoly_divmod(p, g);
  if (!r.empty()) throw std::runtime_error("squarefree division not exact");
  return fpoly_make_monic(q);
}

FPoly fpoly_deflate(const FPoly& p, const Scalar& root) {
  const FieldData* f = root.field_data();
  FPoly lin{-root, Scalar::one(f)};
  auto [q, r] = fpoly_divmod(p, lin);
  if (!r.empty() && !(r.size() == 1 && r[0].is_zero()))
    throw std::runtime_error("deflation by a non-root");
  return q;
}

FPoly minimal_polynomial(const Matrix& t) {
  if (t.rows() != t.cols()) throw std::runtime_error("minpoly needs square");
  const FieldData* f = t.field_data();
  int n = t.rows();
  FPoly mp{Scalar::one(f)};
  for (int s = 0; s < n; ++s) {
    Vec v = vec_unit(f, n, s);
    // local minimal polynomial: first dependency in v, Tv, T^2 v, ...
    EchelonBasis eb(f, n);
    std::vector<Vec> krylov;
    Vec cur = v;
    while (eb.insert(cur)) {
      krylov.push_back(cur);
      cur = t.apply(cur);
    }
    // cur = sum_i x_i krylov_i ; local poly = x^k - sum x_i x^i
    Matrix km(f, int(krylov.size()), n);
    for (size_t i = 0; i < krylov.size(); ++i) km.set_row(int(i), krylov[i]);
    auto coords = solve(km.transpose(), cur);
    if (!coords) throw std::runtime_error("krylov dependency lost");
    FPoly local(krylov.size() + 1, Scalar::zero(f));
    local[krylov.size()] = Scalar::one(f);
    for (size_t i = 0; i < krylov.size(); ++i) local[i] = -(*coords)[i];
    // mp = lcm(mp, local)
    FPoly g = fpoly_gcd(mp, local);
    auto [q, r] = fpoly_divmod(local, g);
    (void)r;
    mp = fpoly_make_monic(fpoly_mul(mp, q));
    if (fpoly_degree(mp) == n) break;  // cannot exceed the dimension
  }
  return mp;
}

// ----------------------------------------------------------------- roots

namespace {

// divisors of |n|, capped; empty result means the cap was exceeded
std::vector<mpz_class> bounded_divisors(const mpz_class& n, size_t cap) {
  mpz_class a = abs(n);
  std::vector<mpz_class> divs;
  if (a == 0) return divs;
  // trial division factorization with a step bound
  std::vector<std::pair<mpz_class, unsigned>> fac;
  mpz_class rem = a;
  mpz_class d = 2;
  long steps = 0;
  while (rem > 1) {
    if (++steps > 2'000'000) return {};  // give up, caller flags incomplete
    if (mpz_divisible_p(rem.get_mpz_t(), d.get_mpz_t())) {
      unsigned e = 0;
      while (mpz_divisible_p(rem.get_mpz_t(), d.get_mpz_t())) {
        rem /= d;
        ++e;
      }
      fac.emplace_back(d, e);
    }
    if (d * d > rem && rem > 1) {
      fac.emplace_back(rem, 1);
      break;
    }
    d += (d == 2) ? 1 : 2;
  }
  divs.push_back(1);
  for (auto& [p, e] : fac) {
    size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) {
        divs.push_back(divs[i] * pk);
        if (divs.size() > cap) return {};
      }
    }
  }
  return divs;
}

}  // namespace

RootSearch roots_in_field(const FPoly& p_in) {
  FPoly p = fpoly_squarefree_part(p_in);
  const FieldData* f = p.empty() ? nullptr : p[0].field_data();
  RootSearch out;
  out.complete = true;
  if (fpoly_degree(p) <= 0) {
    out.residual = p;
    return out;
  }

  // peel off x = 0
  while (p.size() > 1 && p[0].is_zero()) {
    out.roots.push_back(Scalar::zero(f));
    p.erase(p.begin());
    break;  // squarefree: multiplicity one
  }
  if (fpoly_degree(p) == 0) {
    out.residual = FPoly{Scalar::one(f)};
    return out;
  }

  // linear polynomials solve directly
  if (fpoly_degree(p) == 1) {
    out.roots.push_back(-(p[0] / p[1]));
    out.residual = FPoly{Scalar::one(f)};
    return out;
  }

  // rational candidates via the rational root theorem on a cleared-
  // denominator image: only rational-coefficient polynomials qualify
  bool rational_coeffs = true;
  for (const auto& c : p)
    if (!c.is_rational()) rational_coeffs = false;

  std::vector<Scalar> candidates;
  if (rational_coeffs) {
    mpz_class lcm_den = 1;
    for (const auto& c : p)
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
              c.rational_part().get_den().get_mpz_t());
    mpz_class a0 = p[0].rational_part().get_num() *
                   (lcm_den / p[0].rational_part().get_den());
    mpz_class an = p.back().rational_part().get_num() *
                   (lcm_den / p.back().rational_part().get_den());
    auto num_divs = bounded_divisors(a0, 4096);
    auto den_divs = bounded_divisors(an, 4096);
    if (num_divs.empty() || den_divs.empty()) {
      out.complete = false;  // factorization gave up
    } else {
      for (const auto& nu : num_divs)
        for (const auto& de : den_divs) {
          mpq_class q(nu, de);
          q.canonicalize();
          candidates.emplace_back(f, q);
          candidates.emplace_back(f, mpq_class(-q));
        }
    }
  } else {
    // no complete method over an extension without rational pattern
    out.complete = false;
  }

  // cyclotomic twists of the rational candidates
  if (f->conductor > 1) {
    out.complete = false;  // twist list is a heuristic, not a proof
    size_t base = candidates.size();
    Scalar z = Scalar::zeta(f);
    Scalar zp = z;
    for (unsigned j = 1; j < f->conductor; ++j) {
      for (size_t i = 0; i < base; ++i)
        candidates.push_back(candidates[i] * zp);
      zp *= z;
    }
  }

  // deterministic evaluation pass with deflation
  for (const auto& cand : candidates) {
    if (fpoly_degree(p) == 0) break;
    if (fpoly_eval(p, cand).is_zero()) {
      out.roots.push_back(cand);
      p = fpoly_deflate(p, cand);
      if (fpoly_degree(p) == 1) {
        out.roots.push_back(-(p[0] / p[1]));
        p = FPoly{Scalar::one(f)};
        break;
      }
    }
  }
  if (fpoly_degree(p) >= 2 && rational_coeffs && f->conductor == 1) {
    // all rational candidates exhausted: residual provably rootless over Q
    // (complete stays true unless divisor enumeration gave up above)
  }
  out.residual = fpoly_make_monic(p);
  return out;
}

}  // namespace pialg
