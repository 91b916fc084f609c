#include "cochar.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "errors.hpp"

namespace pialg {

int Partition::sum() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

std::string Partition::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts[i]);
  }
  return out + ")";
}

int cocharacter_max_n() {
  if (const char* e = std::getenv("COCHAR_MAX_N")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end != e && v > 0) return int(v);
  }
  return 7;
}

namespace {

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void gen_partitions(int rest, int mx, Partition& cur,
                    std::vector<Partition>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(rest, mx); k >= 1; --k) {
    cur.parts.push_back(k);
    gen_partitions(rest - k, k, cur, out);
    cur.parts.pop_back();
  }
}

void check_partition(const Partition& p, int n, const char* what) {
  int prev = 1 << 30;
  for (int k : p.parts) {
    if (k < 1 || k > prev)
      throw ValidationError(std::string(what) + " " + p.str() +
                            " is not a partition");
    prev = k;
  }
  if (p.sum() != n)
    throw ValidationError(std::string(what) + " " + p.str() +
                          " does not sum to " + std::to_string(n));
}

/// border-strip recursion state: strips are removed for the cycle lengths
/// mu[idx..] in order
long mn_rec(const std::vector<int>& lam, const std::vector<int>& mu,
            std::size_t idx,
            std::map<std::pair<std::vector<int>, std::size_t>, long>& memo) {
  if (idx == mu.size()) return lam.empty() ? 1 : 0;
  auto key = std::make_pair(lam, idx);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  int k = mu[idx];
  long total = 0;
  int s = int(lam.size());
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j) {
      // remove a strip of size k occupying rows i..j
      std::vector<int> nl = lam;
      for (int t = i; t < j; ++t) nl[t] = lam[t + 1] - 1;
      nl[j] = lam[i] - k + (j - i);
      if (nl[j] < 0) continue;
      if (j + 1 < s && nl[j] < lam[j + 1]) continue;
      bool ok = true;
      for (int t = i; ok && t <= j; ++t)
        if (t > 0 && nl[t] > nl[t - 1]) ok = false;
      if (!ok) continue;
      while (!nl.empty() && nl.back() == 0) nl.pop_back();
      long sub = mn_rec(nl, mu, idx + 1, memo);
      total += ((j - i) % 2 == 0) ? sub : -sub;
    }
  memo[key] = total;
  return total;
}

Scalar trace_on_spaces(const Algebra& a,
                       const std::vector<EvalSpace>& spaces,
                       const std::vector<int>& perm) {
  const FieldData* f = a.field;
  int n = int(perm.size());
  Scalar tr = Scalar::zero(f);
  for (const EvalSpace& es : spaces) {
    // label vectors not fixed by the permutation contribute nothing: the
    // permutation moves their block elsewhere
    bool fixed = true;
    for (int v = 0; fixed && v < n; ++v)
      if (!es.labels.empty() && es.labels[perm[v]] != es.labels[v])
        fixed = false;
    if (!fixed) continue;

    std::vector<long> stride(n, 1);
    for (int v = n - 2; v >= 0; --v)
      stride[v] = stride[v + 1] * es.domain_sizes[v + 1];

    // the row space has unit pivots, so the coordinate of any member along
    // basis row i is its entry at pivot i; the permuted image of row u is
    // u read through the permuted tuple, hence one lookup per basis row
    const std::vector<Vec>& basis = es.space.basis();
    const std::vector<int>& pivots = es.space.pivots();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      long col = pivots[i];
      long k = col % long(a.dim);
      long tup = col / long(a.dim);
      std::vector<long> t(n);
      for (int v = 0; v < n; ++v) {
        t[v] = tup / stride[v];
        tup %= stride[v];
      }
      long moved = 0;
      for (int v = 0; v < n; ++v) moved += t[perm[v]] * stride[v];
      tr += basis[i][std::size_t(moved * long(a.dim) + k)];
    }
  }
  return tr;
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw ValidationError("partitions need n >= 0");
  std::vector<Partition> out;
  Partition cur;
  gen_partitions(n, n, cur, out);
  return out;
}

long hook_dimension(const Partition& lam) {
  int n = lam.sum();
  if (n == 0) return 1;
  std::vector<int> conj(lam.parts[0], 0);
  for (int part : lam.parts)
    for (int j = 0; j < part; ++j) ++conj[j];
  long hooks = 1;
  for (int i = 0; i < lam.rows(); ++i)
    for (int j = 0; j < lam.parts[i]; ++j)
      hooks *= (lam.parts[i] - j) + (conj[j] - i) - 1;
  return factorial(n) / hooks;
}

long class_size(const Partition& mu) {
  int n = mu.sum();
  long z = 1;
  int run = 0;
  for (std::size_t i = 0; i < mu.parts.size(); ++i) {
    z *= mu.parts[i];
    ++run;
    if (i + 1 == mu.parts.size() || mu.parts[i + 1] != mu.parts[i]) {
      z *= factorial(run);
      run = 0;
    }
  }
  return factorial(n) / z;
}

long mn_character(const Partition& lam, const Partition& mu) {
  int n = lam.sum();
  check_partition(lam, n, "partition");
  check_partition(mu, n, "cycle type");
  std::vector<int> cyc = mu.parts;  // already descending
  std::map<std::pair<std::vector<int>, std::size_t>, long> memo;
  return mn_rec(lam.parts, cyc, 0, memo);
}

std::vector<int> cycle_type_representative(const Partition& mu, int n) {
  check_partition(mu, n, "cycle type");
  std::vector<int> lens = mu.parts;
  std::sort(lens.begin(), lens.end());
  std::vector<int> perm(n);
  int off = 0;
  for (int k : lens) {
    for (int i = 0; i < k; ++i) perm[off + i] = off + (i + 1) % k;
    off += k;
  }
  return perm;
}

Scalar quotient_trace(const Algebra& a, const Structure& s, int n,
                      const std::vector<int>& perm) {
  if (int(perm.size()) != n)
    throw ValidationError("permutation length does not match the arity");
  return trace_on_spaces(a, codim_row_spaces(a, s, n), perm);
}

ClassCharacter quotient_character(const Algebra& a, const Structure& s,
                                  int n) {
  if (n < 1) throw ValidationError("cocharacter arity must be at least 1");
  if (n > cocharacter_max_n())
    throw BudgetError("cocharacter arity " + std::to_string(n) +
                      " is over the cap of " +
                      std::to_string(cocharacter_max_n()) +
                      "; set COCHAR_MAX_N to raise it");
  std::vector<EvalSpace> spaces = codim_row_spaces(a, s, n);
  ClassCharacter out;
  for (const Partition& mu : partitions_of(n))
    out.push_back(
        {mu, trace_on_spaces(a, spaces, cycle_type_representative(mu, n))});
  return out;
}

std::vector<std::pair<Partition, long>> irreducible_multiplicities(
    const ClassCharacter& chi, int n) {
  if (chi.empty()) throw ValidationError("empty class character");
  const FieldData* f = chi.front().second.field_data();
  std::vector<Partition> all = partitions_of(n);
  if (chi.size() != all.size())
    throw ValidationError("class character must cover every cycle type");

  std::vector<std::pair<Partition, long>> out;
  for (const Partition& lam : all) {
    Scalar acc = Scalar::zero(f);
    for (const auto& [mu, trace] : chi)
      acc += Scalar(f, class_size(mu) * mn_character(lam, mu)) * trace;
    acc = acc / Scalar(f, factorial(n));
    if (!acc.is_rational() || acc.rational_part().get_den() != 1 ||
        acc.rational_part() < 0)
      throw InternalError("multiplicity of " + lam.str() +
                          " is not a nonnegative integer: " + acc.str());
    out.push_back({lam, long(acc.rational_part().get_num().get_si())});
  }
  return out;
}

CocharacterReport cocharacter(const Algebra& a, const Structure& s, int n) {
  CocharacterReport rep;
  rep.n = n;
  rep.class_character = quotient_character(a, s, n);
  rep.multiplicities = irreducible_multiplicities(rep.class_character, n);

  for (const auto& [lam, m] : rep.multiplicities)
    rep.codimension += m * hook_dimension(lam);
  // the trace at the identity is the quotient dimension, i.e. c_n
  for (const auto& [mu, trace] : rep.class_character)
    if (mu.rows() == n) {
      if (trace != Scalar(a.field, rep.codimension))
        throw InternalError(
            "cocharacter bookkeeping failed: sum of multiplicity * hook "
            "dimension is " +
            std::to_string(rep.codimension) + " but the quotient dimension is " +
            trace.str());
    }
  return rep;
}

VanishingReport cocharacter_vanishing_check(const Algebra& a,
                                            const Structure& s,
                                            const Subspace& ideal, int n) {
  if (a.kind != AlgebraKind::Associative)
    throw ValidationError(
        "the vanishing rule is stated for associative algebras");
  Subspace full = a.full_space();
  if (!ideal.contains(subspace_product(a, full, ideal)) ||
      !ideal.contains(subspace_product(a, ideal, full)))
    throw ValidationError("the subspace is not a two-sided ideal");
  if (!subspace_invariant(a, s, ideal))
    throw ValidationError("the ideal is not invariant under the structure");

  VanishingReport rep;
  rep.n = n;
  int p = 1;
  Subspace power = ideal;
  while (power.dim() > 0) {
    if (p > int(a.dim))
      throw ValidationError("the ideal is not nilpotent");
    power = subspace_product(a, power, ideal);
    ++p;
  }
  rep.nilpotency_index = p;
  rep.tail_start = int(a.dim) - ideal.dim() + 1;

  rep.character = cocharacter(a, s, n);
  for (const auto& [lam, m] : rep.character.multiplicities) {
    long tail = 0;
    for (int k = rep.tail_start; k <= lam.rows(); ++k)
      tail += lam.parts[k - 1];
    if (tail >= p) {
      if (m != 0)
        throw InternalError("vanishing rule violated: multiplicity of " +
                            lam.str() + " is " + std::to_string(m) +
                            " but its tail row sum " + std::to_string(tail) +
                            " reaches the nilpotency index " +
                            std::to_string(p));
      rep.triggered.push_back(lam);
    } else {
      rep.unconstrained.push_back(lam);
    }
  }
  return rep;
}

}  // namespace pialg
