#pragma once
// Discriminant forms A_N = N*/N via exact Smith normal form with transforms.
// Generators come out of the SNF change-of-basis; b_N takes values in Q/Z
// (stored in [0,1)) and q_N in Q/2Z (stored in [0,2)).

#include "lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace k3mono {

struct SNF {
  IntMat U, D, V;  // U * A * V = D, diagonal, d_i | d_{i+1}, d_i >= 0
};

inline SNF smith_normal_form(IntMat a) {
  int n = (int)a.size();
  int m = n ? (int)a[0].size() : 0;
  IntMat U = identity_mat(n), V = identity_mat(m);
  auto row_swap = [&](int i, int j) { std::swap(a[i], a[j]); std::swap(U[i], U[j]); };
  auto col_swap = [&](int i, int j) {
    for (int r = 0; r < n; r++) std::swap(a[r][i], a[r][j]);
    for (int r = 0; r < m; r++) std::swap(V[r][i], V[r][j]);
  };
  auto row_add = [&](int dst, int src, const BigInt& c) {
    for (int j = 0; j < m; j++) a[dst][j] += c * a[src][j];
    for (int j = 0; j < n; j++) U[dst][j] += c * U[src][j];
  };
  auto col_add = [&](int dst, int src, const BigInt& c) {
    for (int r = 0; r < n; r++) a[r][dst] += c * a[r][src];
    for (int r = 0; r < m; r++) V[r][dst] += c * V[r][src];
  };
  auto row_neg = [&](int i) {
    for (int j = 0; j < m; j++) a[i][j] = -a[i][j];
    for (int j = 0; j < n; j++) U[i][j] = -U[i][j];
  };

  int t = std::min(n, m);
  for (int k = 0; k < t; k++) {
    for (;;) {
      // pick the smallest nonzero |entry| in the trailing block as pivot
      int pi = -1, pj = -1;
      BigInt best = 0;
      for (int i = k; i < n; i++)
        for (int j = k; j < m; j++) {
          if (a[i][j] == 0) continue;
          BigInt v = abs(a[i][j]);
          if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
        }
      if (pi < 0) break;  // block is zero
      if (pi != k) row_swap(k, pi);
      if (pj != k) col_swap(k, pj);
      if (a[k][k] < 0) row_neg(k);

      bool clean = true;
      for (int i = k + 1; i < n; i++)
        if (a[i][k] != 0) { row_add(i, k, -(a[i][k] / a[k][k])); clean = false; }
      for (int j = k + 1; j < m; j++)
        if (a[k][j] != 0) { col_add(j, k, -(a[k][j] / a[k][k])); clean = false; }
      bool zeroed = true;
      for (int i = k + 1; i < n && zeroed; i++) zeroed = (a[i][k] == 0);
      for (int j = k + 1; j < m && zeroed; j++) zeroed = (a[k][j] == 0);
      if (!clean || !zeroed) continue;

      // divisibility: a[k][k] must divide the rest of the block
      bool ok = true;
      for (int i = k + 1; i < n && ok; i++)
        for (int j = k + 1; j < m && ok; j++)
          if (a[i][j] % a[k][k] != 0) { row_add(k, i, 1); ok = false; }
      if (ok) break;
    }
  }
  return {U, a, V};
}

// One element of A = (+) Z/d_i, coordinates mod the nontrivial invariant factors.
using DiscElem = std::vector<long long>;

struct DiscForm {
  Lattice lat;
  std::vector<BigInt> factors;       // nontrivial invariant factors d_1 | d_2 | ...
  std::vector<int> factor_pos;       // their positions in the full SNF diagonal
  std::vector<RatVec> gens;          // dual-class generators in N (x) Q
  IntMat U;                          // SNF row transform, for coordinates
  std::vector<BigInt> full_diag;

  BigInt order() const {
    BigInt o = 1;
    for (auto& d : factors) o *= d;
    return o;
  }

  size_t num_elements() const {
    BigInt o = order();
    if (o > 1000000) throw k3err("discriminant group too large to enumerate");
    return (size_t)(unsigned long long)o;
  }

  DiscElem elem_from_index(size_t idx) const {
    DiscElem e(factors.size());
    for (size_t i = 0; i < factors.size(); i++) {
      auto d = (unsigned long long)factors[i];
      e[i] = (long long)(idx % d);
      idx /= d;
    }
    return e;
  }

  size_t index_of(const DiscElem& e) const {
    size_t idx = 0, mul = 1;
    for (size_t i = 0; i < factors.size(); i++) {
      auto d = (unsigned long long)factors[i];
      idx += (size_t)(((e[i] % (long long)d) + (long long)d) % (long long)d) * mul;
      mul *= d;
    }
    return idx;
  }

  DiscElem add(const DiscElem& x, const DiscElem& y) const {
    DiscElem r(factors.size());
    for (size_t i = 0; i < factors.size(); i++)
      r[i] = (x[i] + y[i]) % (long long)(unsigned long long)factors[i];
    return r;
  }

  RatVec lift(const DiscElem& e) const {
    RatVec v(lat.rank(), Rat(0));
    for (size_t i = 0; i < factors.size(); i++)
      for (int r = 0; r < lat.rank(); r++) v[r] += Rat(e[i]) * gens[i][r];
    return v;
  }

  // coordinates of a dual vector (G x must be integral)
  DiscElem coords(const RatVec& x) const {
    int n = lat.rank();
    std::vector<Rat> gx(n, Rat(0));
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) gx[i] += Rat(lat.gram[i][j]) * x[j];
    std::vector<BigInt> y(n);
    for (int i = 0; i < n; i++) {
      if (denominator(gx[i]) != 1) throw k3err("coords: vector is not in the dual lattice");
      y[i] = numerator(gx[i]);
    }
    auto uy = mat_vec(U, y);
    DiscElem e(factors.size());
    for (size_t i = 0; i < factors.size(); i++) {
      BigInt d = factors[i];
      BigInt c = uy[factor_pos[i]] % d;
      if (c < 0) c += d;
      e[i] = (long long)(unsigned long long)c;
    }
    return e;
  }

  Rat pair_raw(const DiscElem& x, const DiscElem& y) const {
    RatVec lx = lift(x), ly = lift(y);
    Rat s(0);
    for (int i = 0; i < lat.rank(); i++)
      for (int j = 0; j < lat.rank(); j++) s += lx[i] * Rat(lat.gram[i][j]) * ly[j];
    return s;
  }

  static Rat mod_reduce(Rat v, const BigInt& m) {  // into [0, m)
    Rat vm = v / Rat(m);
    BigInt fl = numerator(vm) / denominator(vm);
    if (numerator(vm) < 0 && numerator(vm) % denominator(vm) != 0) fl -= 1;
    return v - Rat(fl) * Rat(m);
  }

  Rat b(const DiscElem& x, const DiscElem& y) const {  // in [0,1)
    return mod_reduce(pair_raw(x, y), 1);
  }

  Rat q(const DiscElem& x) const {  // in [0,2)
    return mod_reduce(pair_raw(x, x), 2);
  }
};

inline DiscForm discriminant_form(const Lattice& L) {
  if (!L.is_symmetric()) throw k3err("discriminant_form: gram not symmetric");
  if (L.det() == 0) throw k3err("discriminant_form: degenerate gram");
  SNF s = smith_normal_form(L.gram);
  DiscForm f;
  f.lat = L;
  f.U = s.U;
  int n = L.rank();
  for (int i = 0; i < n; i++) {
    BigInt d = s.D[i][i];
    f.full_diag.push_back(d);
    if (d > 1) {
      f.factors.push_back(d);
      f.factor_pos.push_back(i);
      RatVec g(n);
      for (int r = 0; r < n; r++) g[r] = Rat(s.V[r][i]) / Rat(d);
      f.gens.push_back(g);
    }
  }
  return f;
}

// Action table of an isometry on the discriminant group (direct action x -> m x).
inline std::vector<int> induced_disc_action(const Lattice& L, const IntMat& m,
                                            const DiscForm& f) {
  if (!is_isometry(L, m)) throw k3err("induced_disc_action: not an isometry");
  size_t k = f.factors.size();
  // image of each generator
  std::vector<DiscElem> img(k);
  for (size_t i = 0; i < k; i++) {
    RatVec mv(L.rank(), Rat(0));
    for (int r = 0; r < L.rank(); r++)
      for (int c = 0; c < L.rank(); c++) mv[r] += Rat(m[r][c]) * f.gens[i][c];
    img[i] = f.coords(mv);
  }
  size_t sz = f.num_elements();
  std::vector<int> table(sz);
  for (size_t idx = 0; idx < sz; idx++) {
    DiscElem e = f.elem_from_index(idx);
    DiscElem out(k, 0);
    for (size_t i = 0; i < k; i++)
      for (size_t c = 0; c < k; c++) {
        BigInt d = f.factors[c];
        out[c] = (long long)(((BigInt(out[c]) + BigInt(e[i]) * img[i][c]) % d + d) % d);
      }
    table[idx] = (int)f.index_of(out);
  }
  return table;
}

inline std::vector<int> induced_disc_action(const Lattice& L, const IntMat& m) {
  DiscForm f = discriminant_form(L);
  return induced_disc_action(L, m, f);
}

inline bool is_identity_table(const std::vector<int>& t) {
  for (size_t i = 0; i < t.size(); i++)
    if (t[i] != (int)i) return false;
  return true;
}

// The action is trivial iff every generator is fixed, so there is no need to
// build the whole table.
inline bool is_in_O_star(const Lattice& L, const IntMat& m, const DiscForm& f) {
  if (!is_isometry(L, m)) throw k3err("is_in_O_star: not an isometry");
  size_t k = f.factors.size();
  for (size_t i = 0; i < k; i++) {
    RatVec mv(L.rank(), Rat(0));
    for (int r = 0; r < L.rank(); r++)
      for (int c = 0; c < L.rank(); c++) mv[r] += Rat(m[r][c]) * f.gens[i][c];
    DiscElem img = f.coords(mv);
    for (size_t c = 0; c < k; c++)
      if (img[c] != (c == i ? 1 : 0)) return false;
  }
  return true;
}

inline bool is_in_O_star(const Lattice& L, const IntMat& m) {
  DiscForm f = discriminant_form(L);
  return is_in_O_star(L, m, f);
}

}  // namespace k3mono
