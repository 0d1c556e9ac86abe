#pragma once
// Exact integer lattices given by Gram matrices. Everything in here is
// arbitrary-precision and exact; no floating point.

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3mono {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntMat = std::vector<std::vector<BigInt>>;
using RatVec = std::vector<Rat>;

struct k3err : std::runtime_error {
  explicit k3err(const std::string& m) : std::runtime_error(m) {}
};

inline IntMat zero_mat(int n, int m) {
  return IntMat(n, std::vector<BigInt>(m, 0));
}

inline IntMat identity_mat(int n) {
  IntMat r = zero_mat(n, n);
  for (int i = 0; i < n; i++) r[i][i] = 1;
  return r;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  int n = (int)a.size(), k = (int)b.size(), m = (int)b[0].size();
  if ((int)a[0].size() != k) throw k3err("mat_mul: shape mismatch");
  IntMat r = zero_mat(n, m);
  for (int i = 0; i < n; i++)
    for (int l = 0; l < k; l++) {
      if (a[i][l] == 0) continue;
      for (int j = 0; j < m; j++) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

inline IntMat mat_transpose(const IntMat& a) {
  IntMat r = zero_mat((int)a[0].size(), (int)a.size());
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < a[0].size(); j++) r[j][i] = a[i][j];
  return r;
}

inline std::vector<BigInt> mat_vec(const IntMat& a, const std::vector<BigInt>& v) {
  std::vector<BigInt> r(a.size(), 0);
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < v.size(); j++) r[i] += a[i][j] * v[j];
  return r;
}

// Fraction-free determinant (Bareiss). Exact for any integer matrix.
inline BigInt det_bareiss(IntMat a) {
  int n = (int)a.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (int k = 0; k < n - 1; k++) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; i++)
        if (a[i][k] != 0) { p = i; break; }
      if (p < 0) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; i++)
      for (int j = k + 1; j < n; j++) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

struct Lattice {
  IntMat gram;
  std::string label;

  int rank() const { return (int)gram.size(); }

  bool is_symmetric() const {
    for (int i = 0; i < rank(); i++)
      for (int j = 0; j < rank(); j++)
        if (gram[i][j] != gram[j][i]) return false;
    return true;
  }

  bool is_even() const {
    for (int i = 0; i < rank(); i++)
      if (gram[i][i] % 2 != 0) return false;
    return true;
  }

  BigInt det() const { return det_bareiss(gram); }
};

// Standard constructors. H = hyperbolic plane, E8 = negative-definite even
// unimodular rank 8, rank1(k) = <k> with k even nonzero.
inline Lattice lat_H() {
  return {{{0, 1}, {1, 0}}, "H"};
}

inline Lattice lat_rank1(const BigInt& k) {
  if (k == 0) throw k3err("rank1: k must be nonzero");
  if (k % 2 != 0) throw k3err("rank1: k must be even (even lattice)");
  Lattice L;
  L.gram = {{k}};
  L.label = "<" + k.str() + ">";
  return L;
}

inline Lattice lat_E8() {
  // A7 chain 0..6 with node 7 hung off node 4; negated Cartan matrix.
  IntMat c = zero_mat(8, 8);
  for (int i = 0; i < 8; i++) c[i][i] = -2;
  auto edge = [&](int i, int j) { c[i][j] = c[j][i] = 1; };
  for (int i = 0; i < 6; i++) edge(i, i + 1);
  edge(4, 7);
  return {c, "E8"};
}

inline Lattice direct_sum(const std::vector<Lattice>& parts) {
  int n = 0;
  for (auto& p : parts) n += p.rank();
  IntMat g = zero_mat(n, n);
  int off = 0;
  std::string lab;
  for (auto& p : parts) {
    for (int i = 0; i < p.rank(); i++)
      for (int j = 0; j < p.rank(); j++) g[off + i][off + j] = p.gram[i][j];
    off += p.rank();
    if (!lab.empty()) lab += "+";
    lab += p.label.empty() ? "?" : p.label;
  }
  return {g, lab};
}

inline Lattice twist(const Lattice& L, const BigInt& lam) {
  if (lam == 0) throw k3err("twist: scale must be nonzero");
  Lattice r = L;
  for (auto& row : r.gram)
    for (auto& x : row) x *= lam;
  r.label = L.label + "(" + lam.str() + ")";
  return r;
}

// H + <-2n>, the rank-3 Gram the generator matrices preserve.
inline Lattice lat_N(int n) {
  Lattice L = direct_sum({lat_H(), lat_rank1(BigInt(-2) * n)});
  L.label = "H+<-" + std::to_string(2 * n) + ">";
  return L;
}

// M_n = H + E8 + E8 + <-2n>, rank 19.
inline Lattice lat_Mn(int n) {
  Lattice L = direct_sum({lat_H(), lat_E8(), lat_E8(), lat_rank1(BigInt(-2) * n)});
  L.label = "M" + std::to_string(n);
  return L;
}

inline bool is_isometry(const Lattice& L, const IntMat& m) {
  if ((int)m.size() != L.rank()) throw k3err("is_isometry: dimension mismatch");
  for (auto& row : m)
    if ((int)row.size() != L.rank()) throw k3err("is_isometry: dimension mismatch");
  return mat_mul(mat_transpose(m), mat_mul(L.gram, m)) == L.gram;
}

// Signature by exact symmetric diagonalization over the rationals.
inline std::pair<int, int> signature(const Lattice& L) {
  int n = L.rank();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) a[i][j] = Rat(L.gram[i][j]);
  int pos = 0, neg = 0;
  Rat zero(0);
  // congruence row+col add: A <- (I + c E_kp) A (I + c E_pk), keeps symmetry
  auto cadd = [&](int k, int p, const Rat& c) {
    for (int j = 0; j < n; j++) a[k][j] += c * a[p][j];
    for (int i = 0; i < n; i++) a[i][k] += c * a[i][p];
  };
  for (int k = 0; k < n; k++) {
    if (a[k][k] == zero) {
      int p = -1;
      for (int i = k + 1; i < n; i++)
        if (a[i][k] != zero) { p = i; break; }
      if (p < 0) continue;  // zero row => degenerate direction
      cadd(k, p, Rat(1));
      if (a[k][k] == zero) {        // 2a+d = 0; then -2a+d != 0 since a != 0
        cadd(k, p, Rat(-1));        // exact undo
        cadd(k, p, Rat(-1));
      }
    }
    if (a[k][k] == zero) continue;
    if (a[k][k] > zero) pos++; else neg++;
    for (int i = k + 1; i < n; i++) {
      if (a[i][k] == zero) continue;
      Rat f = a[i][k] / a[k][k];
      for (int j = k; j < n; j++) a[i][j] -= f * a[k][j];
      for (int j = k; j < n; j++) a[j][i] -= f * a[j][k];
    }
  }
  return {pos, neg};
}

}  // namespace k3mono
