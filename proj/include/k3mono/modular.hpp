#pragma once
// Congruence subgroups of SL2(Z): membership, coset enumeration, cusp/elliptic
// data, the R_n map into O(H ⊕ <-2n>), its brute-force verification, and the
// fixture data for the covering maps between the associated modular curves.

#include "disc_form.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace k3mono {

struct SL2 {
  BigInt a{1}, b{0}, c{0}, d{1};
  bool operator==(const SL2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  SL2 operator*(const SL2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  SL2 inv() const { return {d, -b, -c, a}; }  // valid since det = 1
  SL2 neg() const { return {-a, -b, -c, -d}; }
  BigInt det() const { return a * d - b * c; }
};

inline SL2 sl2_S() { return {0, -1, 1, 0}; }
inline SL2 sl2_T() { return {1, 1, 0, 1}; }

enum class GroupKind { Gamma0, GammaFull, Cap2Gamma0, Gamma0Plus };

struct GroupSpec {
  GroupKind kind;
  long long N;
  std::string str() const {
    switch (kind) {
      case GroupKind::Gamma0: return "gamma0:" + std::to_string(N);
      case GroupKind::GammaFull: return "gamma:" + std::to_string(N);
      case GroupKind::Cap2Gamma0: return "c:" + std::to_string(N);
      case GroupKind::Gamma0Plus: return "gamma0+:" + std::to_string(N);
    }
    return "?";
  }
};

// "gamma0:N", "gamma:N", "gamma0+:N", "c:N" (the last = Gamma(2) ∩ Gamma0(N))
inline GroupSpec parse_group_spec(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw k3err("group spec needs kind:N, got '" + s + "'");
  std::string kind = s.substr(0, colon);
  long long N;
  try {
    size_t pos = 0;
    N = std::stoll(s.substr(colon + 1), &pos);
    if (pos != s.size() - colon - 1) throw std::invalid_argument("");
  } catch (...) { throw k3err("group spec: bad level in '" + s + "'"); }
  if (N < 1) throw k3err("group spec: level must be positive");
  if (kind == "gamma0") return {GroupKind::Gamma0, N};
  if (kind == "gamma") return {GroupKind::GammaFull, N};
  if (kind == "gamma0+") return {GroupKind::Gamma0Plus, N};
  if (kind == "c") return {GroupKind::Cap2Gamma0, N};
  throw k3err("group spec: unknown kind '" + kind + "'");
}

inline BigInt mod_pos(BigInt v, const BigInt& m) {
  v %= m;
  if (v < 0) v += m;
  return v;
}

// Membership. For Gamma0Plus the element may be given in scaled form: an
// integer matrix P with det N standing for P / sqrt(N); det-1 matrices are
// tested against Gamma0(N) directly.
inline bool member(const GroupSpec& g, const SL2& m) {
  BigInt N = g.N;
  if (g.kind == GroupKind::Gamma0Plus) {
    if (m.det() == 1) return mod_pos(m.c, N) == 0;
    if (m.det() == N)
      return mod_pos(m.a, N) == 0 && mod_pos(m.c, N) == 0 && mod_pos(m.d, N) == 0;
    return false;
  }
  if (m.det() != 1) throw k3err("member: determinant must be 1");
  switch (g.kind) {
    case GroupKind::Gamma0: return mod_pos(m.c, N) == 0;
    case GroupKind::GammaFull:
      return mod_pos(m.a - 1, N) == 0 && mod_pos(m.d - 1, N) == 0 &&
             mod_pos(m.b, N) == 0 && mod_pos(m.c, N) == 0;
    case GroupKind::Cap2Gamma0:
      return member({GroupKind::GammaFull, 2}, m) && member({GroupKind::Gamma0, g.N}, m);
    default: return false;
  }
}

// membership in G ∪ -G (the curve H*/G only sees the image in PSL2)
inline bool member_pm(const GroupSpec& g, const SL2& m) {
  return member(g, m) || member(g, m.neg());
}

inline std::vector<SL2> coset_enumerate(const GroupSpec& g, size_t cap,
                                        bool projective = false) {
  if (g.kind == GroupKind::Gamma0Plus)
    throw k3err("coset_enumerate: not defined for Fricke extensions");
  auto same_coset = [&](const SL2& x, const SL2& y) {
    SL2 p = x * y.inv();
    return projective ? member_pm(g, p) : member(g, p);
  };
  std::vector<SL2> reps{SL2{}};
  std::vector<SL2> frontier{SL2{}};
  const SL2 moves[2] = {sl2_S(), sl2_T()};
  while (!frontier.empty()) {
    std::vector<SL2> next;
    for (auto& x : frontier)
      for (auto& mv : moves) {
        SL2 cand = x * mv;
        bool fresh = true;
        for (auto& r : reps)
          if (same_coset(cand, r)) { fresh = false; break; }
        if (fresh) {
          reps.push_back(cand);
          next.push_back(cand);
          if (reps.size() > cap) throw k3err("coset_enumerate: cap exceeded");
        }
      }
    frontier = std::move(next);
  }
  return reps;
}

struct CurveData {
  long long index = 0;
  std::vector<long long> cusp_widths;  // sorted descending
  long long nu2 = 0, nu3 = 0;
  long long genus = 0;
  long long cusps() const { return (long long)cusp_widths.size(); }
};

namespace detail {
inline std::vector<long long> divisors(long long n) {
  std::vector<long long> d;
  for (long long i = 1; i * i <= n; i++)
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  std::sort(d.begin(), d.end());
  return d;
}
inline std::vector<long long> prime_divisors(long long n) {
  std::vector<long long> p;
  for (long long q = 2; q * q <= n; q++)
    if (n % q == 0) {
      p.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) p.push_back(n);
  return p;
}
inline long long euler_phi(long long n) {
  long long r = n;
  for (long long p : prime_divisors(n)) r -= r / p;
  return r;
}
inline long long genus_from(long long mu, long long nu2, long long nu3, long long cusps) {
  long long num = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
  if (num % 12 != 0) throw k3err("curve_data: genus formula not integral");
  long long g = num / 12;
  if (g < 0) throw k3err("curve_data: negative genus");
  return g;
}
}  // namespace detail

inline CurveData curve_data_gamma0_formula(long long N) {
  CurveData cd;
  cd.index = N;
  for (long long p : detail::prime_divisors(N)) cd.index += cd.index / p;
  cd.nu2 = (N % 4 == 0) ? 0 : 1;
  if (cd.nu2)
    for (long long p : detail::prime_divisors(N))
      if (p % 4 == 3) cd.nu2 = 0; else if (p % 4 == 1) cd.nu2 *= 2;
  cd.nu3 = (N % 9 == 0) ? 0 : 1;
  if (cd.nu3)
    for (long long p : detail::prime_divisors(N))
      if (p % 3 == 2) cd.nu3 = 0; else if (p % 3 == 1) cd.nu3 *= 2;
  for (long long c : detail::divisors(N)) {
    long long cnt = detail::euler_phi(std::gcd(c, N / c));
    long long w = N / (c * std::gcd(c, N / c));
    for (long long i = 0; i < cnt; i++) cd.cusp_widths.push_back(w);
  }
  std::sort(cd.cusp_widths.rbegin(), cd.cusp_widths.rend());
  cd.genus = detail::genus_from(cd.index, cd.nu2, cd.nu3, cd.cusps());
  return cd;
}

inline CurveData curve_data_gamma_formula(long long N) {
  CurveData cd;
  BigInt mu = BigInt(N) * N * N;
  for (long long p : detail::prime_divisors(N)) mu = mu - mu / (BigInt(p) * p);
  if (N > 2) mu /= 2;  // curve index: -Id is not in Gamma(N) for N > 2
  cd.index = (long long)mu;
  cd.nu2 = (N == 1) ? 1 : 0;
  cd.nu3 = (N == 1) ? 1 : 0;
  long long ncusps = (N == 1) ? 1 : cd.index / N;
  for (long long i = 0; i < ncusps; i++) cd.cusp_widths.push_back(N);
  cd.genus = detail::genus_from(cd.index, cd.nu2, cd.nu3, ncusps);
  return cd;
}

// BFS-based curve data: works for any of the congruence kinds here, using
// cosets of G ∪ -G, T-cycles for cusps, S / ST fixed cosets for elliptic
// points.
inline CurveData curve_data_bfs(const GroupSpec& g, size_t cap = 4096) {
  std::vector<SL2> reps = coset_enumerate(g, cap, /*projective=*/true);
  size_t mu = reps.size();
  auto coset_of = [&](const SL2& m) -> size_t {
    for (size_t i = 0; i < mu; i++)
      if (member_pm(g, m * reps[i].inv())) return i;
    throw k3err("curve_data: coset lookup failed");
  };
  CurveData cd;
  cd.index = (long long)mu;
  // cusps = cycles of right multiplication by T
  std::vector<size_t> tperm(mu);
  for (size_t i = 0; i < mu; i++) tperm[i] = coset_of(reps[i] * sl2_T());
  std::vector<bool> seen(mu, false);
  for (size_t i = 0; i < mu; i++) {
    if (seen[i]) continue;
    long long len = 0;
    size_t j = i;
    while (!seen[j]) { seen[j] = true; j = tperm[j]; len++; }
    cd.cusp_widths.push_back(len);
  }
  std::sort(cd.cusp_widths.rbegin(), cd.cusp_widths.rend());
  SL2 S = sl2_S(), ST = sl2_S() * sl2_T();
  for (size_t i = 0; i < mu; i++) {
    if (member_pm(g, reps[i] * S * reps[i].inv())) cd.nu2++;
    if (member_pm(g, reps[i] * ST * reps[i].inv())) cd.nu3++;
  }
  cd.genus = detail::genus_from(cd.index, cd.nu2, cd.nu3, cd.cusps());
  return cd;
}

inline CurveData curve_data(const GroupSpec& g) {
  if (g.N > 64) throw k3err("curve_data: level bound 64 exceeded");
  switch (g.kind) {
    case GroupKind::Gamma0: {
      CurveData f = curve_data_gamma0_formula(g.N);
      CurveData b = curve_data_bfs(g);
      if (f.index != b.index || f.cusp_widths != b.cusp_widths || f.nu2 != b.nu2 ||
          f.nu3 != b.nu3 || f.genus != b.genus)
        throw k3err("curve_data: formula/BFS cross-check failed for " + g.str());
      return f;
    }
    case GroupKind::GammaFull: {
      CurveData f = curve_data_gamma_formula(g.N);
      CurveData b = curve_data_bfs(g);
      if (f.index != b.index || f.cusp_widths != b.cusp_widths || f.nu2 != b.nu2 ||
          f.nu3 != b.nu3 || f.genus != b.genus)
        throw k3err("curve_data: formula/BFS cross-check failed for " + g.str());
      return f;
    }
    case GroupKind::Cap2Gamma0: return curve_data_bfs(g);
    case GroupKind::Gamma0Plus:
      throw k3err("curve_data: Fricke orbifold data is served by cover_fixtures");
  }
  throw k3err("curve_data: bad kind");
}

// ---- the R_n correspondence -------------------------------------------------

// For m = [[a, b], [c*n, d]] in SL2 with n | lower-left entry, the induced
// isometry of H ⊕ <-2n> in the basis (e, f, v):
//   [[a^2,   c^2*n, 2*a*c*n],
//    [b^2*n, d^2,   2*b*d*n],
//    [a*b,   c*d,   b*c*n + a*d]]
inline IntMat r_map(long long n, const SL2& m) {
  if (m.det() != 1) throw k3err("r_map: determinant must be 1");
  if (mod_pos(m.c, n) != 0) throw k3err("r_map: lower-left entry not divisible by n");
  BigInt a = m.a, b = m.b, c = m.c / n, d = m.d, N = n;
  return {{a * a, c * c * N, 2 * a * c * N},
          {b * b * N, d * d, 2 * b * d * N},
          {a * b, c * d, b * c * N + a * d}};
}

// Scaled variant: P integral with det(P) = S, standing for P / sqrt(S). All
// nine formula entries must come out integral. With P = [[0,-1],[n,0]] and
// S = n this yields [[0,1,0],[1,0,0],[0,0,-1]].
inline IntMat r_map_scaled(long long n, const SL2& P, const BigInt& S) {
  if (P.det() != S) throw k3err("r_map_scaled: det(P) != S");
  if (mod_pos(P.c, n) != 0) throw k3err("r_map_scaled: lower-left entry not divisible by n");
  BigInt A = P.a, B = P.b, C = P.c / n, D = P.d, N = n;
  BigInt raw[3][3] = {{A * A, C * C * N, 2 * A * C * N},
                      {B * B * N, D * D, 2 * B * D * N},
                      {A * B, C * D, B * C * N + A * D}};
  IntMat out(3, std::vector<BigInt>(3));
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) {
      if (raw[i][j] % S != 0) throw k3err("r_map_scaled: non-integral entry");
      out[i][j] = raw[i][j] / S;
    }
  return out;
}

struct ModularLemmaReport {
  long long n = 0, bound = 0;
  long long checked = 0;        // matrices with det 1, n | c, entries in range
  long long in_subgroup = 0;    // members of Gamma(2) ∩ Gamma0(2n)
  long long in_o_star = 0;      // R_n image acts trivially on disc(H(2) ⊕ <-4n>)
  long long mismatches = 0;
  std::optional<SL2> counterexample;
};

// Brute force over entries in [-bound, bound]: membership in Γ(2) ∩ Γ0(2n)
// must coincide with the induced discriminant action of R_n being trivial.
inline ModularLemmaReport verify_modular_lemma(long long n, long long bound) {
  if (n < 1 || n > 4) throw k3err("verify_modular_lemma: n must be 1..4");
  if (bound > 50) throw k3err("verify_modular_lemma: bound must be <= 50");
  Lattice L = twist(lat_N(n), 2);
  DiscForm f = discriminant_form(L);
  GroupSpec target{GroupKind::Cap2Gamma0, 2 * n};
  ModularLemmaReport rep;
  rep.n = n;
  rep.bound = bound;
  for (long long a = -bound; a <= bound; a++)
    for (long long b = -bound; b <= bound; b++)
      for (long long c = -bound; c <= bound; c++) {
        if (c % n != 0) continue;
        // ad = 1 + bc
        BigInt rhs = 1 + BigInt(b) * c;
        if (a == 0) {
          if (rhs != 0) continue;
          for (long long d = -bound; d <= bound; d++) {
            SL2 m{a, b, c, d};
            rep.checked++;
            bool mem = member(target, m);
            bool ost = is_in_O_star(L, r_map(n, m), f);
            rep.in_subgroup += mem;
            rep.in_o_star += ost;
            if (mem != ost) { rep.mismatches++; if (!rep.counterexample) rep.counterexample = m; }
          }
          continue;
        }
        if (rhs % a != 0) continue;
        BigInt d = rhs / a;
        if (d < -bound || d > bound) continue;
        SL2 m{a, b, c, d};
        rep.checked++;
        bool mem = member(target, m);
        bool ost = is_in_O_star(L, r_map(n, m), f);
        rep.in_subgroup += mem;
        rep.in_o_star += ost;
        if (mem != ost) { rep.mismatches++; if (!rep.counterexample) rep.counterexample = m; }
      }
  return rep;
}

// ---- cover fixtures ---------------------------------------------------------

struct CoverRam {
  std::string over;            // target-point label: "e2", "e3", ..., "cusp", "cusp_w1", ...
  std::vector<int> profile;    // complete fibre profile (sums to the degree)
};

struct StageFixture {
  std::string name;            // "f1", "f2", "f3"
  int degree;
  std::string target;          // curve the stage maps onto
  std::vector<CoverRam> ramification;
};

// Fixture data for the covering f: C_{M_n} -> X0(n)+ and its decomposition
// f = f1 ∘ f2 ∘ f3 through X0(n) and X0(2n).  Degrees and fibre profiles are
// shipped as data; the curve data of C_{M_n} = Gamma(2) ∩ Gamma0(2n) is
// re-derived by coset enumeration.  For n = 1 there is an extra double cover
// C' of C_{M_1}, branched over the two f-preimages of the order-3 point,
// which brings the total degree to 12.
struct CoverFixtures {
  int n = 0;
  std::vector<StageFixture> stages;          // f1, f2, f3
  int f_degree = 0;                          // product of stage degrees
  std::string deck_label_f;                  // deck group of f (conventional label)
  bool has_extra_double_cover = false;       // n = 1 only
  int total_degree = 0;                      // f_degree, doubled for n = 1
  std::string deck_label_total;              // deck group including the extra cover
  std::vector<std::string> base_points;      // special points of X0(n)+
  std::vector<int> base_elliptic_orders;
  std::vector<CoverRam> f_ramification;      // fibres of f over the base points
  std::vector<CoverRam> total_ramification;  // fibres of the full tower
  CurveData curve;                           // curve data of Gamma(2) ∩ Gamma0(2n)
};

inline CoverFixtures cover_fixtures(int n) {
  if (n < 1 || n > 4) throw k3err("cover_fixtures: n must be 1..4");
  CoverFixtures cf;
  cf.n = n;
  auto twos = [](int k) { return std::vector<int>(k, 2); };
  switch (n) {
    case 1:
      // X0(1)+ = X0(1); f1 is an isomorphism and f = f2 ∘ f3 is the 6-fold
      // cover given by the classical j(t) of the Legendre family.
      cf.stages = {
          {"f1", 1, "X0(1)+", {}},
          {"f2", 3, "X0(1)", {{"e2", {2, 1}}, {"e3", {3}}, {"cusp", {2, 1}}}},
          {"f3", 2, "X0(2)", {{"e2", {2}}, {"cusp_w1", {2}}, {"cusp_w2", {1, 1}}}}};
      cf.f_degree = 6;
      cf.deck_label_f = "S3";
      cf.has_extra_double_cover = true;
      cf.total_degree = 12;
      cf.deck_label_total = "S3×C2";
      cf.base_points = {"e2", "e3", "cusp"};
      cf.base_elliptic_orders = {2, 3};
      cf.f_ramification = {{"e2", {2, 2, 2}}, {"e3", {3, 3}}, {"cusp", {2, 2, 2}}};
      cf.total_ramification = {{"e2", twos(6)}, {"e3", {6, 6}}, {"cusp", twos(6)}};
      break;
    case 2:
      cf.stages = {
          {"f1", 2, "X0(2)+", {{"e2", {2}}, {"e4", {2}}, {"cusp", {1, 1}}}},
          {"f2", 2, "X0(2)", {{"e2", {2}}, {"cusp_w1", {1, 1}}, {"cusp_w2", {2}}}},
          {"f3", 2, "X0(4)", {{"cusp_w4", {1, 1}}, {"cusp_w1_a", {2}}, {"cusp_w1_b", {2}}}}};
      cf.f_degree = 8;
      cf.deck_label_f = "D8";
      cf.total_degree = 8;
      cf.deck_label_total = "D8";
      cf.base_points = {"e2", "e4", "cusp"};
      cf.base_elliptic_orders = {2, 4};
      cf.f_ramification = {{"e2", twos(4)}, {"e4", {4, 4}}, {"cusp", twos(4)}};
      cf.total_ramification = cf.f_ramification;
      break;
    case 3:
      cf.stages = {
          {"f1", 2, "X0(3)+", {{"e2", {2}}, {"e6", {2}}, {"cusp", {1, 1}}}},
          {"f2", 3, "X0(3)", {{"e3", {3}}, {"cusp_w1", {2, 1}}, {"cusp_w3", {2, 1}}}},
          {"f3", 2, "X0(6)",
           {{"cusp_w6", {1, 1}}, {"cusp_w3", {2}}, {"cusp_w2", {1, 1}}, {"cusp_w1", {2}}}}};
      cf.f_degree = 12;
      cf.deck_label_f = "D12";
      cf.total_degree = 12;
      cf.deck_label_total = "D12";
      cf.base_points = {"e2", "e6", "cusp"};
      cf.base_elliptic_orders = {2, 6};
      cf.f_ramification = {{"e2", twos(6)}, {"e6", {6, 6}}, {"cusp", twos(6)}};
      cf.total_ramification = cf.f_ramification;
      break;
    case 4:
      cf.stages = {
          {"f1", 2, "X0(4)+", {{"e2", {2}}, {"cusp_w1", {1, 1}}, {"cusp_w2", {2}}}},
          {"f2", 2, "X0(4)", {{"cusp_w4", {2}}, {"cusp_w1_a", {1, 1}}, {"cusp_w1_b", {2}}}},
          {"f3", 2, "X0(8)",
           {{"cusp_w8", {1, 1}}, {"cusp_w2", {1, 1}}, {"cusp_w1_a", {2}}, {"cusp_w1_b", {2}}}}};
      cf.f_degree = 8;
      cf.deck_label_f = "D8";
      cf.total_degree = 8;
      cf.deck_label_total = "D8";
      cf.base_points = {"e2", "cusp_w1", "cusp_w2"};
      cf.base_elliptic_orders = {2};
      cf.f_ramification = {{"e2", twos(4)}, {"cusp_w1", twos(4)}, {"cusp_w2", {4, 4}}};
      cf.total_ramification = cf.f_ramification;
      break;
  }
  cf.curve = curve_data({GroupKind::Cap2Gamma0, 2LL * n});
  return cf;
}

// canonical group_engine name for the conventional deck-group labels
inline std::string deck_label_canonical(const std::string& label) {
  if (label == "D12" || label == "S3×C2" || label == "S3xC2") return "S3xC2 (≅ D12)";
  return label;
}

}  // namespace k3mono
