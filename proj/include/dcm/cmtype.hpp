#pragma once

// CM types Phi_S, the class functions A_S^0 (oracle convolution and closed
// forms), orbit classification under the Galois action, reflex stabilizers,
// and the averaged formulas.
//
// The oracle is the ground truth everything else is checked against:
//   A_S^0 = conjugation average of (1/|G^c|) Phi_S^c * dual(Phi_S^c).
// The closed forms come in two variants: `published` evaluates the displayed
// formulas verbatim; `certified` is the oracle-equal variant (for odd n the
// two are algebraically identical; for even n the published middle term
// carries r/n where the oracle certifies 1/n).

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcm/classfn.hpp"

namespace dcm {

using Subset = std::vector<unsigned>;

inline Subset canonical_subset(unsigned n, Subset S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  if (!S.empty() && S.back() >= n)
    throw std::invalid_argument("subset entry out of range");
  return S;
}

inline Subset complement_subset(unsigned n, const Subset& S) {
  std::vector<bool> in(n, false);
  for (unsigned v : S) in[v] = true;
  Subset out;
  for (unsigned v = 0; v < n; ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

inline Subset subset_from_mask(unsigned n, std::uint64_t mask) {
  Subset out;
  for (unsigned v = 0; v < n; ++v)
    if (mask >> v & 1) out.push_back(v);
  return out;
}

// Lexicographically next size-|c| subset of {0..n-1}; false when exhausted.
inline bool next_combination(Subset& c, unsigned n) {
  unsigned r = static_cast<unsigned>(c.size());
  if (r == 0) return false;
  int i = static_cast<int>(r) - 1;
  while (i >= 0 && c[i] == n - r + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (unsigned j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
  return true;
}

inline std::string subset_str(const Subset& S) {
  std::string out;
  for (size_t i = 0; i < S.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(S[i]);
  }
  return out;
}

inline Subset parse_subset(unsigned n, const std::string& s) {
  Subset out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    std::string tok = s.substr(pos, next - pos);
    if (tok.empty()) throw std::invalid_argument("parse_subset: empty entry");
    for (char ch : tok)
      if (ch < '0' || ch > '9') throw std::invalid_argument("parse_subset: bad entry '" + tok + "'");
    out.push_back(static_cast<unsigned>(std::stoul(tok)));
    pos = next + 1;
  }
  return canonical_subset(n, std::move(out));
}

// The constant-1 function on the rho-free half: tr_{E^c/kappa}.
inline ClassFunction trace_fn(const CMGroupContext& ctx) {
  const FiniteGroup& Gc = ctx.Gc;
  ClassFunction out = zero_fn(Gc);
  for (unsigned c = 0; c < Gc.num_classes(); ++c)
    out.val[c] = Cyc(ctx.in_rho_half(Gc.class_rep(c)) ? 0 : 1);
  return out;
}

inline ClassFunction const_one_fn(const CMGroupContext& ctx) {
  ClassFunction out = zero_fn(ctx.Gc);
  for (auto& v : out.val) v = Cyc(1);
  return out;
}

// Phi_S^c = tr_{E^c/kappa} + (rho - 1) sum over j in S, h in H of sigma_j h:
// coefficient 1 on sigma_j H for j outside S and on rho sigma_j H for j in S.
inline AlgebraElem phi_element(const CMGroupContext& ctx, const Subset& S) {
  Subset cs = canonical_subset(ctx.n, S);
  std::vector<bool> in_S(ctx.n, false);
  for (unsigned v : cs) in_S[v] = true;
  AlgebraElem phi = zero_elem(ctx.Gc);
  for (unsigned j = 0; j < ctx.n; ++j) {
    for (gidx h : ctx.H) {
      gidx g = ctx.Gc.mul(ctx.coset_reps[j], h);
      phi.coeff[in_S[j] ? ctx.Gc.mul(ctx.rho, g) : g] = Cyc(1);
    }
  }
  for (unsigned g = 0; g < ctx.Gc.order(); ++g)
    if (phi.coeff[g] + phi.coeff[ctx.rho_shift(static_cast<gidx>(g))] != Cyc(1))
      throw std::logic_error("phi_element: support is not a CM type");
  return phi;
}

// Ground-truth oracle: project the plain product Phi * Phi~ scaled by
// 1/|G^c| onto class functions.
inline ClassFunction a_s0_oracle(const CMGroupContext& ctx, const Subset& S) {
  AlgebraElem phi = phi_element(ctx, S);
  AlgebraElem prod = convolve(phi, dual_elem(phi), ConvNorm::plain);
  Cyc scale = Cyc(rat(1, ctx.Gc.order()));
  for (auto& c : prod.coeff) c *= scale;
  return project_conj_avg(prod);
}

// The difference-counts a_j and, for even n, the parity counts (b_0, b_1).
//   a_j = |{(i,k) in S^2 : i - k = j mod n}|, halved at j = m when n = 2m;
//   b_i = |{(j,k) in S^2 : j + k = i mod 2}|.
struct CountData {
  unsigned n = 0, r = 0, m = 0;
  std::vector<Rat> a;  // indexed 1..m; a[0] unused
  Rat b0, b1;
};

inline CountData a_counts(unsigned n, const Subset& S) {
  CountData out;
  out.n = n;
  out.r = static_cast<unsigned>(S.size());
  bool even = (n % 2 == 0);
  out.m = even ? n / 2 : (n - 1) / 2;
  std::vector<long> c(n, 0);
  long b[2] = {0, 0};
  for (unsigned i : S)
    for (unsigned k : S) {
      c[(i + n - k) % n]++;
      b[(i + k) % 2]++;
    }
  out.a.assign(out.m + 1, Rat(0));
  for (unsigned j = 1; j <= out.m; ++j) {
    out.a[j] = Rat(c[j]);
    if (even && j == out.m) out.a[j] = rat(c[j], 2);
  }
  out.b0 = Rat(b[0]);
  out.b1 = Rat(b[1]);
  return out;
}

enum class ClosedForm { certified, published };

// Closed form for A_S^0 over a dihedral context. See the header comment for
// the two variants.
inline ClassFunction a_s0_closed(const CMGroupContext& ctx, const Subset& S,
                                 ClosedForm form = ClosedForm::certified) {
  if (!ctx.dihedral)
    throw std::invalid_argument("a_s0_closed: closed form requires a dihedral context");
  Subset cs = canonical_subset(ctx.n, S);
  unsigned n = ctx.n;
  bool even = (n % 2 == 0);
  CountData cnt = a_counts(n, cs);
  unsigned m = cnt.m;
  long r = static_cast<long>(cnt.r);
  const FiniteGroup& Gc = ctx.Gc;

  auto cls_of_rot = [&](unsigned a) { return Gc.class_of(static_cast<gidx>(a % n)); };
  ClassFunction O0 = class_indicator(Gc, cls_of_rot(0));
  ClassFunction tr = trace_fn(ctx);

  ClassFunction f = Cyc(rat(1, 2)) * tr - Cyc(rat(r, n)) * one_minus_rho(ctx, tr);

  if (!even) {
    ClassFunction Orefl = class_indicator(Gc, Gc.class_of(ctx.tau));
    if (form == ClosedForm::published) {
      // (r/n)(1-rho)(O_0 + (1/n) O_{m+1}) + (1/n)(1-rho) sum a_j O_j
      //   + (r(r-1)/n^2)(1-rho) O_{m+1}
      ClassFunction acc = O0 + Cyc(rat(1, n)) * Orefl;
      f = f + Cyc(rat(r, n)) * one_minus_rho(ctx, acc);
      ClassFunction mid = zero_fn(Gc);
      for (unsigned j = 1; j <= m; ++j)
        mid = mid + Cyc(cnt.a[j]) * class_indicator(Gc, cls_of_rot(j));
      f = f + Cyc(rat(1, n)) * one_minus_rho(ctx, mid);
      f = f + Cyc(rat(r * (r - 1), static_cast<long>(n) * n)) * one_minus_rho(ctx, Orefl);
    } else {
      // (1/n)(1-rho)[ r O_0 + sum a_j O_j + (r^2/n) O_{m+1} ]
      ClassFunction b0 = Cyc(Rat(r)) * O0;
      for (unsigned j = 1; j <= m; ++j)
        b0 = b0 + Cyc(cnt.a[j]) * class_indicator(Gc, cls_of_rot(j));
      b0 = b0 + Cyc(rat(r * r, n)) * Orefl;
      f = f + Cyc(rat(1, n)) * one_minus_rho(ctx, b0);
    }
  } else {
    ClassFunction Om = class_indicator(Gc, cls_of_rot(m));
    ClassFunction Oe = class_indicator(Gc, Gc.class_of(ctx.tau));  // even reflections
    ClassFunction Oo = class_indicator(Gc, Gc.class_of(Gc.mul(ctx.sigma, ctx.tau)));
    ClassFunction mid = zero_fn(Gc);
    for (unsigned j = 1; j + 1 <= m; ++j)
      mid = mid + Cyc(cnt.a[j]) * class_indicator(Gc, cls_of_rot(j));
    mid = mid + Cyc(Rat(2) * cnt.a[m]) * Om;
    if (form == ClosedForm::published) {
      // (r/n)(1-rho) O_0 + (r/n)(1-rho)[ sum_{j<m} a_j O_j + 2 a_m O_m ]
      //   + (2/n^2)(1-rho)[ b_0 O_{m+1,0} + b_1 O_{m+1,1} ]
      f = f + Cyc(rat(r, n)) * one_minus_rho(ctx, O0);
      f = f + Cyc(rat(r, n)) * one_minus_rho(ctx, mid);
      ClassFunction refl = Cyc(cnt.b0) * Oe + Cyc(cnt.b1) * Oo;
      f = f + Cyc(rat(2, static_cast<long>(n) * n)) * one_minus_rho(ctx, refl);
    } else {
      // (1/n)(1-rho)[ r O_0 + sum_{j<m} a_j O_j + 2 a_m O_m
      //   + (2 b_0/n) O_{m+1,0} + (2 b_1/n) O_{m+1,1} ]
      ClassFunction b0fn = Cyc(Rat(r)) * O0 + mid;
      b0fn = b0fn + Cyc(rat(2, n) * cnt.b0) * Oe + Cyc(rat(2, n) * cnt.b1) * Oo;
      f = f + Cyc(rat(1, n)) * one_minus_rho(ctx, b0fn);
    }
  }
  return f;
}

// Left translation on the support of Phi^c; the result is again a CM type,
// and this returns its subset.
inline Subset act_on_type(const CMGroupContext& ctx, gidx g, const Subset& S) {
  std::vector<bool> in_S(ctx.n, false);
  for (unsigned v : canonical_subset(ctx.n, S)) in_S[v] = true;
  gidx ginv = ctx.Gc.inv(g);
  Subset out;
  for (unsigned j = 0; j < ctx.n; ++j) {
    gidx x = ctx.Gc.mul(ginv, ctx.Gc.mul(ctx.rho, ctx.coset_reps[j]));
    bool phi_x = ctx.rho_bit[x] ? in_S[ctx.rep_idx[x]] : !in_S[ctx.rep_idx[x]];
    if (phi_x) out.push_back(j);
  }
  return out;
}

inline std::set<Subset> orbit_subsets(const CMGroupContext& ctx, const Subset& S) {
  std::set<Subset> orbit;
  for (unsigned g = 0; g < ctx.Gc.order(); ++g)
    orbit.insert(act_on_type(ctx, static_cast<gidx>(g), S));
  return orbit;
}

inline bool same_orbit(const CMGroupContext& ctx, const Subset& S1, const Subset& S2) {
  return orbit_subsets(ctx, S1).count(canonical_subset(ctx.n, S2)) > 0;
}

struct OrbitDescriptor {
  Subset rep;        // lex-least member; flipped to the complement when r > n/2
  unsigned size;     // number of size-r subsets in the G^c-orbit
  bool rho_glued;    // r = n/2 only: the size-r part is two <s,t>-orbits swapped by rho
};

struct OrbitReport {
  unsigned n = 0, r = 0;
  std::vector<OrbitDescriptor> orbits;
};

inline OrbitReport orbit_classify(const CMGroupContext& ctx, unsigned r) {
  unsigned n = ctx.n;
  if (r > n) throw std::invalid_argument("orbit_classify: r out of range");
  OrbitReport report;
  report.n = n;
  report.r = r;
  std::set<Subset> pending;
  {
    Subset c;
    for (unsigned i = 0; i < r; ++i) c.push_back(i);
    do {
      pending.insert(c);
    } while (next_combination(c, n));
  }
  long total = 0;
  unsigned rep_size = std::min(r, n - r);
  while (!pending.empty()) {
    Subset S = *pending.begin();
    std::set<Subset> orbit = orbit_subsets(ctx, S);
    OrbitDescriptor d;
    d.size = 0;
    d.rho_glued = false;
    bool have_rep = false;
    for (const Subset& T : orbit) {
      if (T.size() == r) {
        ++d.size;
        pending.erase(T);
      }
      if (T.size() == rep_size && (!have_rep || T < d.rep)) {
        d.rep = T;
        have_rep = true;
      }
    }
    if (2 * r == n) {
      // Split detection: is the complement reachable without rho?
      std::set<Subset> g_orbit;
      for (unsigned g = 0; g < ctx.half(); ++g)
        g_orbit.insert(act_on_type(ctx, static_cast<gidx>(g), S));
      d.rho_glued = g_orbit.count(complement_subset(n, S)) == 0;
    }
    total += d.size;
    report.orbits.push_back(std::move(d));
  }
  std::sort(report.orbits.begin(), report.orbits.end(),
            [](const OrbitDescriptor& a, const OrbitDescriptor& b) { return a.rep < b.rep; });
  if (Rat(total) != binom(n, r))
    throw std::logic_error("orbit_classify: orbit sizes do not sum to C(n, r)");
  return report;
}

struct StabilizerReport {
  std::vector<gidx> elements;
  std::vector<gidx> generators;  // greedy minimal, ascending element index
  unsigned order = 0;
};

inline StabilizerReport reflex_stabilizer(const CMGroupContext& ctx, const Subset& S) {
  Subset cs = canonical_subset(ctx.n, S);
  StabilizerReport rep;
  for (unsigned g = 0; g < ctx.Gc.order(); ++g)
    if (act_on_type(ctx, static_cast<gidx>(g), cs) == cs)
      rep.elements.push_back(static_cast<gidx>(g));
  std::set<gidx> closure{0};
  for (gidx g : rep.elements) {
    if (closure.count(g)) continue;
    rep.generators.push_back(g);
    auto grown = subgroup_closure(ctx.Gc, rep.generators);
    closure = std::set<gidx>(grown.begin(), grown.end());
  }
  rep.order = static_cast<unsigned>(rep.elements.size());
  return rep;
}

// The printed three-case reflex subgroup for Phi_{<0,i>} over a dihedral
// context: (1) <s^i t> when n > 4, i != n/2; (2) <s^{n/2}, t> when n > 4
// even, i = n/2; (3) the n = 4 fixtures <s t, s^2 r> (i = 1) and <s^2, t>
// (i = 2).
struct ReflexCase {
  int case_id = 0;
  std::vector<gidx> subgroup;
};

inline ReflexCase reflex_proposition_case(const CMGroupContext& ctx, unsigned i) {
  if (!ctx.dihedral) throw std::invalid_argument("reflex_proposition_case: dihedral only");
  unsigned n = ctx.n;
  if (i == 0 || i >= n) throw std::invalid_argument("reflex_proposition_case: need 1 <= i < n");
  ReflexCase out;
  const FiniteGroup& Gc = ctx.Gc;
  auto pow_s = [&](unsigned a) { return static_cast<gidx>(a % n); };
  if (n == 4) {
    out.case_id = 3;
    if (i == 1 || i == 3) {
      // <s t, s^2 r> for {0,1}; its tau-conjugate <s^3 t, s^2 r> for {0,3}.
      gidx sit = Gc.mul(pow_s(i), ctx.tau);
      gidx s2r = Gc.mul(pow_s(2), ctx.rho);
      out.subgroup = subgroup_closure(Gc, {sit, s2r});
    } else {
      out.subgroup = subgroup_closure(Gc, {pow_s(2), ctx.tau});
    }
  } else if (n % 2 == 0 && i == n / 2) {
    out.case_id = 2;
    out.subgroup = subgroup_closure(Gc, {pow_s(n / 2), ctx.tau});
  } else {
    out.case_id = 1;
    out.subgroup = subgroup_closure(Gc, {Gc.mul(pow_s(i), ctx.tau)});
  }
  return out;
}

// f_{E/F} as a class function on G^c, by two independent routes:
//   (1 - rho) sum over h in H, coset reps sigma_i of sigma_i h sigma_i^{-1}
// (an explicit group-algebra sum, already conjugation-invariant), and the
// induced character of chi_{E/F} from H^c = H x <rho>. Both must agree.
inline ClassFunction f_EF_classfn(const CMGroupContext& ctx) {
  AlgebraElem v = zero_elem(ctx.Gc);
  for (unsigned j = 0; j < ctx.n; ++j) {
    gidx s = ctx.coset_reps[j];
    for (gidx h : ctx.H) {
      gidx x = ctx.Gc.mul(ctx.Gc.mul(s, h), ctx.Gc.inv(s));
      v.coeff[x] += Cyc(1);
    }
  }
  AlgebraElem w = zero_elem(ctx.Gc);
  for (unsigned g = 0; g < ctx.Gc.order(); ++g)
    w.coeff[g] = v.coeff[g] - v.coeff[ctx.rho_shift(static_cast<gidx>(g))];
  ClassFunction direct = as_class_function(w);

  std::map<gidx, Cyc> chi;
  for (gidx h : ctx.H) {
    chi[h] = Cyc(1);
    chi[static_cast<gidx>(h + ctx.half())] = Cyc(-1);
  }
  ClassFunction induced = induced_character(ctx, ctx.Hc, chi);
  if (!(direct == induced))
    throw std::logic_error("f_EF_classfn: explicit sum and induced character disagree");
  return direct;
}

enum class AverageMode { oracle, closed };

// Sum of A_S^0 over all subsets of size r: by brute force (oracle) or by
//   (1/2) C(n,r) tr - C(n-2,r-1) (1-rho) tr + (1/n) C(n-2,r-1) f_{E/F}.
inline ClassFunction average_a0(const CMGroupContext& ctx, unsigned r, AverageMode mode) {
  unsigned n = ctx.n;
  if (r > n) throw std::invalid_argument("average_a0: r out of range");
  if (mode == AverageMode::oracle) {
    ClassFunction sum = zero_fn(ctx.Gc);
    Subset c;
    for (unsigned i = 0; i < r; ++i) c.push_back(i);
    do {
      sum = sum + a_s0_oracle(ctx, c);
    } while (next_combination(c, n));
    return sum;
  }
  if (r < 1) throw std::invalid_argument("average_a0: closed mode requires r >= 1");
  ClassFunction tr = trace_fn(ctx);
  Rat c1 = binom(n - 2, r - 1);
  ClassFunction out = Cyc(binom(n, r) * rat(1, 2)) * tr -
                      Cyc(c1) * one_minus_rho(ctx, tr) +
                      Cyc(c1 * rat(1, n)) * f_EF_classfn(ctx);
  return out;
}

}  // namespace dcm
