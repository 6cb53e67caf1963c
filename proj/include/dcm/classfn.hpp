#pragma once

// Group algebra elements, class functions, dihedral character tables, lifts
// to G^c = G x <rho>, induced characters, and decomposition into irreducible
// coordinates. Conventions:
//   - a class function on G is viewed on G^c by zero extension;
//   - (1 - rho) f means the group-algebra product, i.e. value f(g) on the
//     rho-free half and -f(g) at rho g;
//   - psi_1 / psi_rho are the two characters of <rho>, and chi.psi1 /
//     chi.psirho name the irreducible characters of the direct product.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dcm/cyclotomic.hpp"
#include "dcm/group.hpp"

namespace dcm {

struct AlgebraElem {
  const FiniteGroup* grp;
  std::vector<Cyc> coeff;  // indexed by element
};

struct ClassFunction {
  const FiniteGroup* grp;
  std::vector<Cyc> val;  // indexed by conjugacy class
};

inline AlgebraElem zero_elem(const FiniteGroup& g) {
  return {&g, std::vector<Cyc>(g.order())};
}

inline ClassFunction zero_fn(const FiniteGroup& g) {
  return {&g, std::vector<Cyc>(g.num_classes())};
}

inline void require_same_group(const FiniteGroup* a, const FiniteGroup* b) {
  if (a != b) throw std::invalid_argument("operands live on different groups");
}

enum class ConvNorm { plain, haar };

inline AlgebraElem convolve(const AlgebraElem& a, const AlgebraElem& b,
                            ConvNorm norm = ConvNorm::plain) {
  require_same_group(a.grp, b.grp);
  const FiniteGroup& g = *a.grp;
  AlgebraElem out = zero_elem(g);
  for (unsigned x = 0; x < g.order(); ++x) {
    if (a.coeff[x].is_zero()) continue;
    for (unsigned y = 0; y < g.order(); ++y) {
      if (b.coeff[y].is_zero()) continue;
      out.coeff[g.mul(static_cast<gidx>(x), static_cast<gidx>(y))] += a.coeff[x] * b.coeff[y];
    }
  }
  if (norm == ConvNorm::haar) {
    Cyc scale = Cyc(rat(1, g.order()));
    for (auto& c : out.coeff) c *= scale;
  }
  return out;
}

// Coefficient of g moved to g^{-1} (the dual used in A_Phi = Phi Phi~).
inline AlgebraElem dual_elem(const AlgebraElem& a) {
  AlgebraElem out = zero_elem(*a.grp);
  for (unsigned x = 0; x < a.grp->order(); ++x)
    out.coeff[a.grp->inv(static_cast<gidx>(x))] = a.coeff[x];
  return out;
}

inline ClassFunction project_conj_avg(const AlgebraElem& a) {
  const FiniteGroup& g = *a.grp;
  ClassFunction out = zero_fn(g);
  for (unsigned c = 0; c < g.num_classes(); ++c) {
    Cyc sum;
    for (gidx x : g.classes()[c]) sum += a.coeff[x];
    out.val[c] = sum * Cyc(rat(1, g.class_size(c)));
  }
  return out;
}

inline AlgebraElem expand(const ClassFunction& f) {
  AlgebraElem out = zero_elem(*f.grp);
  for (unsigned x = 0; x < f.grp->order(); ++x)
    out.coeff[x] = f.val[f.grp->class_of(static_cast<gidx>(x))];
  return out;
}

// Checks that an algebra element is constant on conjugacy classes, then
// returns it as a class function.
inline ClassFunction as_class_function(const AlgebraElem& a) {
  const FiniteGroup& g = *a.grp;
  ClassFunction out = zero_fn(g);
  for (unsigned c = 0; c < g.num_classes(); ++c) {
    const auto& cls = g.classes()[c];
    for (gidx x : cls)
      if (a.coeff[x] != a.coeff[cls[0]])
        throw std::logic_error("as_class_function: not constant on a conjugacy class");
    out.val[c] = a.coeff[cls[0]];
  }
  return out;
}

inline ClassFunction class_indicator(const FiniteGroup& g, unsigned cls) {
  ClassFunction out = zero_fn(g);
  out.val.at(cls) = Cyc(1);
  return out;
}

inline ClassFunction dual(const ClassFunction& f) {
  const FiniteGroup& g = *f.grp;
  ClassFunction out = zero_fn(g);
  for (unsigned c = 0; c < g.num_classes(); ++c)
    out.val[g.class_of(g.inv(g.class_rep(c)))] = f.val[c];
  return out;
}

inline ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
  require_same_group(a.grp, b.grp);
  ClassFunction out = a;
  for (size_t i = 0; i < out.val.size(); ++i) out.val[i] += b.val[i];
  return out;
}
inline ClassFunction operator-(const ClassFunction& a, const ClassFunction& b) {
  require_same_group(a.grp, b.grp);
  ClassFunction out = a;
  for (size_t i = 0; i < out.val.size(); ++i) out.val[i] -= b.val[i];
  return out;
}
inline ClassFunction operator*(const Cyc& s, const ClassFunction& f) {
  ClassFunction out = f;
  for (auto& v : out.val) v = s * v;
  return out;
}
inline bool operator==(const ClassFunction& a, const ClassFunction& b) {
  require_same_group(a.grp, b.grp);
  return a.val == b.val;
}
inline bool operator!=(const ClassFunction& a, const ClassFunction& b) { return !(a == b); }

inline Cyc inner_product(const ClassFunction& f, const ClassFunction& h) {
  require_same_group(f.grp, h.grp);
  const FiniteGroup& g = *f.grp;
  Cyc sum;
  for (unsigned c = 0; c < g.num_classes(); ++c)
    sum += Cyc(Rat(g.class_size(c))) * f.val[c] * h.val[c].conj();
  return sum * Cyc(rat(1, g.order()));
}

struct NamedChar {
  std::string name;
  ClassFunction fn;
};

// Irreducible characters of G = D_2n over the rho-free half of the context.
// Odd n = 2m+1: chi0, chi1..chim (2-dimensional), chis.
// Even n = 2m: chi0, chi1..chi{m-1} (2-dimensional), chim0, chim1, chis.
inline std::vector<NamedChar> dihedral_char_table(const CMGroupContext& ctx) {
  if (!ctx.dihedral)
    throw std::invalid_argument("dihedral_char_table: context is not dihedral");
  unsigned n = ctx.n;
  unsigned m = n / 2;  // even; odd uses (n-1)/2
  bool even = (n % 2 == 0);
  if (!even) m = (n - 1) / 2;
  const FiniteGroup& G = ctx.G;
  std::vector<NamedChar> table;
  auto fill = [&](const std::string& name, auto&& value_at) {
    ClassFunction f = zero_fn(G);
    for (unsigned c = 0; c < G.num_classes(); ++c) {
      gidx rep = G.class_rep(c);
      f.val[c] = value_at(ctx.rot_pow[rep], ctx.refl_bit[rep] != 0);
    }
    table.push_back({name, std::move(f)});
  };
  fill("chi0", [](unsigned, bool) { return Cyc(1); });
  unsigned two_dim_top = even ? m - 1 : m;
  for (unsigned j = 1; j <= two_dim_top; ++j) {
    fill("chi" + std::to_string(j), [&](unsigned a, bool refl) {
      if (refl) return Cyc(0);
      return Cyc::zeta(n, static_cast<long>(a) * j) + Cyc::zeta(n, -static_cast<long>(a) * j);
    });
  }
  if (even) {
    fill("chim0", [&](unsigned a, bool) { return Cyc(a % 2 ? -1 : 1); });
    fill("chim1", [&](unsigned a, bool refl) {
      if (!refl) return Cyc(a % 2 ? -1 : 1);
      return Cyc(a % 2 ? 1 : -1);
    });
  }
  fill("chis", [](unsigned, bool refl) { return Cyc(refl ? -1 : 1); });
  return table;
}

enum class LiftSign { plus, rho };

// chi on G pulled back to G^c with psi_1 (plus) or psi_rho: value chi(g) on
// the rho-free half, and chi(g) or -chi(g) at rho g.
inline ClassFunction lift_to_Gc(const CMGroupContext& ctx, const ClassFunction& f,
                                LiftSign sign) {
  require_same_group(f.grp, &ctx.G);
  const FiniteGroup& Gc = ctx.Gc;
  ClassFunction out = zero_fn(Gc);
  for (unsigned c = 0; c < Gc.num_classes(); ++c) {
    gidx rep = Gc.class_rep(c);
    bool in_rho = ctx.in_rho_half(rep);
    gidx base = in_rho ? static_cast<gidx>(rep - ctx.half()) : rep;
    Cyc v = f.val[ctx.G.class_of(base)];
    out.val[c] = (sign == LiftSign::rho && in_rho) ? -v : v;
  }
  return out;
}

inline ClassFunction zero_extend(const CMGroupContext& ctx, const ClassFunction& f) {
  require_same_group(f.grp, &ctx.G);
  const FiniteGroup& Gc = ctx.Gc;
  ClassFunction out = zero_fn(Gc);
  for (unsigned c = 0; c < Gc.num_classes(); ++c) {
    gidx rep = Gc.class_rep(c);
    if (!ctx.in_rho_half(rep)) out.val[c] = f.val[ctx.G.class_of(rep)];
  }
  return out;
}

// (1 - rho) f for a class function on G^c; rho is central, so this is
// f(g) - f(rho g) pointwise.
inline ClassFunction one_minus_rho(const CMGroupContext& ctx, const ClassFunction& f) {
  require_same_group(f.grp, &ctx.Gc);
  const FiniteGroup& Gc = ctx.Gc;
  ClassFunction out = zero_fn(Gc);
  for (unsigned c = 0; c < Gc.num_classes(); ++c) {
    gidx rep = Gc.class_rep(c);
    out.val[c] = f.val[c] - f.val[Gc.class_of(ctx.rho_shift(rep))];
  }
  return out;
}

// The 2 * (number of G-characters) irreducibles of G^c, in the order the
// ledger atoms use: per base character, psi1 then psirho.
inline std::vector<NamedChar> gc_char_table(const CMGroupContext& ctx) {
  std::vector<NamedChar> out;
  for (const auto& c : dihedral_char_table(ctx)) {
    out.push_back({c.name + ".psi1", lift_to_Gc(ctx, c.fn, LiftSign::plus)});
    out.push_back({c.name + ".psirho", lift_to_Gc(ctx, c.fn, LiftSign::rho)});
  }
  return out;
}

// Character of Ind_sub^{G^c} chi for a one-dimensional character chi of the
// subgroup `sub`, computed elementwise:
//   chi_pi(g) = (1/|sub|) * sum over x in G^c of chi(x^{-1} g x), the sum
// restricted to x with x^{-1} g x in sub. The result is checked to be
// constant on classes. chi is validated as multiplicative with chi(1) = 1.
inline ClassFunction induced_character(const CMGroupContext& ctx,
                                       const std::vector<gidx>& sub,
                                       const std::map<gidx, Cyc>& chi) {
  const FiniteGroup& Gc = ctx.Gc;
  if (sub.empty() || sub[0] != 0)
    throw std::invalid_argument("induced_character: subgroup must contain the identity first");
  std::vector<char> in_sub(Gc.order(), 0);
  for (gidx x : sub) in_sub[x] = 1;
  for (gidx x : sub)
    for (gidx y : sub)
      if (!in_sub[Gc.mul(x, y)])
        throw std::invalid_argument("induced_character: set is not closed");
  auto chival = [&](gidx x) -> const Cyc& {
    auto it = chi.find(x);
    if (it == chi.end()) throw std::invalid_argument("induced_character: chi missing a value");
    return it->second;
  };
  if (chival(0) != Cyc(1))
    throw std::invalid_argument("induced_character: chi(1) != 1");
  for (gidx x : sub)
    for (gidx y : sub)
      if (chival(Gc.mul(x, y)) != chival(x) * chival(y))
        throw std::invalid_argument("induced_character: chi is not multiplicative");

  AlgebraElem vals = zero_elem(Gc);
  Cyc scale = Cyc(rat(1, static_cast<long>(sub.size())));
  for (unsigned g = 0; g < Gc.order(); ++g) {
    Cyc sum;
    for (unsigned x = 0; x < Gc.order(); ++x) {
      gidx conj = Gc.mul(Gc.mul(Gc.inv(static_cast<gidx>(x)), static_cast<gidx>(g)),
                         static_cast<gidx>(x));
      if (in_sub[conj]) sum += chival(conj);
    }
    vals.coeff[g] = scale * sum;
  }
  return as_class_function(vals);
}

// Coordinates of f in the irreducible basis of its group (G or G^c of the
// context). Exact; the reconstruction is re-checked and a failure throws.
// Returns the nonzero coordinates in character-table order.
inline std::vector<std::pair<std::string, Cyc>> decompose(const CMGroupContext& ctx,
                                                          const ClassFunction& f) {
  std::vector<NamedChar> table;
  if (f.grp == &ctx.G) {
    table = dihedral_char_table(ctx);
  } else if (f.grp == &ctx.Gc) {
    table = gc_char_table(ctx);
  } else {
    throw std::invalid_argument("decompose: function not on this context's groups");
  }
  std::vector<std::pair<std::string, Cyc>> coords;
  ClassFunction recon = zero_fn(*f.grp);
  for (const auto& ch : table) {
    Cyc c = inner_product(f, ch.fn);
    recon = recon + c * ch.fn;
    if (!c.is_zero()) coords.emplace_back(ch.name, c);
  }
  if (!(recon == f)) throw std::logic_error("decompose: reconstruction failed");
  return coords;
}

// f(g) + f(rho g) constant over G^c; the H^00 condition.
inline bool is_H00(const CMGroupContext& ctx, const ClassFunction& f) {
  require_same_group(f.grp, &ctx.Gc);
  const FiniteGroup& Gc = ctx.Gc;
  Cyc ref = f.val[Gc.class_of(0)] + f.val[Gc.class_of(ctx.rho)];
  for (unsigned c = 0; c < Gc.num_classes(); ++c) {
    gidx rep = Gc.class_rep(c);
    if (f.val[c] + f.val[Gc.class_of(ctx.rho_shift(rep))] != ref) return false;
  }
  return true;
}

}  // namespace dcm
