#pragma once

// Finite groups by Cayley table, and the CM Galois contexts built on them.
//
// Layout convention used throughout: the full group G^c = G x <rho> stores
// the rho-free half at indices 0..h-1 and the rho half at h..2h-1, with
// rho * g = g + h. The identity is always index 0.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcm {

using gidx = std::uint16_t;

class FiniteGroup {
 public:
  FiniteGroup(std::vector<gidx> cayley, std::vector<std::string> labels)
      : order_(static_cast<unsigned>(labels.size())),
        cayley_(std::move(cayley)),
        labels_(std::move(labels)) {
    validate();
    build_classes();
  }

  unsigned order() const { return order_; }
  gidx mul(gidx a, gidx b) const { return cayley_[a * order_ + b]; }
  gidx inv(gidx a) const { return inv_[a]; }
  const std::string& label(gidx a) const { return labels_[a]; }

  unsigned num_classes() const { return static_cast<unsigned>(classes_.size()); }
  const std::vector<std::vector<gidx>>& classes() const { return classes_; }
  unsigned class_of(gidx a) const { return class_of_[a]; }
  gidx class_rep(unsigned c) const { return classes_[c][0]; }
  unsigned class_size(unsigned c) const { return static_cast<unsigned>(classes_[c].size()); }

 private:
  void validate() {
    if (order_ == 0 || cayley_.size() != static_cast<size_t>(order_) * order_)
      throw std::invalid_argument("FiniteGroup: table size mismatch");
    for (gidx v : cayley_)
      if (v >= order_) throw std::invalid_argument("FiniteGroup: entry out of range");
    for (unsigned a = 0; a < order_; ++a) {
      if (mul(0, a) != a || mul(a, 0) != a)
        throw std::invalid_argument("FiniteGroup: index 0 is not the identity");
    }
    // Rows and columns are permutations, and each element has an inverse.
    inv_.assign(order_, order_);
    for (unsigned a = 0; a < order_; ++a) {
      std::vector<bool> row(order_, false), col(order_, false);
      for (unsigned b = 0; b < order_; ++b) {
        row[mul(a, b)] = true;
        col[mul(b, a)] = true;
        if (mul(a, b) == 0 && mul(b, a) == 0) inv_[a] = static_cast<gidx>(b);
      }
      if (std::count(row.begin(), row.end(), true) != static_cast<long>(order_) ||
          std::count(col.begin(), col.end(), true) != static_cast<long>(order_))
        throw std::invalid_argument("FiniteGroup: table is not a Latin square");
      if (inv_[a] == order_) throw std::invalid_argument("FiniteGroup: missing inverse");
    }
    for (unsigned a = 0; a < order_; ++a)
      for (unsigned b = 0; b < order_; ++b)
        for (unsigned c = 0; c < order_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("FiniteGroup: not associative");
  }

  void build_classes() {
    class_of_.assign(order_, order_);
    for (unsigned g = 0; g < order_; ++g) {
      if (class_of_[g] != order_) continue;
      std::set<gidx> cls;
      for (unsigned x = 0; x < order_; ++x)
        cls.insert(mul(mul(x, static_cast<gidx>(g)), inv(static_cast<gidx>(x))));
      unsigned id = static_cast<unsigned>(classes_.size());
      classes_.emplace_back(cls.begin(), cls.end());
      for (gidx y : classes_.back()) class_of_[y] = id;
    }
    // Visiting g in increasing order already sorts classes by least element.
  }

  unsigned order_;
  std::vector<gidx> cayley_;
  std::vector<std::string> labels_;
  std::vector<gidx> inv_;
  std::vector<std::vector<gidx>> classes_;
  std::vector<unsigned> class_of_;
};

// Galois data for a CM field E over Q with totally real F of degree n:
// Gc = Gal(E^c/Q) = G x <rho>, G = Gal(F^c/Q), H = Gal(E^c/E) inside G,
// coset representatives sigma_j H covering G, H^c = H x <rho>.
struct CMGroupContext {
  FiniteGroup Gc;
  FiniteGroup G;
  unsigned n = 0;
  gidx rho = 0;
  bool dihedral = false;
  gidx sigma = 0, tau = 0;         // dihedral generators inside Gc
  std::vector<gidx> H;             // subset of the rho-free half
  std::vector<gidx> Hc;            // H together with rho*H
  std::vector<gidx> coset_reps;    // sigma_0 .. sigma_{n-1}
  std::vector<gidx> sigma_cyc;     // <sigma> (dihedral only)
  std::vector<gidx> sigma_rho;     // <sigma, rho> (dihedral only)
  std::vector<gidx> rep_idx;       // g = sigma_j h rho^c: j, for every g in Gc
  std::vector<std::uint8_t> rho_bit;  // the c above
  std::vector<unsigned> rot_pow;   // dihedral, all of Gc: g = s^a t^b rho^c gives a
  std::vector<std::uint8_t> refl_bit;  // and the b

  unsigned half() const { return G.order(); }
  bool in_rho_half(gidx g) const { return g >= G.order(); }
  gidx rho_shift(gidx g) const {
    unsigned h = G.order();
    return static_cast<gidx>(g >= h ? g - h : g + h);
  }
};

namespace detail {

inline std::string dihedral_label(unsigned n, unsigned a, unsigned b, unsigned c) {
  std::ostringstream out;
  bool empty = true;
  if (a == 1) {
    out << "s";
    empty = false;
  } else if (a >= 2) {
    out << "s^" << a;
    empty = false;
  }
  if (b) {
    out << (empty ? "" : "*") << "t";
    empty = false;
  }
  if (c) {
    out << (empty ? "" : "*") << "r";
    empty = false;
  }
  return empty ? "1" : out.str();
}

}  // namespace detail

// Gal(E^c/Q) for E of dihedral type: G = D_2n = <s, t | s^n = t^2 = 1,
// tst = s^-1>, index a + n*b for s^a t^b, and rho appended as a direct
// factor. H = <t>, coset representatives s^0 .. s^(n-1).
inline CMGroupContext build_dihedral_cm(unsigned n) {
  if (n < 3) throw std::invalid_argument("build_dihedral_cm: need n >= 3");
  unsigned h = 2 * n;
  unsigned N = 4 * n;
  auto gmul = [&](unsigned x, unsigned y) -> unsigned {
    unsigned ax = x % n, bx = (x / n) & 1, cx = x / h;
    unsigned ay = y % n, by = (y / n) & 1, cy = y / h;
    unsigned a = bx ? (ax + n - ay % n) % n : (ax + ay) % n;
    return a + n * (bx ^ by) + h * (cx ^ cy);
  };
  std::vector<gidx> cayley(static_cast<size_t>(N) * N);
  std::vector<std::string> labels(N);
  for (unsigned x = 0; x < N; ++x) {
    labels[x] = detail::dihedral_label(n, x % n, (x / n) & 1, x / h);
    for (unsigned y = 0; y < N; ++y) cayley[x * N + y] = static_cast<gidx>(gmul(x, y));
  }
  std::vector<gidx> half_cayley(static_cast<size_t>(h) * h);
  std::vector<std::string> half_labels(labels.begin(), labels.begin() + h);
  for (unsigned x = 0; x < h; ++x)
    for (unsigned y = 0; y < h; ++y) half_cayley[x * h + y] = cayley[x * N + y];

  CMGroupContext ctx{FiniteGroup(std::move(cayley), std::move(labels)),
                     FiniteGroup(std::move(half_cayley), std::move(half_labels))};
  ctx.n = n;
  ctx.rho = static_cast<gidx>(h);
  ctx.dihedral = true;
  ctx.sigma = 1;
  ctx.tau = static_cast<gidx>(n);
  ctx.H = {0, static_cast<gidx>(n)};
  ctx.Hc = {0, static_cast<gidx>(n), static_cast<gidx>(h), static_cast<gidx>(h + n)};
  for (unsigned j = 0; j < n; ++j) ctx.coset_reps.push_back(static_cast<gidx>(j));
  for (unsigned a = 0; a < n; ++a) ctx.sigma_cyc.push_back(static_cast<gidx>(a));
  for (unsigned a = 0; a < n; ++a) ctx.sigma_rho.push_back(static_cast<gidx>(a));
  for (unsigned a = 0; a < n; ++a) ctx.sigma_rho.push_back(static_cast<gidx>(h + a));
  ctx.rep_idx.resize(N);
  ctx.rho_bit.resize(N);
  for (unsigned g = 0; g < N; ++g) {
    ctx.rep_idx[g] = static_cast<gidx>(g % n);
    ctx.rho_bit[g] = static_cast<std::uint8_t>(g / h);
  }
  ctx.rot_pow.resize(N);
  ctx.refl_bit.resize(N);
  for (unsigned g = 0; g < N; ++g) {
    ctx.rot_pow[g] = g % n;
    ctx.refl_bit[g] = static_cast<std::uint8_t>((g / n) % 2);
  }
  return ctx;
}

namespace detail {

using Perm = std::vector<unsigned>;

inline std::string cycle_label(const Perm& p) {
  unsigned k = static_cast<unsigned>(p.size());
  std::vector<bool> seen(k, false);
  std::ostringstream out;
  bool any = false;
  for (unsigned s = 0; s < k; ++s) {
    if (seen[s] || p[s] == s) continue;
    out << "(";
    unsigned x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      out << (first ? "" : " ") << (x + 1);
      first = false;
      x = p[x];
    }
    out << ")";
    any = true;
  }
  return any ? out.str() : "1";
}

}  // namespace detail

// Generic context: G = the permutation group generated by `gens` acting
// transitively on 0..points-1, H = the stabilizer of point 0, coset
// representative sigma_j = first element found mapping 0 to j (breadth-first
// over the generators in input order), and rho adjoined as a direct factor.
inline CMGroupContext build_generic_cm(unsigned points,
                                       const std::vector<std::vector<unsigned>>& gens) {
  if (points < 2) throw std::invalid_argument("build_generic_cm: need >= 2 points");
  for (const auto& g : gens) {
    if (g.size() != points) throw std::invalid_argument("build_generic_cm: bad generator size");
    std::vector<bool> hit(points, false);
    for (unsigned v : g) {
      if (v >= points || hit[v]) throw std::invalid_argument("build_generic_cm: not a permutation");
      hit[v] = true;
    }
  }
  detail::Perm id(points);
  std::iota(id.begin(), id.end(), 0u);
  std::vector<detail::Perm> elems{id};
  std::map<detail::Perm, gidx> index{{id, 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      // Right multiplication: (p * g)(x) = p(g(x)).
      detail::Perm q(points);
      for (unsigned x = 0; x < points; ++x) q[x] = elems[head][g[x]];
      if (index.emplace(q, static_cast<gidx>(elems.size())).second) elems.push_back(q);
    }
  }
  unsigned h = static_cast<unsigned>(elems.size());
  if (h > 16000) throw std::invalid_argument("build_generic_cm: group too large");
  std::vector<gidx> first_to(points, static_cast<gidx>(h));
  for (unsigned i = 0; i < h; ++i) {
    unsigned img = elems[i][0];
    if (first_to[img] == h) first_to[img] = static_cast<gidx>(i);
  }
  for (unsigned j = 0; j < points; ++j)
    if (first_to[j] == h)
      throw std::invalid_argument("build_generic_cm: generators not transitive");

  unsigned N = 2 * h;
  std::vector<gidx> cayley(static_cast<size_t>(N) * N);
  std::vector<std::string> labels(N);
  std::vector<gidx> base(static_cast<size_t>(h) * h);
  for (unsigned x = 0; x < h; ++x) {
    for (unsigned y = 0; y < h; ++y) {
      detail::Perm q(points);
      for (unsigned v = 0; v < points; ++v) q[v] = elems[x][elems[y][v]];
      base[x * h + y] = index.at(q);
    }
  }
  for (unsigned x = 0; x < N; ++x) {
    unsigned gx = x % h, cx = x / h;
    labels[x] = detail::cycle_label(elems[gx]);
    if (cx) labels[x] = (gx == 0) ? "r" : labels[x] + "*r";
    for (unsigned y = 0; y < N; ++y) {
      unsigned gy = y % h, cy = y / h;
      cayley[x * N + y] = static_cast<gidx>(base[gx * h + gy] + ((cx ^ cy) ? h : 0));
    }
  }
  std::vector<gidx> half_cayley = base;
  std::vector<std::string> half_labels(labels.begin(), labels.begin() + h);

  CMGroupContext ctx{FiniteGroup(std::move(cayley), std::move(labels)),
                     FiniteGroup(std::move(half_cayley), std::move(half_labels))};
  ctx.n = points;
  ctx.rho = static_cast<gidx>(h);
  ctx.dihedral = false;
  for (unsigned i = 0; i < h; ++i)
    if (elems[i][0] == 0) ctx.H.push_back(static_cast<gidx>(i));
  ctx.Hc = ctx.H;
  for (gidx x : ctx.H) ctx.Hc.push_back(static_cast<gidx>(x + h));
  for (unsigned j = 0; j < points; ++j) ctx.coset_reps.push_back(first_to[j]);
  ctx.rep_idx.resize(N);
  ctx.rho_bit.resize(N);
  for (unsigned g = 0; g < N; ++g) {
    ctx.rep_idx[g] = static_cast<gidx>(elems[g % h][0]);
    ctx.rho_bit[g] = static_cast<std::uint8_t>(g / h);
  }
  return ctx;
}

// Closure of a generating set inside an ambient group, elements listed in
// increasing index order.
inline std::vector<gidx> subgroup_closure(const FiniteGroup& grp, const std::vector<gidx>& gens) {
  std::set<gidx> have{0};
  std::vector<gidx> queue{0};
  for (size_t head = 0; head < queue.size(); ++head) {
    for (gidx g : gens) {
      gidx p = grp.mul(queue[head], g);
      if (have.insert(p).second) queue.push_back(p);
    }
  }
  return {have.begin(), have.end()};
}

}  // namespace dcm
