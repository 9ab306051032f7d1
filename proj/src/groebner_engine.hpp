#pragma once

// Buchberger engine over packed monomials. Coefficient policies: ModP
// (machine residues), ZZ (fraction-free, primitive integer polynomials) and
// QQ (rationals, used for normal forms against a monic basis).

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "qsym/error.hpp"
#include "qsym/groebner.hpp"
#include "qsym/poly.hpp"

namespace qsym::detail {

inline constexpr unsigned kEngineMaxDegree = 255;

struct Budget {
  std::uint64_t limit;
  std::uint64_t used;
};
Budget& thread_budget();

inline void charge(std::uint64_t units) {
  Budget& b = thread_budget();
  b.used += units;
  if (b.used > b.limit)
    throw ResourceError("Groebner work budget of " + std::to_string(b.limit) +
                        " units exceeded; raise it with --budget");
}

using Words = std::array<std::uint64_t, 3>;

struct OrderSpec {
  OrderKind kind = OrderKind::DegRevLex;
  unsigned n = 0;
  unsigned k = 0;
  Words cmask{};  // bytes compared in complement
  // key byte position -> variable index, or -1 for a degree byte (hi) / -2 (lo)
  std::array<int, 24> layout{};
  std::array<int, 2> deg_pos{-1, -1};  // positions of the degree fields (hi byte)

  static OrderSpec make(const MonomialOrder& o, std::size_t nvars) {
    OrderSpec s;
    s.kind = o.kind;
    s.n = static_cast<unsigned>(nvars);
    s.k = static_cast<unsigned>(std::min(o.block, nvars));
    s.layout.fill(-3);
    int pos = 0;
    auto put_deg = [&](int idx) {
      s.deg_pos[idx] = pos;
      s.layout[pos++] = -1;
      s.layout[pos++] = -2;
    };
    auto put_var = [&](unsigned v, bool comp) {
      if (comp) {
        int w = pos / 8, sh = 8 * (7 - pos % 8);
        s.cmask[w] |= std::uint64_t(0xff) << sh;
      }
      s.layout[pos++] = static_cast<int>(v);
    };
    switch (o.kind) {
      case OrderKind::DegRevLex:
        put_deg(0);
        for (unsigned i = s.n; i-- > 0;) put_var(i, true);
        break;
      case OrderKind::Lex:
        for (unsigned i = 0; i < s.n; ++i) put_var(i, false);
        break;
      case OrderKind::Block:
        put_deg(0);
        for (unsigned i = s.k; i-- > 0;) put_var(i, true);
        put_deg(1);
        for (unsigned i = s.n; i-- > s.k;) put_var(i, true);
        break;
    }
    return s;
  }
};

struct EMono {
  std::array<std::uint64_t, 2> e{};  // byte i = exponent of variable i
  Words key{};                       // raw key; compare after xor with cmask
  std::uint32_t mask = 0;            // bit i set iff variable i occurs
  std::uint16_t deg = 0;
};

inline unsigned byte_of(const std::array<std::uint64_t, 2>& e, unsigned i) {
  return static_cast<unsigned>((e[i / 8] >> (8 * (i % 8))) & 0xff);
}

inline EMono make_mono(const Monomial& m, const OrderSpec& o) {
  EMono r;
  for (unsigned i = 0; i < o.n; ++i) {
    std::uint64_t v = m[i];
    r.e[i / 8] |= v << (8 * (i % 8));
    if (v) r.mask |= 1u << i;
  }
  r.deg = static_cast<std::uint16_t>(m.degree());
  if (r.deg > kEngineMaxDegree)
    throw DomainError("monomial degree above " + std::to_string(kEngineMaxDegree) + " in Groebner engine");
  for (int pos = 0; pos < 24; ++pos) {
    int l = o.layout[pos];
    std::uint64_t v = 0;
    if (l >= 0) {
      v = m[static_cast<std::size_t>(l)];
    } else if (l == -1 || l == -2) {
      unsigned d = 0;
      bool first = pos == o.deg_pos[0] || pos == o.deg_pos[0] + 1;
      for (unsigned i = 0; i < o.n; ++i) {
        bool in_first = o.kind != OrderKind::Block || i < o.k;
        if (in_first == first) d += m[i];
      }
      v = l == -1 ? (d >> 8) : (d & 0xff);
    } else {
      continue;
    }
    r.key[pos / 8] |= v << (8 * (7 - pos % 8));
  }
  return r;
}

inline Monomial to_monomial(const EMono& m, unsigned n) {
  Monomial r;
  for (unsigned i = 0; i < n; ++i) {
    unsigned v = byte_of(m.e, i);
    if (v) r.set(i, v);
  }
  return r;
}

inline int cmp(const EMono& a, const EMono& b, const Words& cm) {
  for (int w = 0; w < 3; ++w) {
    std::uint64_t x = a.key[w] ^ cm[w], y = b.key[w] ^ cm[w];
    if (x != y) return x > y ? 1 : -1;
  }
  return 0;
}

inline bool same_mono(const EMono& a, const EMono& b) { return a.e == b.e; }

inline EMono mul(const EMono& a, const EMono& b) {
  EMono r;
  r.deg = static_cast<std::uint16_t>(a.deg + b.deg);
  if (r.deg > kEngineMaxDegree)
    throw DomainError("monomial degree above " + std::to_string(kEngineMaxDegree) + " in Groebner engine");
  r.e[0] = a.e[0] + b.e[0];
  r.e[1] = a.e[1] + b.e[1];
  r.key[0] = a.key[0] + b.key[0];
  r.key[1] = a.key[1] + b.key[1];
  r.key[2] = a.key[2] + b.key[2];
  r.mask = a.mask | b.mask;
  return r;
}

inline bool divides(const EMono& a, const EMono& b) {
  if ((a.mask & ~b.mask) != 0 || a.deg > b.deg) return false;
  constexpr std::uint64_t H = 0x8080808080808080ull;
  if (((a.e[0] | a.e[1] | b.e[0] | b.e[1]) & H) == 0)
    return (((b.e[0] | H) - a.e[0]) & H) == H && (((b.e[1] | H) - a.e[1]) & H) == H;
  for (unsigned i = 0; i < 16; ++i)
    if (byte_of(a.e, i) > byte_of(b.e, i)) return false;
  return true;
}

// b / a, precondition a | b.
inline EMono quot(const EMono& b, const EMono& a, unsigned n) {
  EMono r;
  r.e[0] = b.e[0] - a.e[0];
  r.e[1] = b.e[1] - a.e[1];
  r.key[0] = b.key[0] - a.key[0];
  r.key[1] = b.key[1] - a.key[1];
  r.key[2] = b.key[2] - a.key[2];
  r.deg = static_cast<std::uint16_t>(b.deg - a.deg);
  for (unsigned i = 0; i < n; ++i)
    if (byte_of(r.e, i)) r.mask |= 1u << i;
  return r;
}

inline EMono lcm(const EMono& a, const EMono& b, const OrderSpec& o) {
  Monomial m;
  for (unsigned i = 0; i < o.n; ++i) {
    unsigned v = std::max(byte_of(a.e, i), byte_of(b.e, i));
    if (v) m.set(i, v);
  }
  return make_mono(m, o);
}

// ---------------------------------------------------------------------------
// Coefficient policies

struct ModP {
  using C = std::uint32_t;
  static constexpr bool is_field = true;
  std::uint32_t p;
  bool zero(C a) const { return a == 0; }
  bool one(C a) const { return a == 1; }
  C add(C a, C b) const { return static_cast<C>((std::uint64_t(a) + b) % p); }
  C sub(C a, C b) const { return static_cast<C>((std::uint64_t(a) + p - b) % p); }
  C mul(C a, C b) const { return static_cast<C>(std::uint64_t(a) * b % p); }
  C neg(C a) const { return a ? p - a : 0; }
  C inv(C a) const {
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<C>(r);
  }
  C div(C a, C b) const { return mul(a, inv(b)); }
  C unit() const { return 1; }
  std::uint64_t cost(const C&) const { return 1; }
};

struct QQ {
  using C = mpq_class;
  static constexpr bool is_field = true;
  bool zero(const C& a) const { return sgn(a) == 0; }
  bool one(const C& a) const { return a == 1; }
  C add(const C& a, const C& b) const { return a + b; }
  C sub(const C& a, const C& b) const { return a - b; }
  C mul(const C& a, const C& b) const { return a * b; }
  C neg(const C& a) const { return -a; }
  C inv(const C& a) const { return 1 / a; }
  C div(const C& a, const C& b) const { return a / b; }
  C unit() const { return 1; }
  std::uint64_t cost(const C& a) const {
    return 1 + mpz_size(a.get_num_mpz_t()) + mpz_size(a.get_den_mpz_t());
  }
};

struct ZZ {
  using C = mpz_class;
  static constexpr bool is_field = false;
  bool zero(const C& a) const { return sgn(a) == 0; }
  bool one(const C& a) const { return a == 1; }
  C add(const C& a, const C& b) const { return a + b; }
  C sub(const C& a, const C& b) const { return a - b; }
  C mul(const C& a, const C& b) const { return a * b; }
  C neg(const C& a) const { return -a; }
  C unit() const { return 1; }
  std::uint64_t cost(const C& a) const { return 1 + mpz_size(a.get_mpz_t()); }
};

template <class C>
struct ETerm {
  EMono m;
  C c;
};
template <class C>
using EPoly = std::vector<ETerm<C>>;

template <class P>
class Engine {
 public:
  using C = typename P::C;
  using Poly = EPoly<C>;

  struct Elem {
    Poly f;
    unsigned sugar = 0;
    bool active = true;
    const EMono& lm() const { return f.front().m; }
  };

  Engine(P pol, OrderSpec ord) : pol_(std::move(pol)), o_(ord) {}

  const OrderSpec& order() const { return o_; }
  const P& policy() const { return pol_; }

  void sort_poly(Poly& f) const {
    std::sort(f.begin(), f.end(), [&](const ETerm<C>& a, const ETerm<C>& b) { return cmp(a.m, b.m, o_.cmask) > 0; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < f.size();) {
      ETerm<C> acc = std::move(f[r]);
      std::size_t s = r + 1;
      while (s < f.size() && same_mono(f[s].m, acc.m)) acc.c = pol_.add(acc.c, f[s++].c);
      r = s;
      if (!pol_.zero(acc.c)) f[w++] = std::move(acc);
    }
    f.resize(w);
  }

  // alpha * A[ai..] + beta * m * B[bi..]
  Poly combine(const Poly& A, std::size_t ai, const C& alpha, bool alpha_one, const Poly& B, std::size_t bi,
               const EMono& m, const C& beta) const {
    Poly out;
    out.reserve(A.size() - ai + B.size() - bi);
    std::uint64_t cost = 0;
    std::size_t i = ai, j = bi;
    bool have_b = j < B.size();
    EMono mb;
    if (have_b) mb = mul(B[j].m, m);
    while (i < A.size() || have_b) {
      int c = i == A.size() ? -1 : !have_b ? 1 : cmp(A[i].m, mb, o_.cmask);
      if (c > 0) {
        out.push_back({A[i].m, alpha_one ? A[i].c : pol_.mul(alpha, A[i].c)});
        cost += pol_.cost(A[i].c);
        ++i;
      } else {
        C v = pol_.mul(beta, B[j].c);
        cost += pol_.cost(B[j].c);
        if (c == 0) {
          v = pol_.add(alpha_one ? A[i].c : pol_.mul(alpha, A[i].c), v);
          cost += pol_.cost(A[i].c);
          ++i;
        }
        if (!pol_.zero(v)) out.push_back({mb, std::move(v)});
        ++j;
        have_b = j < B.size();
        if (have_b) mb = mul(B[j].m, m);
      }
    }
    charge(cost);
    return out;
  }

  void make_unit_lead(Poly& f) const {
    if (f.empty()) return;
    if constexpr (P::is_field) {
      if (pol_.one(f.front().c)) return;
      C inv = pol_.inv(f.front().c);
      for (auto& t : f) t.c = pol_.mul(inv, t.c);
    } else {
      mpz_class g = 0;
      for (const auto& t : f) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
        if (g == 1) break;
      }
      if (sgn(f.front().c) < 0) g = -g;
      if (g != 1)
        for (auto& t : f) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    }
  }

  const Elem* find_divisor(const EMono& m, const std::vector<const Elem*>& divs) const {
    for (const Elem* e : divs)
      if (divides(e->lm(), m)) return e;
    return nullptr;
  }

  // Full reduction of p by divisors; result up to a nonzero scalar in ZZ.
  Poly reduce(Poly p, const std::vector<const Elem*>& divs) const {
    Poly r;
    std::size_t ps = 0;
    unsigned steps = 0;
    while (ps < p.size()) {
      const Elem* g = find_divisor(p[ps].m, divs);
      if (!g) {
        r.push_back(std::move(p[ps]));
        ++ps;
        continue;
      }
      EMono q = quot(p[ps].m, g->lm(), o_.n);
      if constexpr (P::is_field) {
        C beta = pol_.neg(pol_.div(p[ps].c, g->f.front().c));
        p = combine(p, ps + 1, pol_.unit(), true, g->f, 1, q, beta);
      } else {
        mpz_class d;
        mpz_gcd(d.get_mpz_t(), p[ps].c.get_mpz_t(), g->f.front().c.get_mpz_t());
        mpz_class a, b;
        mpz_divexact(a.get_mpz_t(), g->f.front().c.get_mpz_t(), d.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), p[ps].c.get_mpz_t(), d.get_mpz_t());
        if (sgn(a) < 0) {
          a = -a;
          b = -b;
        }
        bool a_one = a == 1;
        p = combine(p, ps + 1, a, a_one, g->f, 1, q, -b);
        if (!a_one)
          for (auto& t : r) t.c *= a;
        if (++steps % 6 == 0) remove_content(r, p);
      }
      ps = 0;
    }
    if constexpr (!P::is_field) remove_content(r, p);
    return r;
  }

  void remove_content(Poly& r, Poly& p) const {
    mpz_class g = 0;
    for (const auto& t : r) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) return;
    }
    for (const auto& t : p) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
      if (g == 1) return;
    }
    if (g == 0 || g == 1) return;
    for (auto& t : r) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
    for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  }

  Poly spoly(const Elem& a, const Elem& b, const EMono& l) const {
    EMono qa = quot(l, a.lm(), o_.n), qb = quot(l, b.lm(), o_.n);
    // qa*a - (ca/cb) qb*b, fraction free for ZZ
    if constexpr (P::is_field) {
      C beta = pol_.neg(pol_.div(a.f.front().c, b.f.front().c));
      Poly sa;
      sa.reserve(a.f.size());
      for (std::size_t i = 1; i < a.f.size(); ++i) sa.push_back({mul(a.f[i].m, qa), a.f[i].c});
      return combine(sa, 0, pol_.unit(), true, b.f, 1, qb, beta);
    } else {
      mpz_class d;
      mpz_gcd(d.get_mpz_t(), a.f.front().c.get_mpz_t(), b.f.front().c.get_mpz_t());
      mpz_class x = b.f.front().c / d, y = a.f.front().c / d;
      Poly sa;
      sa.reserve(a.f.size());
      for (std::size_t i = 1; i < a.f.size(); ++i) sa.push_back({mul(a.f[i].m, qa), a.f[i].c});
      return combine(sa, 0, x, x == 1, b.f, 1, qb, -y);
    }
  }

  struct Pair {
    std::uint32_t i, j;
    EMono l;
    unsigned sugar;
  };

  // Reduced Groebner basis of the inputs (sorted by ascending leading monomial).
  std::vector<Poly> groebner(std::vector<Poly> input) {
    G_.clear();
    B_.clear();
    std::vector<std::pair<unsigned, Poly>> pending;
    for (auto& f : input) {
      if (f.empty()) continue;
      unsigned s = 0;
      for (const auto& t : f) s = std::max<unsigned>(s, t.m.deg);
      pending.emplace_back(s, std::move(f));
    }
    std::sort(pending.begin(), pending.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (;;) {
      // choose the lowest sugar among pairs and pending inputs
      std::size_t best = B_.size();
      for (std::size_t t = 0; t < B_.size(); ++t) {
        if (best == B_.size() || B_[t].sugar < B_[best].sugar ||
            (B_[t].sugar == B_[best].sugar && cmp(B_[t].l, B_[best].l, o_.cmask) < 0))
          best = t;
      }
      Poly h;
      unsigned sugar;
      if (!pending.empty() && (best == B_.size() || pending.back().first <= B_[best].sugar)) {
        h = std::move(pending.back().second);
        sugar = pending.back().first;
        pending.pop_back();
      } else if (best < B_.size()) {
        Pair pr = B_[best];
        B_[best] = B_.back();
        B_.pop_back();
        h = spoly(G_[pr.i], G_[pr.j], pr.l);
        sugar = pr.sugar;
      } else {
        break;
      }
      h = reduce(std::move(h), active());
      if (h.empty()) continue;
      make_unit_lead(h);
      if (h.front().m.deg == 0) {
        std::vector<Poly> unit(1);
        unit[0].push_back({h.front().m, pol_.unit()});
        return unit;
      }
      add(std::move(h), sugar);
    }
    return finish();
  }

  std::vector<const Elem*> active() const {
    std::vector<const Elem*> v;
    for (const auto& e : G_)
      if (e.active) v.push_back(&e);
    return v;
  }

 private:
  void add(Poly h, unsigned sugar) {
    std::uint32_t hi = static_cast<std::uint32_t>(G_.size());
    G_.push_back({std::move(h), sugar, true});
    const EMono hl = G_[hi].lm();
    // Gebauer-Moeller update
    std::vector<Pair> C;
    for (std::uint32_t g = 0; g < hi; ++g) {
      if (!G_[g].active) continue;
      EMono l = lcm(G_[g].lm(), hl, o_);
      unsigned s1 = G_[g].sugar + l.deg - G_[g].lm().deg;
      unsigned s2 = sugar + l.deg - hl.deg;
      C.push_back({g, hi, l, std::max(s1, s2)});
    }
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool coprime = (G_[p.i].lm().mask & hl.mask) == 0;
      bool keep = coprime;
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (divides(C[b].l, p.l)) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (divides(D[b].l, p.l)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> nb;
    nb.reserve(B_.size() + D.size());
    for (const Pair& p : B_) {
      if (divides(hl, p.l)) {
        EMono l1 = lcm(G_[p.i].lm(), hl, o_), l2 = lcm(G_[p.j].lm(), hl, o_);
        if (!same_mono(l1, p.l) && !same_mono(l2, p.l)) continue;
      }
      nb.push_back(p);
    }
    for (const Pair& p : D)
      if ((G_[p.i].lm().mask & hl.mask) != 0) nb.push_back(p);
    B_ = std::move(nb);
    for (std::uint32_t g = 0; g < hi; ++g)
      if (G_[g].active && divides(hl, G_[g].lm())) G_[g].active = false;
  }

  std::vector<Poly> finish() {
    std::vector<const Elem*> act = active();
    std::sort(act.begin(), act.end(), [&](const Elem* a, const Elem* b) { return cmp(a->lm(), b->lm(), o_.cmask) < 0; });
    std::vector<Poly> out;
    for (std::size_t i = 0; i < act.size(); ++i) {
      std::vector<const Elem*> others;
      for (std::size_t j = 0; j < act.size(); ++j)
        if (j != i) others.push_back(act[j]);
      Poly r = reduce(act[i]->f, others);
      make_unit_lead(r);
      out.push_back(std::move(r));
    }
    return out;
  }

  P pol_;
  OrderSpec o_;
  std::vector<Elem> G_;
  std::vector<Pair> B_;
};

}  // namespace qsym::detail
