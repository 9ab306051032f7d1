#include "qsym/fflab.hpp"

#include <map>
#include <set>
#include <thread>

#include "qsym/error.hpp"

namespace qsym {

namespace {

void require_finite(const Field& f) {
  if (f.is_rational()) throw DomainError("finite-field enumeration needs GF(p) or GF(p,2)");
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > UINT64_MAX / b) throw ResourceError("projective space too large to enumerate");
    r *= b;
  }
  return r;
}

PencilMatrix reduce_pencil(const PencilMatrix& m, const Field& f) {
  if (m.field() == f) return m;
  if (m.field().is_rational()) return m.to_field(f);
  if (f.kind() == FieldKind::PrimeSquare && m.field() == f.base()) return m.to_field(f);
  throw FieldMismatch("pencil over " + m.field().to_string() + " cannot be read over " + f.to_string());
}

}  // namespace

std::uint64_t projective_point_count(std::uint64_t q, std::size_t nvars) {
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < nvars; ++k) s += ipow(q, k);
  return s;
}

Scalar field_element(const Field& f, std::uint64_t i) {
  require_finite(f);
  std::uint64_t p = f.characteristic();
  if (f.kind() == FieldKind::Prime) return Scalar::from_residues(f, i);
  return Scalar::from_residues(f, i % p, i / p);
}

Vec projective_point(const Field& f, std::size_t nvars, std::uint64_t index) {
  require_finite(f);
  std::uint64_t q = f.size();
  Vec v(nvars, Scalar::zero(f));
  for (std::size_t lead = 0; lead < nvars; ++lead) {
    std::uint64_t block = ipow(q, nvars - 1 - lead);
    if (index < block) {
      v[lead] = Scalar::one(f);
      for (std::size_t j = nvars; j-- > lead + 1;) {
        v[j] = field_element(f, index % q);
        index /= q;
      }
      return v;
    }
    index -= block;
  }
  throw DomainError("point index out of range");
}

std::uint64_t CorankCensus::total() const {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

CorankCensus corank_census_range(const PencilMatrix& m, const Field& f, std::uint64_t begin, std::uint64_t end) {
  require_finite(f);
  PencilMatrix r = reduce_pencil(m, f);
  CorankCensus c{f.size(), std::vector<std::uint64_t>(r.size() + 1, 0)};
  for (std::uint64_t i = begin; i < end; ++i) ++c.counts[corank_at(r, projective_point(f, r.nvars(), i))];
  return c;
}

CorankCensus merge(const CorankCensus& a, const CorankCensus& b) {
  if (a.q != b.q || a.counts.size() != b.counts.size()) throw DomainError("merging incompatible censuses");
  CorankCensus c = a;
  for (std::size_t i = 0; i < c.counts.size(); ++i) c.counts[i] += b.counts[i];
  return c;
}

CorankCensus corank_census(const PencilMatrix& m, const Field& f, unsigned threads) {
  require_finite(f);
  PencilMatrix r = reduce_pencil(m, f);
  std::uint64_t n = projective_point_count(f.size(), r.nvars());
  if (threads <= 1) return corank_census_range(r, f, 0, n);
  std::vector<CorankCensus> parts(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    std::uint64_t b = n * t / threads, e = n * (t + 1) / threads;
    pool.emplace_back([&, t, b, e] { parts[t] = corank_census_range(r, f, b, e); });
  }
  for (auto& th : pool) th.join();
  CorankCensus c = parts[0];
  for (unsigned t = 1; t < threads; ++t) c = merge(c, parts[t]);
  return c;
}

std::vector<Vec> points_with_corank_at_least(const PencilMatrix& m, const Field& f, std::size_t c) {
  require_finite(f);
  PencilMatrix r = reduce_pencil(m, f);
  std::uint64_t n = projective_point_count(f.size(), r.nvars());
  std::vector<Vec> out;
  for (std::uint64_t i = 0; i < n; ++i) {
    Vec p = projective_point(f, r.nvars(), i);
    if (corank_at(r, p) >= c) out.push_back(std::move(p));
  }
  return out;
}

std::vector<Vec> harvest_singular_points(const MultiPoly& f_poly, const Field& f) {
  require_finite(f);
  MultiPoly g = f_poly.field() == f ? f_poly : change_field(f_poly, f);
  std::vector<MultiPoly> eqs{g};
  for (std::size_t i = 0; i < g.nvars(); ++i) eqs.push_back(partial_derivative(g, i));
  std::uint64_t n = projective_point_count(f.size(), g.nvars());
  std::vector<Vec> out;
  for (std::uint64_t i = 0; i < n; ++i) {
    Vec p = projective_point(f, g.nvars(), i);
    bool sing = true;
    for (const auto& e : eqs)
      if (!evaluate(e, p).is_zero()) {
        sing = false;
        break;
      }
    if (sing) out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::pair<Vec, Vec>> collinear_candidates(const std::vector<Vec>& points) {
  std::map<std::string, std::set<std::size_t>> lines;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Matrix span = Matrix::from_rows({points[i], points[j]});
      if (span.rank() < 2) throw DomainError("collinear_candidates needs distinct points");
      auto& v = lines[span.rref().first.to_string()];
      v.insert(i);
      v.insert(j);
    }
  std::vector<std::pair<Vec, Vec>> out;
  for (const auto& [key, idx] : lines)
    if (idx.size() >= 3) out.emplace_back(points[*idx.begin()], points[*std::next(idx.begin())]);
  return out;
}

std::vector<std::array<Vec, 5>> coplanar_conic_candidates(const std::vector<Vec>& points, std::size_t limit) {
  std::vector<std::array<Vec, 5>> out;
  std::size_t n = points.size();
  auto rank_of = [&](std::initializer_list<std::size_t> idx) {
    std::vector<Vec> rows;
    for (auto i : idx) rows.push_back(points[i]);
    return Matrix::from_rows(rows).rank();
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        if (rank_of({a, b, c}) < 3) continue;
        for (std::size_t d = c + 1; d < n; ++d) {
          if (rank_of({a, b, c, d}) > 3) continue;
          if (rank_of({a, b, d}) < 3 || rank_of({a, c, d}) < 3 || rank_of({b, c, d}) < 3) continue;
          for (std::size_t e = d + 1; e < n; ++e) {
            if (rank_of({a, b, c, e}) > 3) continue;
            bool general = true;
            for (auto [u, v] : {std::pair{a, b}, {a, c}, {a, d}, {b, c}, {b, d}, {c, d}})
              if (rank_of({u, v, e}) < 3) general = false;
            if (!general) continue;
            out.push_back({points[a], points[b], points[c], points[d], points[e]});
            if (out.size() >= limit) return out;
          }
        }
      }
  return out;
}

}  // namespace qsym
