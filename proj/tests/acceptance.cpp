#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "properties.hpp"
#include "qsym/error.hpp"
#include "qsym/report.hpp"

using namespace qsym;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

Outcome from_checks(const std::vector<Check>& checks, const std::function<bool(const std::string&)>& pick) {
  Outcome o;
  int n = 0;
  for (const auto& c : checks) {
    if (!pick(c.tag)) continue;
    ++n;
    if (!c.passed()) {
      o.ok = false;
      o.note += c.tag + " (" + c.details + ") ";
    }
  }
  if (n == 0) {
    o.ok = false;
    o.note = "no checks ran";
  } else if (o.ok) {
    o.note = std::to_string(n) + " checks";
  }
  return o;
}

bool starts(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

// F = F2 x0^2 + F3 x0 + F4 read off term by term.
std::array<MultiPoly, 3> split_x0(const MultiPoly& f) {
  std::array<MultiPoly, 3> out{MultiPoly(f.ring()), MultiPoly(f.ring()), MultiPoly(f.ring())};
  for (const auto& [m, c] : f.terms()) {
    unsigned e = m[0];
    if (e > 2) throw InternalError("x0 degree above 2 at a double point");
    Monomial rest = m;
    rest.set(0, 0);
    out[2 - e] += MultiPoly::monomial(f.ring(), rest, c);
  }
  return out;
}

Outcome ex22_ramification_oracle() {
  CatalogEntry e = paper_catalog("ex-2.2");
  NodeNormalization n = normalize_rank2_node(e.matrix, ints_to_vec(Field::rational(), {1, 0, 0, 0}));
  auto [f2, f3, f4] = split_x0(determinant(n.matrix));
  MultiPoly r = f3 * f3 - f2 * f4 * Scalar::from_int(Field::rational(), 4);
  RamificationSplit s = ramification_split(e.matrix, ints_to_vec(Field::rational(), {1, 0, 0, 0}));
  if (s.ramification != r) return {false, "F3^2 - 4 F2 F4 expanded independently differs"};
  if (s.r1 * s.r2 != r) return {false, "r1 r2 differs from the independent expansion"};
  return {true, "independent expansion agrees"};
}

Outcome ex22_base_oracle() {
  CatalogEntry e = paper_catalog("ex-2.2");
  IdealHandle web = web_base_locus_ideal(e.matrix);
  for (const auto& p : std::vector<std::vector<long>>{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {-1, 1, 1, 0}}) {
    Vec v = ints_to_vec(Field::rational(), p);
    for (const auto& q : web.generators())
      if (!evaluate(q, v).is_zero()) return {false, "a listed base point is off a web quadric"};
  }
  return {true, "listed points lie on every web quadric"};
}

Outcome numerology_over_q() {
  PencilMatrix g = generic_symmetric_pencil(Field::rational(), 4);
  DimDegree r2 = hilbert_dim_degree(rank_locus_ideal(g, 2)), r1 = hilbert_dim_degree(rank_locus_ideal(g, 1));
  bool ok = r2 == DimDegree{6, 10} && r1 == DimDegree{3, 8};
  return {ok, "over Q: (" + std::to_string(r2.dim) + "," + std::to_string(r2.degree) + ") and (" +
                  std::to_string(r1.dim) + "," + std::to_string(r1.degree) + ")"};
}

Outcome both(Outcome a, const Outcome& b) {
  a.ok = a.ok && b.ok;
  a.note += "; " + b.note;
  return a;
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  Report report = verify_paper();
  const auto& ch = report.checks;

  std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria;
  criteria[1] = {"determinant identities", [&] {
                   return from_checks(ch, [](const std::string& t) {
                     return t == "quadrics-through-line.determinant" || t == "quadrics-through-conic.determinant" ||
                            t == "quadrics-through-twisted-cubic.determinant" || t == "steiner.determinant";
                   });
                 }};
  criteria[2] = {"generic rank-locus numerology", [&] {
                   return both(from_checks(ch, [](const std::string& t) { return starts(t, "numerology"); }),
                               numerology_over_q());
                 }};
  criteria[3] = {"ex-2.2 rank-2 locus, base points, singular line of Q1", [&] {
                   return both(from_checks(ch,
                                           [](const std::string& t) {
                                             return t == "ex-2.2.rank2_locus" || t == "ex-2.2.base_points" ||
                                                    t == "ex-2.2.q1_line";
                                           }),
                               ex22_base_oracle());
                 }};
  criteria[4] = {"family generators, 10 seeds each",
                 [&] { return from_checks(ch, [](const std::string& t) { return starts(t, "families."); }); }};
  criteria[5] = {"ramification split and Z at rank-2 nodes", [&] {
                   return both(from_checks(ch,
                                           [](const std::string& t) {
                                             return starts(t, "ex-2.2.ramification") ||
                                                    starts(t, "ramification.generated");
                                           }),
                               ex22_ramification_oracle());
                 }};
  criteria[6] = {"catalog expectations", [&] {
                   static const std::set<std::string> ids{"plucker", "ex-9.1", "ex-conic", "ex-triple",
                                                          "ex-tacnode", "proof-8.3-M", "ex-conic-line", "steiner"};
                   return from_checks(ch, [](const std::string& t) { return ids.count(t.substr(0, t.find('.'))) > 0; });
                 }};
  criteria[7] = {"two representations of one surface",
                 [&] { return from_checks(ch, [](const std::string& t) { return starts(t, "ex-8.5."); }); }};
  criteria[8] = {"dimension formulas", [&] {
                   Outcome o = from_checks(ch, [](const std::string& t) { return starts(t, "dimensions."); });
                   o.note += "; the tuple (2,3,3,7) itself evaluates to " + std::to_string(schubert_dim(2, 3, 3, 7)) +
                             ", the 14 is the (0,2,3,7) count";
                   return o;
                 }};
  criteria[9] = {"finite-field census oracle",
                 [&] { return from_checks(ch, [](const std::string& t) { return starts(t, "census."); }); }};
  criteria[10] = {"property suites, 1000 cases each", [&] {
                    Outcome o;
                    for (const auto& p : testing::all_properties(1000, 20261014)) {
                      o.note += p.name + " " + std::to_string(p.cases - p.failures) + "/" + std::to_string(p.cases);
                      if (!p.ok()) {
                        o.ok = false;
                        o.note += " [first failure: " + p.first_failure + "]";
                      }
                      o.note += "; ";
                    }
                    return o;
                  }};

  bool all = true;
  for (auto& [n, c] : criteria) {
    auto s = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - s).count();
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << c.first << " (" << o.note << ", "
              << secs << " s)" << std::endl;
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "total " << total << " s" << std::endl;
  return all ? 0 : 1;
}
