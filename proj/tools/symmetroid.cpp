#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "qsym/error.hpp"
#include "qsym/fflab.hpp"
#include "qsym/groebner.hpp"
#include "qsym/report.hpp"

namespace {

using namespace qsym;
using nlohmann::json;

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kResource = 3 };

struct Global {
  std::string format = "text";
  std::uint32_t prime = 0;
  std::uint64_t budget = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Field field_arg(std::string s) {
  if (s.size() > 2 && s.compare(0, 2, "GF") == 0 && s[2] != '(') s = "GF(" + s.substr(2) + ")";
  return Field::parse(s);
}

Field census_field(std::uint64_t q) {
  if (q < 2 || q >= (1ull << 31)) throw DomainError("field size out of range");
  if (is_prime_u32(static_cast<std::uint32_t>(q))) return Field::prime(static_cast<std::uint32_t>(q));
  for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= q; ++p)
    if (static_cast<std::uint64_t>(p) * p == q && is_prime_u32(p)) return Field::prime_square(p);
  throw DomainError("q = " + std::to_string(q) + " is neither a prime nor a prime square");
}

PencilMatrix load(const Global& g, const std::string& path, std::string* digest) {
  std::string text = read_file(path);
  if (digest) *digest = sha256_hex(text);
  PencilMatrix m = parse_pencil(text);
  if (g.prime) m = m.to_field(Field::prime(g.prime));
  return m;
}

void emit(const Global& g, const json& j, const std::string& text) {
  if (g.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string dd_text(const DimDegree& d) {
  return "dim " + std::to_string(d.dim) + ", degree " + std::to_string(d.degree);
}

int cmd_analyze(const Global& g, const std::string& path) {
  std::string digest;
  PencilMatrix m = load(g, path, &digest);
  MultiPoly f = determinant(m);
  json j{{"version", 1}, {"command", "analyze"}, {"input_digest", digest}, {"field", m.field().to_string()},
         {"size", m.size()}, {"determinant", f.to_string()}};
  std::ostringstream os;
  os << "field " << m.field().to_string() << ", size " << m.size() << "\n";
  os << "det = " << f.to_string() << "\n";
  json loci = json::array();
  for (std::size_t k = 1; k < m.size(); ++k) {
    DimDegree d = hilbert_dim_degree(saturate_irrelevant(rank_locus_ideal(m, k)));
    loci.push_back({{"rank_at_most", k}, {"dim", d.dim}, {"degree", d.degree}});
    os << "rank-" << k << " locus: " << dd_text(d) << "\n";
  }
  j["rank_loci"] = loci;
  if (!f.is_zero() && !f.is_constant()) {
    DimDegree s = hilbert_dim_degree(saturate_irrelevant(jacobian_ideal(f)));
    j["singular"] = {{"dim", s.dim}, {"degree", s.degree}};
    os << "singular scheme: " << dd_text(s) << "\n";
  }
  DimDegree w = hilbert_dim_degree(saturate_irrelevant(web_base_locus_ideal(m)));
  j["web_base"] = {{"dim", w.dim}, {"degree", w.degree}};
  os << "web base locus: " << dd_text(w) << "\n";
  emit(g, j, os.str());
  return kOk;
}

std::string evidence_text(const Classification& c) {
  const Evidence& e = c.evidence;
  std::ostringstream os;
  os << "family: " << to_string(c.label) << "\n";
  if (!e.reason.empty()) os << "reason: " << e.reason << "\n";
  os << "irreducible: " << (e.irreducible ? "yes" : "no") << "\n";
  os << "singular scheme: " << dd_text(e.singular) << "\n";
  for (const auto& s : e.curves) {
    os << "singular " << to_string(s.kind) << ":";
    for (const auto& q : s.equations) os << " " << q.to_string() << ";";
    os << " generic corank " << s.generic_corank << "\n";
  }
  for (std::size_t i = 0; i < e.line_rank_data.size(); ++i) {
    const auto& l = e.line_rank_data[i];
    if (e.curves[i].kind != CurveKind::Line || e.curves[i].generic_corank != 1) continue;
    os << "  rank-2 subscheme on the line: length " << l.rank2_length << "; off curve meetings: "
       << l.rank2_points_off_special << " points, length " << l.rank2_length_off_special
       << "; surface rank-2 length there " << l.surface_rank2_length_off_special << "\n";
  }
  for (const auto& p : e.curve_points)
    os << "curve point " << vec_to_string(p.point) << ": " << to_string(p.label) << ", multiplicity "
       << p.multiplicity << (p.corank ? ", corank " + std::to_string(*p.corank) : std::string()) << "\n";
  for (const auto& p : e.isolated_points)
    if (p.label != PointLabel::Node)
      os << "special point " << vec_to_string(p.point) << ": " << to_string(p.label) << ", multiplicity "
         << p.multiplicity << (p.corank ? ", corank " + std::to_string(*p.corank) : std::string()) << "\n";
  os << "isolated singular length: " << e.isolated_length << "\n";
  os << "isolated nodes: " << e.isolated_nodes << " (" << e.isolated_node_points << " points, "
     << (e.nodes_reduced ? "reduced" : "not reduced") << ")\n";
  os << "isolated corank-2 nodes: " << e.rank2_isolated << "\n";
  os << "rank-2 locus off corank-2 curves: length " << e.rank2_residual_length << ", " << e.rank2_residual_points
     << " points\n";
  return os.str();
}

int cmd_classify(const Global& g, const std::string& path, std::optional<std::size_t> size, std::uint64_t seed) {
  std::string digest;
  PencilMatrix m = load(g, path, &digest);
  std::size_t want = size.value_or(4);
  if (m.size() != want || (!size && m.nvars() != 4)) {
    std::cerr << "error: not a quartic symmetroid of size 4 (matrix size " << m.size() << ", " << m.nvars()
              << " variables)\n";
    return kUsage;
  }
  ClassifyOptions opts;
  opts.seed = seed;
  Classification c = classify_family(m, opts);
  json j{{"version", 1}, {"command", "classify"}, {"input_digest", digest}, {"field", m.field().to_string()},
         {"evidence", evidence_json(c)}};
  emit(g, j, evidence_text(c));
  return kOk;
}

int cmd_construct(const Global& g, const std::string& family, std::uint64_t seed, const std::string& field,
                  long height) {
  auto label = parse_family_label(family);
  if (!label) throw DomainError("unknown family '" + family + "'");
  Field f = g.prime ? Field::prime(g.prime) : field_arg(field);
  GeneratedMember gm = gen_family(*label, seed, f, height);
  std::string text = format_pencil(gm.matrix);
  json j{{"version", 1},
         {"command", "construct"},
         {"input_digest", sha256_hex(family + ":" + std::to_string(seed) + ":" + f.to_string() + ":" +
                                     std::to_string(height))},
         {"family", to_string(*label)},
         {"seed", seed},
         {"used_seed", gm.used_seed},
         {"retries", gm.retries},
         {"field", f.to_string()},
         {"pencil", text},
         {"evidence", evidence_json(gm.classification)}};
  std::ostringstream os;
  os << "# " << to_string(*label) << " seed " << seed << " (draw seed " << gm.used_seed << ", " << gm.retries
     << " retries)\n"
     << text;
  emit(g, j, os.str());
  return kOk;
}

int cmd_census(const Global& g, const std::string& path, std::uint64_t q) {
  std::string digest;
  PencilMatrix m = load(g, path, &digest);
  if (m.field().is_finite() && g.prime == 0 && m.field().size() != q)
    throw DomainError("pencil is over " + m.field().to_string() + ", not a field of size " + std::to_string(q));
  Field f = census_field(q);
  if (m.field().is_rational()) m = m.to_field(f.base());
  if (f.kind() == FieldKind::PrimeSquare) m = m.to_field(f);
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto t0 = std::chrono::steady_clock::now();
  CorankCensus c = corank_census(m, f, threads);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json counts = json::object();
  std::ostringstream os;
  os << "census over " << f.to_string() << ": " << c.total() << " points\n";
  for (std::size_t k = 0; k < c.counts.size(); ++k) {
    counts[std::to_string(k)] = c.counts[k];
    os << "  corank " << k << ": " << c.counts[k] << "\n";
  }
  json j{{"version", 1}, {"command", "census"}, {"input_digest", digest}, {"field", f.to_string()},
         {"total", c.total()}, {"coranks", counts}, {"timings", {{"census", secs}}}};
  emit(g, j, os.str());
  return kOk;
}

int cmd_verify(const Global& g, const std::optional<std::string>& only) {
  Report r = verify_paper(only);
  if (g.format == "json")
    std::cout << to_json(r).dump(2) << "\n";
  else
    std::cout << to_text(r);
  return r.all_passed() ? kOk : kMismatch;
}

int cmd_dim(const Global& g, const std::vector<long>& gr, const std::vector<long>& sc) {
  long v;
  std::string what;
  if (gr.size() == 2) {
    v = grassmannian_dim(gr[0], gr[1]);
    what = "grassmannian " + std::to_string(gr[0]) + " " + std::to_string(gr[1]);
  } else if (sc.size() == 4) {
    v = schubert_dim(sc[0], sc[1], sc[2], sc[3]);
    what = "schubert " + std::to_string(sc[0]) + " " + std::to_string(sc[1]) + " " + std::to_string(sc[2]) + " " +
           std::to_string(sc[3]);
  } else {
    throw CLI::ValidationError("dim", "give --grassmannian k n or --schubert l m k n");
  }
  emit(g, json{{"version", 1}, {"command", "dim"}, {"query", what}, {"value", v}}, std::to_string(v) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quartic symmetroid toolkit"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--prime", g.prime, "reduce input modulo this prime")->check([](const std::string& s) {
    unsigned long long v = std::stoull(s);
    return v < (1ull << 31) && is_prime_u32(static_cast<std::uint32_t>(v)) ? std::string() : "not a prime below 2^31";
  });
  app.add_option("--budget", g.budget, "Groebner work budget in units");

  std::string file, family, field = "Q";
  std::uint64_t seed = 1, q = 0;
  long height = 10;
  std::optional<std::size_t> size;
  std::optional<std::string> only;
  std::vector<long> gr, sc;

  auto* analyze = app.add_subcommand("analyze", "rank loci, singular scheme and base locus of a pencil file");
  analyze->add_option("file", file)->required();
  auto* classify = app.add_subcommand("classify", "classify a quartic symmetroid");
  classify->add_option("file", file)->required();
  classify->add_option("--size", size, "accept this matrix size");
  classify->add_option("--seed", seed);
  auto* construct = app.add_subcommand("construct", "seeded member of a family");
  construct->add_option("--family", family)->required();
  construct->add_option("--seed", seed)->required();
  construct->add_option("--field", field);
  construct->add_option("--height", height)->check(CLI::PositiveNumber);
  auto* census = app.add_subcommand("census", "corank census over a finite field");
  census->add_option("file", file)->required();
  census->add_option("--q", q)->required();
  auto* verify = app.add_subcommand("verify-paper", "run the verification battery");
  verify->add_option("--only", only, "one catalog id or battery");
  auto* dim = app.add_subcommand("dim", "closed-form dimension counts");
  dim->add_option("--grassmannian", gr)->expected(2);
  dim->add_option("--schubert", sc)->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    std::optional<BudgetScope> scope;
    if (g.budget) scope.emplace(g.budget);
    if (*analyze) return cmd_analyze(g, file);
    if (*classify) return cmd_classify(g, file, size, seed);
    if (*construct) return cmd_construct(g, family, seed, field, height);
    if (*census) return cmd_census(g, file, q);
    if (*verify) return cmd_verify(g, only);
    if (*dim) return cmd_dim(g, gr, sc);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource budget exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const GenericityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
