#include "inclab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "inclab/bounds.hpp"
#include "inclab/containers.hpp"
#include "inclab/io.hpp"
#include "inclab/partition.hpp"
#include "inclab/triangles.hpp"

namespace inclab::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string out_path;
  bool no_meta = false;
  unsigned jobs = 1;
};

// Thrown by a subcommand whose checked property failed; maps to exit 3.
struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Json meta_block() {
  return {{"tool", "inclab"}, {"version", kVersion}, {"generated_at", utc_now()}};
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path);
  if (!f) throw Error(Errc::InvalidInstance, "cannot write " + c.out_path);
  f << text;
}

void emit_json(const Common& c, std::ostream& out, Json report) {
  if (!c.no_meta) report["meta"] = meta_block();
  emit(c, out, report.dump(2) + "\n");
}

std::uint64_t seed_or_env(std::uint64_t seed) {
  if (const char* env = std::getenv("INCLAB_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Error(Errc::InvalidParam, "INCLAB_SEED must be an unsigned integer");
    return v;
  }
  return seed;
}

Rat parse_rat(const std::string& text, const char* flag) {
  try {
    return Rat::parse(text);
  } catch (const std::invalid_argument&) {
    throw Error(Errc::InvalidParam, std::string(flag) + ": not a rational: " + text);
  }
}

std::string fmt(long double v) {
  std::ostringstream os;
  os << std::setprecision(10) << static_cast<double>(v);
  return os.str();
}

// -- gen ---------------------------------------------------------------------

struct GenArgs {
  std::string kind;
  GenSpec spec;
  bool lines = false;
};

void add_gen(CLI::App& app, GenArgs& g) {
  app.add_option("kind", g.kind, "st-grid | inversion-circles | packing | random-circles | "
                                 "random-points | random-lines | random-lattice")
      ->required();
  app.add_option("--a", g.spec.a, "grid parameter a");
  app.add_option("--b", g.spec.b, "grid parameter b");
  app.add_option("--copies", g.spec.copies, "packing copies");
  app.add_option("--m", g.spec.m, "number of points");
  app.add_option("--n", g.spec.n, "number of curves");
  app.add_option("--range", g.spec.range, "coordinate range");
  app.add_option("--den", g.spec.den, "coordinate denominator");
  app.add_option("--seed", g.spec.seed, "random seed");
  app.add_flag("--lines", g.lines, "packing payload of lines instead of circles");
}

GenSpec resolve(GenArgs& g) {
  const auto kind = parse_gen_kind(g.kind);
  if (!kind) throw Error(Errc::InvalidParam, "unknown generator " + g.kind);
  GenSpec s = g.spec;
  s.kind = *kind;
  s.circle_payload = !g.lines;
  s.seed = seed_or_env(s.seed);
  return s;
}

int do_gen(const Common& c, GenArgs& g, std::ostream& out) {
  const GenSpec spec = resolve(g);
  Configuration cfg = generate(spec);
  Instance inst{std::move(cfg.points), std::move(cfg.curves), Json::object()};
  inst.metadata["generator"] = to_json(spec);
  inst.metadata["labels"] = {{"m", inst.points.size()}, {"n", inst.curves.size()}};
  if (!c.no_meta) inst.metadata["meta"] = meta_block();
  if (c.out_path.empty()) {
    out << to_json(inst).dump(1) << '\n';
  } else {
    save_instance(c.out_path, inst);
    out << Json{{"out", c.out_path}, {"m", inst.points.size()}, {"n", inst.curves.size()}}.dump()
        << '\n';
  }
  return kOk;
}

// -- count / rich / q ----------------------------------------------------------

int do_count(const Common& c, const std::string& file, std::ostream& out) {
  const Instance inst = load_instance(file);
  const IncidenceReport r = count_incidences(inst.points, inst.curves, c.jobs);
  Json j{{"instance", file}, {"m", inst.points.size()}, {"n", inst.curves.size()}};
  j.update(to_json(r));
  emit_json(c, out, std::move(j));
  return kOk;
}

int do_rich(const Common& c, const std::string& file, std::uint64_t t, std::ostream& out) {
  const Instance inst = load_instance(file);
  const PointSet rich = rich_points(inst.points, inst.curves, t);
  Json pts = Json::array();
  for (const auto& p : rich) pts.push_back(to_json(p));
  emit_json(c, out, {{"instance", file}, {"t", t}, {"count", rich.size()}, {"points", pts}});
  return kOk;
}

int do_q(const Common& c, const std::string& file, std::ostream& out) {
  const Instance inst = load_instance(file);
  Json j{{"instance", file}, {"n", inst.curves.size()}};
  j.update(to_json(compute_q(inst.curves)));
  emit_json(c, out, std::move(j));
  return kOk;
}

// -- bounds --------------------------------------------------------------------

struct BoundArgs {
  std::vector<std::string> formulas;
  std::uint64_t m = 0, n = 0;
  std::optional<std::uint64_t> q, t;
  std::optional<int> k, s;
  int mu = 1;
  std::string eps = "1/100";
  long double A = 1.0L;
  bool self_test = false;
};

void add_bounds(CLI::App& app, BoundArgs& b) {
  app.add_option("--formula", b.formulas, "formula ids, or 'all'");
  app.add_option("--m", b.m, "points");
  app.add_option("--n", b.n, "curves");
  app.add_option("--q", b.q, "container parameter");
  app.add_option("--t", b.t, "richness");
  app.add_option("--k", b.k, "degrees of freedom");
  app.add_option("--s", b.s, "reduced dimension");
  app.add_option("--mu", b.mu, "multiplicity");
  app.add_option("--eps", b.eps, "epsilon as a rational");
  app.add_option("--A", b.A, "leading constant");
  app.add_flag("--self-test", b.self_test, "print exponent listings for MAIN(k=2) and CIRC3");
}

Json exponent_listing(FormulaId id, const BoundParams& p) {
  Json terms = Json::array();
  for (const auto& t : formula_terms(id, p)) {
    terms.push_back({{"m", t.em.str()}, {"n", t.en.str()}, {"q", t.eq.str()}, {"t", t.et.str()}});
  }
  return {{"formula", std::string(to_string(id))}, {"shape", describe(id, p)}, {"terms", terms}};
}

int do_bounds(const Common& c, const BoundArgs& b, std::ostream& out) {
  BoundParams p;
  p.m = b.m;
  p.n = b.n;
  p.q = b.q;
  p.t = b.t;
  p.k = b.k;
  p.s = b.s;
  p.mu = b.mu;
  p.eps = parse_rat(b.eps, "--eps");
  p.A = b.A;
  if (b.self_test) {
    if (!p.q) p.q = 1;  // exponents do not depend on the value
    BoundParams lines = p, circles = p;
    lines.k = 2;
    circles.k = 3;
    emit_json(c, out, {{"self_test", Json::array({exponent_listing(FormulaId::MAIN, lines),
                                                  exponent_listing(FormulaId::CIRC3, circles)})}});
    return kOk;
  }
  std::vector<FormulaId> ids;
  const bool all = b.formulas.empty() ||
                   std::find(b.formulas.begin(), b.formulas.end(), "all") != b.formulas.end();
  if (all) {
    ids = all_formulas();
  } else {
    for (const auto& f : b.formulas) {
      const auto id = parse_formula(f);
      if (!id) throw Error(Errc::InvalidParam, "unknown formula " + f);
      ids.push_back(*id);
    }
  }
  Json rows = Json::array();
  for (auto id : ids) {
    Json row{{"formula", std::string(to_string(id))}};
    try {
      row["value"] = static_cast<double>(eval_bound(id, p));
      row["shape"] = describe(id, p);
    } catch (const Error& e) {
      if (!all) throw;
      row["skipped"] = e.what();
    }
    rows.push_back(std::move(row));
  }
  emit_json(c, out, {{"bounds", rows}});
  return kOk;
}

// -- partition -----------------------------------------------------------------

struct PartitionArgs {
  std::string file;
  std::optional<int> rounds;
  int max_rounds = 16;
  std::optional<int> k;
  long double c = 1.0L, a = 1.0L, a_prime = 1.0L;
};

int do_partition(const Common& c, const PartitionArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.file);
  BoundParams p;
  p.m = inst.points.size();
  p.n = inst.curves.size();
  p.k = a.k;
  p.c = a.c;
  p.a = a.a;
  p.a_prime = a.a_prime;
  PartitionOptions opt;
  opt.rounds = a.rounds;
  opt.max_rounds = a.max_rounds;
  const auto [rep, trace] = partitioned_count(inst.points, inst.curves, p, opt);
  const IncidenceReport brute = count_incidences(inst.points, inst.curves, c.jobs);
  const std::uint64_t mn = p.m * p.n;
  emit_json(c, out,
            {{"instance", a.file},
             {"m", p.m},
             {"n", p.n},
             {"total", rep.total},
             {"brute_total", brute.total},
             {"exact", rep.total == brute.total},
             {"work_ratio", mn ? static_cast<double>(trace.tests) / static_cast<double>(mn) : 0.0},
             {"trace", to_json(trace, !c.no_meta)}});
  if (rep.total != brute.total) throw InvariantFailure("partitioned total differs from brute force");
  return kOk;
}

// -- triangles -----------------------------------------------------------------

int do_triangles(const Common& c, const std::string& file, const std::string& k1,
                 const std::string& k2, std::ostream& out) {
  const Instance inst = load_instance(file);
  const TriangleShape shape =
      TriangleShape::make(parse_rat(k1, "--k1sq"), parse_rat(k2, "--k2sq"));
  const std::uint64_t s = count_similar(inst.points, shape, c.jobs);
  const std::uint64_t oracle = count_similar_bruteforce(inst.points, shape);
  const std::size_t n = inst.points.size();
  Json j{{"instance", file}, {"n", n}, {"k1sq", shape.k1sq.str()}, {"k2sq", shape.k2sq.str()},
         {"S", s}, {"oracle", oracle}};
  bool q_ok = true;
  if (n >= 2) {
    const LocusSet loci = triangle_circles(inst.points, shape);
    const CurveSet curves = loci.as_curves();
    const QLinearReport ql = verify_q_linear(inst.points, shape);
    q_ok = ql.pass;
    j["circles"] = curves.size();
    j["max_multiplicity"] = loci.max_multiplicity;
    j["incidences"] = count_incidences(inst.points, curves, c.jobs).total;
    j["q"] = ql.q;
    j["bound"] = ql.bound;
    j["q_pass"] = ql.pass;
  }
  j["ratio"] = n ? static_cast<double>(s) / std::pow(static_cast<double>(n), 15.0 / 7.0) : 0.0;
  emit_json(c, out, std::move(j));
  if (s != oracle) throw InvariantFailure("incidence count differs from the cubic oracle");
  if (!q_ok) throw InvariantFailure("container parameter exceeds 3n - 1");
  return kOk;
}

// -- fit -------------------------------------------------------------------------

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

int do_fit(const Common& c, const std::string& file, const std::string& xcol,
           const std::string& ycol, std::ostream& out) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::InvalidInstance, "cannot open " + file);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::InvalidInstance, file + ": empty file");
  const auto header = split_csv(line);
  auto column = [&](const std::string& name, std::size_t fallback) {
    if (name.empty()) return fallback;
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(Errc::InvalidParam, "no column " + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = column(xcol, 0), yi = column(ycol, 1);
  std::vector<std::pair<long double, long double>> series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() <= std::max(xi, yi)) {
      throw Error(Errc::InvalidInstance, file + ": short row");
    }
    try {
      series.emplace_back(std::stold(cells[xi]), std::stold(cells[yi]));
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInstance, file + ": non-numeric cell");
    }
  }
  emit_json(c, out, {{"file", file},
                     {"x", header.at(xi)},
                     {"y", header.at(yi)},
                     {"points", series.size()},
                     {"slope", static_cast<double>(fit_exponent(series))}});
  return kOk;
}

// -- suite -----------------------------------------------------------------------

struct SuiteArgs {
  GenArgs gen;
  std::vector<std::uint64_t> sizes;
  std::vector<std::string> formulas;
};

int do_suite(const Common& c, SuiteArgs& s, std::ostream& out) {
  if (s.sizes.empty()) throw Error(Errc::EmptySuite, "suite needs --sizes");
  GenSpec base = resolve(s.gen);
  const bool grid = base.kind == GenKind::StGrid || base.kind == GenKind::InversionCircles ||
                    base.kind == GenKind::Packing;

  struct Row {
    std::uint64_t size, m, n, q, I;
    BoundParams params;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < s.sizes.size(); ++i) {
    GenSpec spec = base;
    if (grid) {
      spec.a = spec.b = s.sizes[i];
    } else {
      spec.m = spec.n = s.sizes[i];
      spec.seed = derive_seed(base.seed, i);
    }
    const Configuration cfg = generate(spec);
    Row r{s.sizes[i], cfg.points.size(), cfg.curves.size(), 0, 0, {}};
    r.q = compute_q(cfg.curves).q;
    r.I = count_incidences(cfg.points, cfg.curves, c.jobs).total;
    r.params.m = r.m;
    r.params.n = r.n;
    r.params.q = std::max<std::uint64_t>(r.q, 1);
    r.params.k = cfg.curves.is_circles() ? 3 : 2;
    r.params.s = 3;
    rows.push_back(r);
  }

  std::vector<FormulaId> ids;
  for (const auto& f : s.formulas) {
    const auto id = parse_formula(f);
    if (!id) throw Error(Errc::InvalidParam, "unknown formula " + f);
    ids.push_back(*id);
  }
  if (ids.empty()) {
    const bool circles = !rows.empty() && rows.front().params.k == 3;
    ids = circles ? std::vector{FormulaId::CIRC3, FormulaId::IMPR}
                  : std::vector{FormulaId::GK_LINES, FormulaId::MAIN};
  }
  std::vector<long double> A;
  for (auto id : ids) {
    std::vector<Observation> obs;
    for (const auto& r : rows) obs.push_back({r.params, static_cast<long double>(r.I)});
    A.push_back(calibrate_A(obs, id));
  }

  std::ostringstream csv;
  csv << "kind,size,m,n,q,I";
  for (auto id : ids) {
    const std::string name(to_string(id));
    csv << ',' << name << ",A_" << name << ",ratio_" << name;
  }
  csv << '\n';
  for (const auto& r : rows) {
    csv << to_string(base.kind) << ',' << r.size << ',' << r.m << ',' << r.n << ',' << r.q << ','
        << r.I;
    for (std::size_t f = 0; f < ids.size(); ++f) {
      const long double v = eval_bound(ids[f], r.params);
      csv << ',' << fmt(v) << ',' << fmt(A[f]) << ',' << fmt(r.I / (A[f] * v));
    }
    csv << '\n';
  }
  emit(c, out, csv.str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact point-curve incidence workbench", "inclab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out_path, "write the report to a file");
    sub->add_flag("--no-meta", common.no_meta, "omit timestamps and timings");
    sub->add_option("--jobs", common.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  add_gen(*gen_cmd, gen);
  add_common(gen_cmd);

  std::string file;
  auto* count_cmd = app.add_subcommand("count", "brute-force incidence count");
  count_cmd->add_option("instance", file)->required();
  add_common(count_cmd);

  std::uint64_t t = 1;
  auto* rich_cmd = app.add_subcommand("rich", "points on at least t curves");
  rich_cmd->add_option("instance", file)->required();
  rich_cmd->add_option("--t", t, "richness threshold")->required();
  add_common(rich_cmd);

  auto* q_cmd = app.add_subcommand("q", "container parameter");
  q_cmd->add_option("instance", file)->required();
  add_common(q_cmd);

  BoundArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate bound formulas");
  add_bounds(*bounds_cmd, bounds);
  add_common(bounds_cmd);

  PartitionArgs part;
  auto* part_cmd = app.add_subcommand("partition", "partitioned incidence count with trace");
  part_cmd->add_option("instance", part.file)->required();
  part_cmd->add_option("--rounds", part.rounds, "override the number of halving rounds");
  part_cmd->add_option("--max-rounds", part.max_rounds, "cap on derived rounds");
  part_cmd->add_option("--k", part.k, "degrees of freedom (default 2 lines, 3 circles)");
  part_cmd->add_option("--c", part.c, "degree constant c");
  part_cmd->add_option("--a", part.a, "range constant a");
  part_cmd->add_option("--a-prime", part.a_prime, "base-case constant a'");
  add_common(part_cmd);

  std::string k1 = "1", k2 = "1";
  auto* tri_cmd = app.add_subcommand("triangles", "count triangles similar to a shape");
  tri_cmd->add_option("instance", file)->required();
  tri_cmd->add_option("--k1sq", k1, "|ac|^2 / |ab|^2");
  tri_cmd->add_option("--k2sq", k2, "|bc|^2 / |ab|^2");
  add_common(tri_cmd);

  std::string xcol, ycol;
  auto* fit_cmd = app.add_subcommand("fit", "log-log slope of two CSV columns");
  fit_cmd->add_option("csv", file)->required();
  fit_cmd->add_option("--x", xcol, "x column (default: first)");
  fit_cmd->add_option("--y", ycol, "y column (default: second)");
  add_common(fit_cmd);

  SuiteArgs suite;
  auto* suite_cmd = app.add_subcommand("suite", "run a generator family and tabulate bounds");
  add_gen(*suite_cmd, suite.gen);
  suite_cmd->add_option("--sizes", suite.sizes, "grid a = b, or m = n for random kinds")
      ->delimiter(',');
  suite_cmd->add_option("--formula", suite.formulas, "formulas to tabulate");
  add_common(suite_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return do_gen(common, gen, out);
    if (*count_cmd) return do_count(common, file, out);
    if (*rich_cmd) return do_rich(common, file, t, out);
    if (*q_cmd) return do_q(common, file, out);
    if (*bounds_cmd) return do_bounds(common, bounds, out);
    if (*part_cmd) return do_partition(common, part, out);
    if (*tri_cmd) return do_triangles(common, file, k1, k2, out);
    if (*fit_cmd) return do_fit(common, file, xcol, ycol, out);
    if (*suite_cmd) return do_suite(common, suite, out);
  } catch (const InvariantFailure& e) {
    err << "inclab: invariant failed: " << e.what() << '\n';
    return kInvariant;
  } catch (const Error& e) {
    err << "inclab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "inclab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "inclab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "inclab: invariant failed: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    err << "inclab: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace inclab::cli
