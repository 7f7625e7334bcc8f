// Command-line front end: seeded identity and equivalence suites, dataset
// checking, curvature computation, coboundary transport, the simplified
// per-chart comparison, the warm-up bundle checks, and dataset generation.
// Verdict commands print a text report and exit 0 (all records pass) or
// 1 (some record fails); malformed input of any kind exits 2.  --report
// writes the same result as machine-readable JSON with a stable field order.

#include <CLI11.hpp>

#include <gerbeforms/dataset_io.hpp>
#include <gerbeforms/equiv_suite.hpp>
#include <gerbeforms/gerbe.hpp>
#include <gerbeforms/identity_suite.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

using namespace gerbeforms;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Tested envelope for generation parameters.  Larger values work (up to the
// library's hard caps) but are increasingly expensive, so they only warn.
constexpr long kEnvelopeCover = 4;
constexpr long kEnvelopeDim = 4;
constexpr long kEnvelopeSize = 3;
constexpr long kEnvelopeMaxdeg = 2;

void envelope(Report& rep, const std::string& name, long v, long bound) {
  if (v > bound)
    rep.warnings.push_back(name + " = " + std::to_string(v) +
                           " is above the tested envelope (" + name +
                           " <= " + std::to_string(bound) +
                           "); proceeding anyway");
}

void append(Report& rep, const std::vector<Record>& recs) {
  for (const Record& r : recs) rep.add(r);
}

// Prints the text verdict (optionally), echoes warnings on stderr, and
// writes the JSON report when asked.  Returns the exit code.
int emit(const Report& rep, const std::string& report_path,
         bool text_to_stdout) {
  if (text_to_stdout) std::fputs(rep.to_text().c_str(), stdout);
  for (const std::string& w : rep.warnings)
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  if (!report_path.empty()) {
    std::ofstream f(report_path, std::ios::binary);
    if (!f) throw gf_error("cannot write report file: " + report_path);
    f << rep.to_json().dump(2) << "\n";
    if (!f) throw gf_error("failed writing report file: " + report_path);
  }
  return rep.pass() ? kPass : kFail;
}

void write_dataset_out(const Dataset& ds, const std::string& out_path) {
  if (out_path.empty())
    std::fputs(print_dataset(ds).c_str(), stdout);
  else
    save_dataset(out_path, ds);
}

Dataset preamble_like(const Dataset& src) {
  Dataset ds;
  ds.dim = src.dim;
  ds.instance = src.instance;
  ds.size = src.size;
  ds.cover_n = src.cover_n;
  return ds;
}

// ---------------------------------------------------------------------------
// check: run every checker the file's sections support.
// ---------------------------------------------------------------------------

int cmd_check(const std::string& file, const std::string& report_path) {
  Dataset ds = load_dataset(file);
  auto cm = ds.module();
  Report rep;
  rep.command = "check";
  rep.param("instance", ds.instance);
  rep.param("size", ds.size);
  rep.param("dim", ds.dim);
  rep.param("n", ds.cover_n);

  bool any = false;
  GerbeCocycle c;
  ConnectionData conn;
  if (ds.has_cocycle()) {
    c = dataset_cocycle(ds);
    c.validate(*cm);
    append(rep, check_cocycle(*cm, c));
    any = true;
  }
  if (ds.has_connection()) {
    if (!ds.has_cocycle())
      throw gf_error("connection sections require the cocycle sections");
    conn = dataset_connection(ds);
    conn.validate(*cm);
    append(rep, check_connection(*cm, c, conn));
    append(rep, verify_comd1(*cm, c, conn));
  }
  if (ds.has_derived() && !ds.has_curving())
    throw gf_error("derived sections require the curving sections");
  if (ds.has_curving()) {
    if (!ds.has_connection())
      throw gf_error("curving sections require the connection sections");
    CurvingData cd = dataset_curving(ds);
    cd.validate(*cm);
    DerivedCurving dc;
    if (ds.has_derived()) {
      dc = dataset_derived(ds);
      dc.validate(*cm);
    } else {
      dc = derive_curving(*cm, c, conn, cd);
      rep.warnings.push_back(
          "derived sections absent; computed from the stored layers");
    }
    append(rep, check_curving(*cm, c, conn, cd, dc));
  }
  if (ds.has_bundle()) {
    BundleData b = dataset_bundle(ds);
    b.validate(*cm);
    append(rep, bundle_check(*cm, b));
    any = true;
  }
  if (ds.has_coboundary())
    rep.warnings.push_back(
        "coboundary sections are not checked here; use the coboundary "
        "command to transport a gerbe dataset by them");
  if (!any) throw gf_error("dataset has no checkable sections");
  return emit(rep, report_path, true);
}

// ---------------------------------------------------------------------------
// curvature: fill in the derived sections from the stored layers.
// ---------------------------------------------------------------------------

int cmd_curvature(const std::string& file, const std::string& out_path,
                  const std::string& report_path) {
  Dataset ds = load_dataset(file);
  auto cm = ds.module();
  if (!ds.has_cocycle() || !ds.has_connection() || !ds.has_curving())
    throw gf_error(
        "curvature needs the cocycle, connection, and curving sections");
  GerbeCocycle c = dataset_cocycle(ds);
  c.validate(*cm);
  ConnectionData conn = dataset_connection(ds);
  conn.validate(*cm);
  CurvingData cd = dataset_curving(ds);
  cd.validate(*cm);
  DerivedCurving dc = derive_curving(*cm, c, conn, cd);
  dataset_set_derived(ds, dc);
  write_dataset_out(ds, out_path);
  Report rep;
  rep.command = "curvature";
  rep.param("instance", ds.instance);
  rep.param("size", ds.size);
  rep.param("dim", ds.dim);
  rep.param("n", ds.cover_n);
  return emit(rep, report_path, false);
}

// ---------------------------------------------------------------------------
// coboundary: transport a gerbe dataset and verify the closed formulas
// against direct recomputation.
// ---------------------------------------------------------------------------

int cmd_coboundary(const std::string& file, const std::string& by,
                   const std::string& out_path,
                   const std::string& report_path) {
  Dataset ds = load_dataset(file);
  Dataset bds = load_dataset(by);
  if (ds.instance != bds.instance || ds.size != bds.size ||
      ds.dim != bds.dim || ds.cover_n != bds.cover_n)
    throw gf_error(
        "the dataset and the coboundary file disagree on ring, instance, "
        "or cover");
  auto cm = ds.module();
  if (!ds.has_cocycle() || !ds.has_connection() || !ds.has_curving())
    throw gf_error(
        "coboundary needs the cocycle, connection, and curving sections");
  if (!bds.has_coboundary())
    throw gf_error("the --by file carries no coboundary sections");
  GerbeCocycle c = dataset_cocycle(ds);
  ConnectionData conn = dataset_connection(ds);
  CurvingData cd = dataset_curving(ds);
  CoboundaryData cb = dataset_coboundary(bds);
  cb.validate(*cm);

  GerbeCocycle cp = apply_gerbe_coboundary(*cm, cb, c);
  ConnectionData connp = apply_connection_coboundary(*cm, cb, cp, conn);
  CurvingData cdp = apply_curving_coboundary(*cm, cb, connp, cd);
  DerivedCurving dcp = derive_curving(*cm, cp, connp, cdp);

  Report rep;
  rep.command = "coboundary";
  rep.param("instance", ds.instance);
  rep.param("size", ds.size);
  rep.param("dim", ds.dim);
  rep.param("n", ds.cover_n);
  append(rep,
         check_coboundary_consistency(*cm, cb, c, conn, cd, cp, connp, cdp));

  Dataset out = preamble_like(ds);
  dataset_set_cocycle(out, cp);
  dataset_set_connection(out, connp);
  dataset_set_curving(out, cdp);
  dataset_set_derived(out, dcp);
  write_dataset_out(out, out_path);
  return emit(rep, report_path, !out_path.empty());
}

// ---------------------------------------------------------------------------
// remark: the simplified per-chart comparison for pure-shift coboundaries.
// ---------------------------------------------------------------------------

int cmd_remark(const std::string& file, const std::string& by,
               const std::string& report_path) {
  Dataset ds = load_dataset(file);
  Dataset bds = load_dataset(by);
  if (ds.instance != bds.instance || ds.size != bds.size ||
      ds.dim != bds.dim || ds.cover_n != bds.cover_n)
    throw gf_error(
        "the dataset and the coboundary file disagree on ring, instance, "
        "or cover");
  auto cm = ds.module();
  if (!ds.has_connection() || !ds.has_curving())
    throw gf_error("remark needs the connection and curving sections");
  if (!bds.has_coboundary())
    throw gf_error("the --by file carries no coboundary sections");
  ConnectionData conn = dataset_connection(ds);
  CurvingData cd = dataset_curving(ds);
  CoboundaryData cb = dataset_coboundary(bds);
  Report rep;
  rep.command = "remark";
  rep.param("instance", ds.instance);
  rep.param("size", ds.size);
  rep.param("dim", ds.dim);
  rep.param("n", ds.cover_n);
  append(rep, remark_check(*cm, conn, cd, cb));
  return emit(rep, report_path, true);
}

// ---------------------------------------------------------------------------
// Seeded suites and generation.
// ---------------------------------------------------------------------------

int cmd_identities(const IdentityParams& p, const std::string& report_path) {
  Report rep;
  rep.command = "identities";
  rep.has_seed = true;
  rep.seed = p.seed;
  rep.param("trials", p.trials);
  rep.param("dim", p.dim);
  rep.param("size", p.size);
  rep.param("maxdeg", p.maxdeg);
  envelope(rep, "dim", p.dim, kEnvelopeDim);
  envelope(rep, "size", p.size, kEnvelopeSize);
  envelope(rep, "maxdeg", p.maxdeg, kEnvelopeMaxdeg);
  append(rep, run_identity_suite(p));
  return emit(rep, report_path, true);
}

int cmd_equiv(const EquivParams& p, const std::string& report_path) {
  Report rep;
  rep.command = "equiv";
  rep.has_seed = true;
  rep.seed = p.seed;
  rep.param("trials1", p.trials1);
  rep.param("trials2", p.trials2);
  rep.param("dim", p.dim);
  rep.param("size", p.size);
  rep.param("maxdeg", p.maxdeg);
  envelope(rep, "dim", p.dim, kEnvelopeDim);
  envelope(rep, "size", p.size, kEnvelopeSize);
  envelope(rep, "maxdeg", p.maxdeg, kEnvelopeMaxdeg);
  append(rep, run_equiv_suite(p));
  return emit(rep, report_path, true);
}

struct GenerateArgs {
  std::uint64_t seed = 0;
  int n = 3;
  int dim = 2;
  int maxdeg = 1;
  std::string instance = "inner";
  int size = 2;
  bool split = false;
  bool coboundary = false;
  bool shifts_only = false;
  bool bundle = false;
};

int cmd_bundle(const GenerateArgs& a, const std::string& report_path) {
  Report rep;
  rep.command = "bundle";
  rep.has_seed = true;
  rep.seed = a.seed;
  rep.param("instance", a.instance);
  rep.param("size", a.size);
  rep.param("n", a.n);
  rep.param("dim", a.dim);
  rep.param("maxdeg", a.maxdeg);
  envelope(rep, "n", a.n, kEnvelopeCover);
  envelope(rep, "dim", a.dim, kEnvelopeDim);
  envelope(rep, "size", a.size, kEnvelopeSize);
  envelope(rep, "maxdeg", a.maxdeg, kEnvelopeMaxdeg);
  auto cm = make_crossed_module(a.instance, a.size);
  BundleData b = generate_bundle(*cm, a.seed, a.n, a.dim, a.maxdeg);
  append(rep, bundle_check(*cm, b));
  return emit(rep, report_path, true);
}

int cmd_generate(const GenerateArgs& a, const std::string& out_path,
                 const std::string& report_path) {
  Report rep;
  rep.command = "generate";
  rep.has_seed = true;
  rep.seed = a.seed;
  rep.param("instance", a.instance);
  rep.param("size", a.size);
  rep.param("n", a.n);
  rep.param("dim", a.dim);
  rep.param("maxdeg", a.maxdeg);
  envelope(rep, "n", a.n, kEnvelopeCover);
  envelope(rep, "dim", a.dim, kEnvelopeDim);
  envelope(rep, "size", a.size, kEnvelopeSize);
  envelope(rep, "maxdeg", a.maxdeg, kEnvelopeMaxdeg);
  auto cm = make_crossed_module(a.instance, a.size);

  Dataset ds;
  ds.dim = a.dim;
  ds.instance = a.instance;
  ds.size = a.size;
  ds.cover_n = a.n;

  if (a.bundle) {
    rep.param("kind", "bundle");
    dataset_set_bundle(ds, generate_bundle(*cm, a.seed, a.n, a.dim, a.maxdeg));
  } else if (a.coboundary) {
    rep.param("kind", a.shifts_only ? "coboundary-shifts" : "coboundary");
    Rng root(a.seed);
    CoboundaryData cb =
        sample_coboundary(*cm, root, Cover{a.n}, a.dim, a.maxdeg);
    if (a.shifts_only) {
      for (auto& [i, g] : cb.r)
        g = group_identity(Side::A, cm->a_size(), a.dim);
      for (auto& [k, g] : cb.theta)
        g = group_identity(Side::H, cm->h_size(), a.dim);
    }
    dataset_set_coboundary(ds, cb);
  } else {
    rep.param("kind", a.split ? "gerbe-split" : "gerbe");
    GeneratedGerbe gg = a.split
                            ? generate_split(*cm, a.seed, a.n, a.dim, a.maxdeg)
                            : generate_exact(*cm, a.seed, a.n, a.dim, a.maxdeg);
    dataset_set_cocycle(ds, gg.cocycle);
    dataset_set_connection(ds, gg.conn);
    dataset_set_curving(ds, gg.curving);
    dataset_set_derived(ds, gg.derived);
  }
  write_dataset_out(ds, out_path);
  return emit(rep, report_path, false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact checks for Lie-algebra-valued differential forms and "
      "nonabelian gluing data over a finite cover"};
  app.require_subcommand(1);

  // identities
  IdentityParams ip;
  std::string id_report;
  CLI::App* identities = app.add_subcommand(
      "identities", "run the seeded calculus identity suite");
  identities->add_option("--seed", ip.seed, "random seed");
  identities->add_option("--trials", ip.trials, "number of sampled trials")
      ->check(CLI::PositiveNumber);
  identities->add_option("--dim", ip.dim, "number of base variables")
      ->check(CLI::Range(1, 15));
  identities->add_option("--size", ip.size, "matrix size of the instance")
      ->check(CLI::PositiveNumber);
  identities->add_option("--maxdeg", ip.maxdeg,
                         "degree bound for sampled coefficients")
      ->check(CLI::NonNegativeNumber);
  identities->add_option("--report", id_report, "write a JSON report here");

  // equiv
  EquivParams ep;
  std::string eq_report;
  CLI::App* equiv = app.add_subcommand(
      "equiv",
      "compare the combinatorial and classical differentials on samples");
  equiv->add_option("--seed", ep.seed, "random seed");
  equiv->add_option("--trials1", ep.trials1, "number of 1-form trials")
      ->check(CLI::NonNegativeNumber);
  equiv->add_option("--trials2", ep.trials2, "number of 2-form trials")
      ->check(CLI::NonNegativeNumber);
  equiv->add_option("--dim", ep.dim, "number of base variables")
      ->check(CLI::Range(1, 15));
  equiv->add_option("--size", ep.size, "matrix size of the instance")
      ->check(CLI::PositiveNumber);
  equiv->add_option("--maxdeg", ep.maxdeg,
                    "degree bound for sampled coefficients")
      ->check(CLI::NonNegativeNumber);
  equiv->add_option("--report", eq_report, "write a JSON report here");

  // check
  std::string check_file, check_report;
  CLI::App* check = app.add_subcommand(
      "check", "verify every equation the dataset's sections support");
  check->add_option("file", check_file, "dataset file")->required();
  check->add_option("--report", check_report, "write a JSON report here");

  // curvature
  std::string curv_file, curv_out, curv_report;
  CLI::App* curvature = app.add_subcommand(
      "curvature", "compute the derived sections of a gerbe dataset");
  curvature->add_option("file", curv_file, "dataset file")->required();
  curvature->add_option("-o,--output", curv_out,
                        "write the dataset here (default: stdout)");
  curvature->add_option("--report", curv_report, "write a JSON report here");

  // coboundary
  std::string cob_file, cob_by, cob_out, cob_report;
  CLI::App* coboundary = app.add_subcommand(
      "coboundary",
      "transport a gerbe dataset by a coboundary and verify the closed "
      "transport formulas against direct recomputation");
  coboundary->add_option("file", cob_file, "gerbe dataset file")->required();
  coboundary->add_option("--by", cob_by, "coboundary dataset file")
      ->required();
  coboundary->add_option("-o,--output", cob_out,
                         "write the transported dataset here (default: "
                         "stdout)");
  coboundary->add_option("--report", cob_report, "write a JSON report here");

  // remark
  std::string rem_file, rem_by, rem_report;
  CLI::App* remark = app.add_subcommand(
      "remark",
      "simplified per-chart transport comparison for pure-shift "
      "coboundaries (identity rescalings and twists)");
  remark->add_option("file", rem_file, "gerbe dataset file")->required();
  remark->add_option("--by", rem_by, "coboundary dataset file")->required();
  remark->add_option("--report", rem_report, "write a JSON report here");

  // bundle
  GenerateArgs ba;
  std::string bun_report;
  CLI::App* bundle = app.add_subcommand(
      "bundle", "generate and verify seeded transition/connection data for "
                "the warm-up bundle layer");
  bundle->add_option("--seed", ba.seed, "random seed");
  bundle->add_option("--n", ba.n, "number of charts")->check(CLI::Range(3, 64));
  bundle->add_option("--dim", ba.dim, "number of base variables")
      ->check(CLI::Range(1, 15));
  bundle->add_option("--instance", ba.instance, "crossed-module instance");
  bundle->add_option("--size", ba.size, "matrix size of the instance")
      ->check(CLI::PositiveNumber);
  bundle->add_option("--maxdeg", ba.maxdeg,
                     "degree bound for sampled coefficients")
      ->check(CLI::NonNegativeNumber);
  bundle->add_option("--report", bun_report, "write a JSON report here");

  // generate
  GenerateArgs ga;
  std::string gen_out, gen_report;
  CLI::App* generate = app.add_subcommand(
      "generate", "produce a seeded dataset that satisfies every equation");
  generate->add_option("--seed", ga.seed, "random seed");
  generate->add_option("--n", ga.n, "number of charts")
      ->check(CLI::Range(3, 64));
  generate->add_option("--dim", ga.dim, "number of base variables")
      ->check(CLI::Range(1, 15));
  generate->add_option("--instance", ga.instance, "crossed-module instance");
  generate->add_option("--size", ga.size, "matrix size of the instance")
      ->check(CLI::PositiveNumber);
  generate->add_option("--maxdeg", ga.maxdeg,
                       "degree bound for sampled coefficients")
      ->check(CLI::NonNegativeNumber);
  generate->add_flag("--split", ga.split,
                     "identity transitions with generic connection and "
                     "curving (fast at higher dimensions)");
  generate->add_flag("--coboundary", ga.coboundary,
                     "produce a coboundary dataset instead of a gerbe");
  generate->add_flag("--shifts-only", ga.shifts_only,
                     "with --coboundary: identity rescalings and twists, "
                     "sampled 1- and 2-form shifts only");
  generate->add_flag("--bundle", ga.bundle,
                     "produce a bundle dataset instead of a gerbe");
  generate->add_option("-o,--output", gen_out,
                       "write the dataset here (default: stdout)");
  generate->add_option("--report", gen_report, "write a JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*identities) return cmd_identities(ip, id_report);
    if (*equiv) return cmd_equiv(ep, eq_report);
    if (*check) return cmd_check(check_file, check_report);
    if (*curvature) return cmd_curvature(curv_file, curv_out, curv_report);
    if (*coboundary)
      return cmd_coboundary(cob_file, cob_by, cob_out, cob_report);
    if (*remark) return cmd_remark(rem_file, rem_by, rem_report);
    if (*bundle) return cmd_bundle(ba, bun_report);
    if (*generate) {
      if (ga.bundle && (ga.coboundary || ga.split))
        throw gf_error("--bundle cannot be combined with --coboundary or "
                       "--split");
      if (ga.coboundary && ga.split)
        throw gf_error("--coboundary cannot be combined with --split");
      if (ga.shifts_only && !ga.coboundary)
        throw gf_error("--shifts-only needs --coboundary");
      return cmd_generate(ga, gen_out, gen_report);
    }
  } catch (const gf_error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kUsage;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kUsage;
  }
  return kUsage;
}
