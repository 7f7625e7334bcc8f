// End-to-end tests for the command-line tool.  Each test spawns the built
// binary, captures stdout/stderr and the exit code, and checks the contract:
// exit 0 when every record passes, 1 when some equation fails (with the
// failing equation, chart tuple, and residual monomial named in the text
// report), and 2 for malformed input of any kind.  Reports must be
// deterministic: the same invocation yields byte-identical output, and JSON
// reports embed everything needed to reproduce the run.

#include <gerbeforms/dataset_io.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace gerbeforms;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Runs the tool with the given argument string, capturing both streams.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string errfile =
      ::testing::TempDir() + "gf_cli_stderr_" + std::to_string(++counter);
  const std::string cmd =
      std::string(GF_CLI_PATH) + " " + args + " 2>" + errfile;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(errfile);
  std::remove(errfile.c_str());
  return r;
}

std::string tmp_path(const std::string& name) {
  return ::testing::TempDir() + "gf_cli_" + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  ASSERT_TRUE(f.good()) << path;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// ---------------------------------------------------------------------------
// Seeded suites.
// ---------------------------------------------------------------------------

TEST(CliSuites, IdentitiesSeededRunPassesAndEchoesParameters) {
  RunResult r =
      run_cli("identities --seed 7 --trials 2 --dim 2 --size 2 --maxdeg 1");
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "command: identities"));
  EXPECT_TRUE(contains(r.out, "seed: 7"));
  EXPECT_TRUE(contains(r.out, "grcom: PASS"));
  EXPECT_TRUE(contains(r.out, "bianchiclas: PASS"));
  EXPECT_TRUE(contains(r.out, "result: PASS"));
}

TEST(CliSuites, EquivSeededRunPasses) {
  RunResult r =
      run_cli("equiv --seed 2 --trials1 2 --trials2 1 --dim 2 --size 2");
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "dtwist: PASS"));
  EXPECT_TRUE(contains(r.out, "result: PASS"));
}

TEST(CliSuites, BundleSeededRunPasses) {
  RunResult r = run_cli("bundle --seed 4 --dim 2");
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "g1coc: PASS"));
  EXPECT_TRUE(contains(r.out, "con:local: PASS"));
  EXPECT_TRUE(contains(r.out, "kappa-glue: PASS"));
  EXPECT_TRUE(contains(r.out, "bianchiclas: PASS"));
}

TEST(CliSuites, EnvelopeWarningGoesToStderrNotTheVerdict) {
  RunResult r =
      run_cli("identities --seed 1 --trials 1 --dim 5 --size 2 --maxdeg 1");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.err, "tested envelope"));
  EXPECT_TRUE(contains(r.out, "result: PASS"));
}

// ---------------------------------------------------------------------------
// Reports are deterministic and self-describing.
// ---------------------------------------------------------------------------

TEST(CliReports, SameInvocationYieldsByteIdenticalJson) {
  const std::string p1 = tmp_path("rep1.json"), p2 = tmp_path("rep2.json");
  RunResult a = run_cli(
      "identities --seed 5 --trials 1 --dim 2 --size 2 --report " + p1);
  RunResult b = run_cli(
      "identities --seed 5 --trials 1 --dim 2 --size 2 --report " + p2);
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(a.out, b.out);
  const std::string j1 = slurp(p1), j2 = slurp(p2);
  ASSERT_FALSE(j1.empty());
  EXPECT_EQ(j1, j2);
}

TEST(CliReports, DifferentSeedsYieldDifferentJson) {
  const std::string p1 = tmp_path("rep5.json"), p2 = tmp_path("rep6.json");
  ASSERT_EQ(run_cli("identities --seed 5 --trials 1 --dim 2 --size 2 "
                    "--report " + p1).code, 0);
  ASSERT_EQ(run_cli("identities --seed 6 --trials 1 --dim 2 --size 2 "
                    "--report " + p2).code, 0);
  EXPECT_NE(slurp(p1), slurp(p2));
}

TEST(CliReports, JsonCarriesCommandSeedParamsRecordsAndSummary) {
  const std::string p = tmp_path("rep_shape.json");
  ASSERT_EQ(run_cli("identities --seed 9 --trials 1 --dim 2 --size 2 "
                    "--report " + p).code, 0);
  nlohmann::json j = nlohmann::json::parse(slurp(p));
  EXPECT_EQ(j["command"], "identities");
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["params"]["trials"], "1");
  ASSERT_TRUE(j["records"].is_array());
  ASSERT_FALSE(j["records"].empty());
  EXPECT_TRUE(j["records"][0].contains("equation"));
  EXPECT_TRUE(j["records"][0].contains("pass"));
  EXPECT_EQ(j["summary"]["failed"], 0);
  EXPECT_EQ(j["summary"]["pass"], true);
}

// ---------------------------------------------------------------------------
// Dataset generation and checking.
// ---------------------------------------------------------------------------

TEST(CliDatasets, GenerateThenCheckPassesEveryEquation) {
  const std::string p = tmp_path("gen3.gfd");
  ASSERT_EQ(run_cli("generate --seed 3 -o " + p).code, 0);
  RunResult r = run_cli("check " + p);
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "coc1: PASS"));
  EXPECT_TRUE(contains(r.out, "coc2: PASS"));
  EXPECT_TRUE(contains(r.out, "comd1: PASS"));
  EXPECT_TRUE(contains(r.out, "cockap2: PASS"));
  EXPECT_TRUE(contains(r.out, "comoioj1: PASS"));
  EXPECT_TRUE(contains(r.out, "result: PASS"));
}

TEST(CliDatasets, GenerateToStdoutMatchesTheFileBytes) {
  const std::string p = tmp_path("gen3b.gfd");
  ASSERT_EQ(run_cli("generate --seed 3 -o " + p).code, 0);
  RunResult r = run_cli("generate --seed 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(p));
}

TEST(CliDatasets, SplitGenerationAlsoChecksClean) {
  const std::string p = tmp_path("split8.gfd");
  ASSERT_EQ(run_cli("generate --seed 8 --split -o " + p).code, 0);
  Dataset ds = load_dataset(p);  // identity transitions, generic rest
  GerbeCocycle c = dataset_cocycle(ds);
  auto cm = ds.module();
  const PolyMat id = group_identity(Side::A, cm->a_size(), ds.dim).mat;
  EXPECT_EQ(c.lambda_at(*cm, 0, 1).mat, id);
  EXPECT_EQ(run_cli("check " + p).code, 0);
}

TEST(CliDatasets, GeneratedBundleFileChecksClean) {
  const std::string p = tmp_path("bun5.gfd");
  ASSERT_EQ(run_cli("generate --seed 5 --bundle -o " + p).code, 0);
  RunResult r = run_cli("check " + p);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "kappa-glue: PASS"));
}

TEST(CliDatasets, CorruptedCoefficientFailsAtTheNamedEquation) {
  const std::string p = tmp_path("gen3c.gfd");
  ASSERT_EQ(run_cli("generate --seed 3 -o " + p).code, 0);
  // Add x1 to one entry of the first curving coefficient on chart 0.
  std::string text = slurp(p);
  size_t sec = text.find("[B 0]");
  ASSERT_NE(sec, std::string::npos);
  size_t line = text.find("coeff", sec);
  ASSERT_NE(line, std::string::npos);
  size_t close = text.find("]]", line);
  ASSERT_NE(close, std::string::npos);
  text.insert(close, " + x1");
  const std::string bad = tmp_path("gen3c_bad.gfd");
  write_file(bad, text);

  RunResult r = run_cli("check " + bad);
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_TRUE(contains(r.out, "ifi: FAIL"));
  EXPECT_TRUE(contains(r.out, "FAIL ifi at (0)"));
  EXPECT_TRUE(contains(r.out, "x1"));  // the residual's leading monomial
  EXPECT_TRUE(contains(r.out, "result: FAIL"));
}

TEST(CliDatasets, CurvatureRecomputesTheStoredDerivedSections) {
  const std::string full = tmp_path("cur_full.gfd");
  ASSERT_EQ(run_cli("generate --seed 3 -o " + full).code, 0);
  // Strip the derived sections, then ask the tool to restore them.
  Dataset ds = load_dataset(full);
  Dataset stripped;
  stripped.dim = ds.dim;
  stripped.instance = ds.instance;
  stripped.size = ds.size;
  stripped.cover_n = ds.cover_n;
  dataset_set_cocycle(stripped, dataset_cocycle(ds));
  dataset_set_connection(stripped, dataset_connection(ds));
  dataset_set_curving(stripped, dataset_curving(ds));
  const std::string part = tmp_path("cur_part.gfd");
  save_dataset(part, stripped);
  const std::string out = tmp_path("cur_out.gfd");
  ASSERT_EQ(run_cli("curvature " + part + " -o " + out).code, 0);
  EXPECT_EQ(slurp(out), slurp(full));
}

// ---------------------------------------------------------------------------
// Transport.
// ---------------------------------------------------------------------------

TEST(CliTransport, CoboundaryMovesTheDataAndTheMovedFileChecksClean) {
  const std::string g = tmp_path("tr_g.gfd"), cb = tmp_path("tr_cb.gfd"),
                    moved = tmp_path("tr_moved.gfd");
  ASSERT_EQ(run_cli("generate --seed 3 -o " + g).code, 0);
  ASSERT_EQ(run_cli("generate --seed 11 --coboundary -o " + cb).code, 0);
  RunResult r = run_cli("coboundary " + g + " --by " + cb + " -o " + moved);
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "ni1: PASS"));
  EXPECT_TRUE(contains(r.out, "niri: PASS"));
  EXPECT_TRUE(contains(r.out, "coboun-om1: PASS"));
  EXPECT_TRUE(contains(r.out, "coboun-om1a: PASS"));
  // The transported dataset is a gerbe in its own right.
  EXPECT_EQ(run_cli("check " + moved).code, 0);
  // And it differs from the original.
  EXPECT_NE(slurp(moved), slurp(g));
}

TEST(CliTransport, RemarkAcceptsShiftCoboundariesAndRejectsGeneralOnes) {
  const std::string g = tmp_path("rm_g.gfd"), sh = tmp_path("rm_sh.gfd"),
                    cb = tmp_path("rm_cb.gfd");
  ASSERT_EQ(run_cli("generate --seed 3 -o " + g).code, 0);
  ASSERT_EQ(
      run_cli("generate --seed 12 --coboundary --shifts-only -o " + sh).code,
      0);
  ASSERT_EQ(run_cli("generate --seed 11 --coboundary -o " + cb).code, 0);

  RunResult ok = run_cli("remark " + g + " --by " + sh);
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_TRUE(contains(ok.out, "simp: PASS"));

  RunResult rej = run_cli("remark " + g + " --by " + cb);
  EXPECT_EQ(rej.code, 2);
  EXPECT_TRUE(contains(rej.err, "identity"));
}

TEST(CliTransport, MismatchedPreamblesAreRejected) {
  const std::string g = tmp_path("mm_g.gfd"), cb = tmp_path("mm_cb.gfd");
  ASSERT_EQ(run_cli("generate --seed 3 -o " + g).code, 0);
  ASSERT_EQ(
      run_cli("generate --seed 11 --dim 3 --coboundary -o " + cb).code, 0);
  RunResult r = run_cli("coboundary " + g + " --by " + cb);
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "disagree"));
}

// ---------------------------------------------------------------------------
// Usage errors.
// ---------------------------------------------------------------------------

TEST(CliUsage, HelpExitsZero) {
  EXPECT_EQ(run_cli("--help").code, 0);
  EXPECT_EQ(run_cli("check --help").code, 0);
}

TEST(CliUsage, UnknownSubcommandAndUnknownFlagExitTwo) {
  EXPECT_EQ(run_cli("nonsense").code, 2);
  EXPECT_EQ(run_cli("identities --no-such-flag").code, 2);
}

TEST(CliUsage, MissingDatasetFileExitsTwo) {
  RunResult r = run_cli("check " + tmp_path("does_not_exist.gfd"));
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "cannot open"));
}

TEST(CliUsage, MalformedDatasetExitsTwoWithPositionedMessage) {
  const std::string p = tmp_path("garbage.gfd");
  write_file(p, "not a dataset\n");
  RunResult r = run_cli("check " + p);
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "line 1"));
}

TEST(CliUsage, DatasetWithoutCheckableSectionsExitsTwo) {
  const std::string p = tmp_path("preamble_only.gfd");
  write_file(p,
             "gerbeforms-dataset v1\n\n[ring]\ndim = 2\n\n[crossed-module]\n"
             "instance = inner\nsize = 2\n\n[cover]\nn = 3\n");
  RunResult r = run_cli("check " + p);
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "no checkable sections"));
}

TEST(CliUsage, ConnectionWithoutCocycleExitsTwo) {
  const std::string p = tmp_path("conn_only.gfd");
  write_file(p,
             "gerbeforms-dataset v1\n\n[ring]\ndim = 2\n\n[crossed-module]\n"
             "instance = inner\nsize = 2\n\n[cover]\nn = 3\n\n[m 0]\n");
  RunResult r = run_cli("check " + p);
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "require the cocycle"));
}

TEST(CliUsage, ConflictingGenerateFlagsExitTwo) {
  EXPECT_EQ(run_cli("generate --bundle --split").code, 2);
  EXPECT_EQ(run_cli("generate --shifts-only").code, 2);
}

}  // namespace
