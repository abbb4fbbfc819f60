// obsorder: command-line access to the order predicates, rank tests,
// automorphism reconstruction, preserver classification and the
// verification suites. All inputs are JSON files ("-" reads stdin); all
// output is a single JSON document on stdout.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "obsorder/automorphism.hpp"
#include "obsorder/automorphism_json.hpp"
#include "obsorder/harness.hpp"
#include "obsorder/loewner.hpp"
#include "obsorder/matrix_json.hpp"
#include "obsorder/order_rank.hpp"
#include "obsorder/preservers.hpp"
#include "obsorder/process_oracle.hpp"

using namespace obsorder;

namespace {

constexpr int kInputError = 2;

struct Globals {
  Tolerances tol = default_tolerances();
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

void emit(const Json& j) { std::cout << dump_json(j) << '\n'; }

int report_error(const Error& e) {
  std::cerr << "obsorder: " << e.what() << '\n';
  return kInputError;
}

class InputReader {
 public:
  Json read(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) fail(Errc::invalid_argument, "standard input can be read only once");
      stdin_used_ = true;
    }
    return read_json_file(path);
  }

 private:
  bool stdin_used_ = false;
};

Json witness_json(std::string_view refutes, const OrderWitness& w) {
  Json j;
  j["refutes"] = refutes;
  j["x"] = vector_to_json(w.x);
  j["gap"] = w.gap;
  return j;
}

int cmd_order(const Globals& g, const std::string& a_path, const std::string& b_path) {
  InputReader in;
  const HermitianMatrix a = hermitian_from_json(in.read(a_path));
  const HermitianMatrix b = hermitian_from_json(in.read(b_path));
  require_same_dim(a, b);
  const OrderResult r = compare(a, b, g.tol);
  Json out;
  out["relation"] = to_string(r.relation);
  Json witnesses = Json::array();
  if (r.witness_ab) witnesses.push_back(witness_json("A<=B", *r.witness_ab));
  if (r.witness_ba) witnesses.push_back(witness_json("B<=A", *r.witness_ba));
  out["witnesses"] = std::move(witnesses);
  emit(out);
  return r.relation == Relation::incomparable ? 1 : 0;
}

int cmd_lambda_max(const Globals& g, const std::string& b_path, const std::string& x_text) {
  InputReader in;
  const PsdMatrix b = PsdMatrix::certify(hermitian_from_json(in.read(b_path)), g.tol);
  ComplexVector x = vector_from_json(parse_json(x_text));
  if (x.size() != b.dim()) fail(Errc::dimension_mismatch, "x and B have different dimensions");
  const double norm = x.norm();
  if (std::abs(norm - 1.0) > 1e-6) fail(Errc::non_unit_vector, "x is not a unit vector (norm " + std::to_string(norm) + ")");
  x /= norm;
  const std::optional<double> lambda = max_lambda(x, b, g.tol);
  Json out;
  out["lambda"] = lambda ? Json(*lambda) : Json(nullptr);
  emit(out);
  return 0;
}

int cmd_rank_order(const Globals& g, const std::string& a_path, int n) {
  InputReader in;
  const PsdMatrix a = PsdMatrix::certify(hermitian_from_json(in.read(a_path)), g.tol);
  if (n < 1) fail(Errc::invalid_argument, "n must be at least 1");
  const std::optional<RankWitness> w = rank_gt_np1_witness(a, n, g.tol);
  Json out;
  out["rank"] = rank_numeric(a, g.tol);
  out["n"] = n;
  out["rank_gt_np1"] = w.has_value();
  if (w) {
    const std::filesystem::path dir = g.out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(g.out_dir);
    std::filesystem::create_directories(dir);
    const std::string e_path = (dir / "rank_witness_E.json").string();
    const std::string f_path = (dir / "rank_witness_F.json").string();
    write_json_file(e_path, matrix_to_json(w->e));
    write_json_file(f_path, matrix_to_json(w->f));
    out["witness"] = Json{{"E", e_path}, {"F", f_path}};
  }
  emit(out);
  return 0;
}

int cmd_reconstruct(const Globals& g, const std::string& command, int dim) {
  ReconstructOptions options;
  options.tol = g.tol;
  if (g.seed) options.validation_seed = *g.seed;
  try {
    ProcessOracle oracle(command, dim);
    const ReconstructionReport rep = reconstruct(oracle, options);
    Json out = automorphism_to_json(rep.recovered);
    out["phase_gauge"] = rep.phase_gauge;
    out["conjugate_degenerate"] = rep.conjugate_degenerate;
    out["max_residual"] = rep.max_residual;
    out["probes_used"] = rep.probes_used;
    emit(out);
    return 0;
  } catch (const Error& e) {
    std::cerr << "obsorder: " << e.what() << '\n';
    if (e.code() == Errc::oracle_not_automorphic) return 3;
    if (e.code() == Errc::transport_failure) return 4;
    return kInputError;
  }
}

int cmd_preserver(const Globals& g, const std::string& phi_path, const std::string& kind_name, int trials) {
  InputReader in;
  const OrderAutomorphism phi = automorphism_from_json(in.read(phi_path), g.tol);
  const std::optional<RelationKind> kind = relation_kind_from_string(kind_name);
  if (!kind) fail(Errc::invalid_argument, "unknown relation '" + kind_name + "'");
  if (trials < 1) fail(Errc::invalid_argument, "trials must be positive");
  const PreserverClassification c = preserves_relation(phi, *kind, trials, g.seed.value_or(0), g.tol);
  Json out;
  out["kind"] = to_string(c.kind);
  out["preserves"] = c.preserves;
  if (c.canonical_form) {
    const CanonicalForm& f = *c.canonical_form;
    Json form;
    form["U"] = matrix_to_json(f.u);
    form["antiunitary"] = f.antiunitary;
    form["lambda"] = f.lambda;
    form["mu"] = f.mu ? Json(*f.mu) : Json(nullptr);
    out["canonical_form"] = std::move(form);
  } else {
    out["canonical_form"] = nullptr;
  }
  if (c.counterexample) {
    const Counterexample& ce = *c.counterexample;
    out["counterexample"] = Json{{"A", matrix_to_json(ce.a)},
                                 {"B", matrix_to_json(ce.b)},
                                 {"holds_before", ce.holds_before},
                                 {"holds_after", ce.holds_after}};
  } else {
    out["counterexample"] = nullptr;
  }
  emit(out);
  return c.preserves ? 0 : 1;
}

int cmd_verify(const Globals& g, const std::string& suite, const std::vector<int>& dims, int trials, bool timing) {
  const SuiteReport report = run_suite(suite, dims, trials, g.seed.value_or(0), g.tol);
  const Json j = report.to_json(timing);
  if (!g.out_dir.empty()) {
    std::filesystem::create_directories(g.out_dir);
    write_json_file((std::filesystem::path(g.out_dir) / (suite + ".json")).string(), j);
  }
  emit(j);
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loewner order, order-automorphisms and preservers of Hermitian matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed = 0;
  app.add_option("--tol-psd", g.tol.psd, "relative PSD tolerance")->capture_default_str();
  app.add_option("--tol-rank", g.tol.rank, "relative rank cutoff")->capture_default_str();
  app.add_option("--tol-range", g.tol.range, "range-membership residual")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--out-dir", g.out_dir, "directory for auxiliary output files");

  std::string a_path, b_path, x_text, command, kind;
  int n = 1, dim = 0, trials = 0;
  std::vector<int> dims{2, 3};
  bool no_timing = false;

  auto* order = app.add_subcommand("order", "compare A and B in the Loewner order");
  order->add_option("A", a_path, "matrix JSON")->required();
  order->add_option("B", b_path, "matrix JSON")->required();

  auto* lambda = app.add_subcommand("lambda-max", "largest lambda with lambda x x* <= B");
  lambda->add_option("B", b_path, "PSD matrix JSON")->required();
  lambda->add_option("x", x_text, "unit vector as inline JSON")->required();

  auto* rank = app.add_subcommand("rank-order", "order-theoretic test of rank A > n + 1");
  rank->add_option("A", a_path, "PSD matrix JSON")->required();
  rank->add_option("n", n, "n >= 1")->required();

  auto* recon = app.add_subcommand("reconstruct", "recover (T, conjugate, X) from an oracle process");
  recon->add_option("--oracle", command, "oracle command line; the dimension is passed as first argument")
      ->required();
  recon->add_option("--dim", dim, "dimension")->required();

  auto* pres = app.add_subcommand("preserver", "does phi also preserve a relation");
  pres->add_option("phi", a_path, "automorphism JSON {T, conjugate, X}")->required();
  pres->add_option("kind", kind, "commutativity | complementarity | orthogonality")->required();
  int search_trials = 1000;
  pres->add_option("--trials", search_trials, "counterexample candidates")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "suite name")->required();
  verify->add_option("--dims", dims, "dimensions")->delimiter(',')->capture_default_str();
  trials = 10;
  verify->add_option("--trials", trials, "trials per dimension")->capture_default_str();
  verify->add_flag("--no-timing", no_timing, "omit elapsed_ms from the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }
  if (seed_opt->count() > 0) g.seed = seed;

  try {
    g.tol.validate();
    if (*order) return cmd_order(g, a_path, b_path);
    if (*lambda) return cmd_lambda_max(g, b_path, x_text);
    if (*rank) return cmd_rank_order(g, a_path, n);
    if (*recon) return cmd_reconstruct(g, command, dim);
    if (*pres) return cmd_preserver(g, a_path, kind, search_trials);
    if (*verify) return cmd_verify(g, suite, dims, trials, !no_timing);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "obsorder: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
