// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes within its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "obsorder/harness.hpp"
#include "obsorder/preservers.hpp"

using namespace obsorder;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

std::vector<int> range(int lo, int hi) {
  std::vector<int> out;
  for (int d = lo; d <= hi; ++d) out.push_back(d);
  return out;
}

Outcome suite_outcome(const SuiteReport& r) {
  std::ostringstream os;
  const int total = r.trials * static_cast<int>(r.dims.size());
  os << r.suite << ": " << total << " cases, " << r.failures.size() << " failures";
  if (!r.failures.empty()) os << "; first: dim " << r.failures[0].dim << " seed " << r.failures[0].seed << " ("
                              << r.failures[0].property << ")";
  return {r.passed(), os.str()};
}

Outcome run_suites(std::initializer_list<std::tuple<const char*, std::vector<int>, int>> runs, std::uint64_t seed) {
  Outcome total{true, ""};
  for (const auto& [name, dims, trials] : runs) {
    const Outcome o = suite_outcome(run_suite(name, dims, trials, seed));
    total.ok = total.ok && o.ok;
    total.detail += (total.detail.empty() ? "" : "; ") + o.detail;
  }
  return total;
}

// Reconstruction round trip: success rate, with every failure replayed.
Outcome reconstruction_round_trip() {
  const SuiteReport r = run_suite("thm2", range(2, 5), 200, 42);
  const int total = r.trials * static_cast<int>(r.dims.size());
  const double rate = 1.0 - static_cast<double>(r.failures.size()) / total;
  int replayed = 0;
  for (const FailureRecord& f : r.failures) {
    const auto again = replay_case("thm2", f.dim, f.seed);
    if (again && again->digest == f.digest && again->property == f.property) ++replayed;
  }
  std::ostringstream os;
  os << total << " round trips, success rate " << rate * 100.0 << "%, " << r.failures.size() << " failures ("
     << replayed << " replayed)";
  return {rate >= 0.99 && replayed == static_cast<int>(r.failures.size()), os.str()};
}

// lambda U c(.) U* + mu I versus non-scalar T*T or non-scalar X.
Outcome commutativity_classifier() {
  Generator gen(2024);
  int positives = 0, negatives = 0, wrong = 0;
  std::string first_problem;
  auto note = [&](const std::string& what) {
    ++wrong;
    if (first_problem.empty()) first_problem = what;
  };
  for (int k = 0; k < 400; ++k) {
    const int d = 2 + k % 3;
    const bool conj = gen.rng().coin();
    const ComplexMatrix u = gen.unitary(d);
    const double lambda = gen.rng().uniform(0.5, 2.0);
    const double mu = gen.rng().uniform(-2.0, 2.0);
    const bool scalar_case = k % 2 == 0;
    ComplexMatrix t = std::sqrt(lambda) * u;
    HermitianMatrix x = mu * HermitianMatrix::identity(d);
    if (!scalar_case) {
      if (k % 4 == 1) t = gen.invertible(d);
      else x = gen.hermitian(d);
    }
    const OrderAutomorphism phi(t, conj, x);
    const PreserverClassification c =
        preserves_relation(phi, RelationKind::commutativity, 1000, gen.rng().next_u64());
    if (scalar_case) {
      ++positives;
      if (!c.preserves || !c.canonical_form) {
        note("unitary-scalar instance classified false");
        continue;
      }
      const CanonicalForm& f = *c.canonical_form;
      if ((f.u - u).norm() > 1e-9 || std::abs(f.lambda - lambda) > 1e-9 * lambda || !f.mu ||
          std::abs(*f.mu - mu) > 1e-9 * std::max(1.0, std::abs(mu)) || f.antiunitary != conj)
        note("canonical form (U, lambda, mu) not recovered");
    } else {
      ++negatives;
      if (c.preserves || !c.counterexample) {
        note("non-scalar instance classified true");
        continue;
      }
      const Counterexample& ce = *c.counterexample;
      const bool before = commute(ce.a, ce.b);
      const bool after = commute(apply(phi, ce.a), apply(phi, ce.b));
      if (before == after || before != ce.holds_before || after != ce.holds_after)
        note("counterexample does not re-verify");
    }
  }
  std::ostringstream os;
  os << positives << " unitary-scalar, " << negatives << " non-scalar instances, " << wrong << " misclassified";
  if (!first_problem.empty()) os << " (" << first_problem << ")";
  return {wrong == 0 && positives == 200 && negatives == 200, os.str()};
}

// Golden CLI cases replayed twice each through the shell.
Outcome cli_contract() {
  namespace fs = std::filesystem;
  const fs::path golden = OBSORDER_GOLDEN_DIR;
  const fs::path work = fs::temp_directory_path() / ("obsorder-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(work);
  std::ifstream cases(golden / "cases.txt");
  if (!cases) return {false, "cannot read cases.txt"};

  auto replace_all = [](std::string s, const std::string& from, const std::string& to) {
    for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size()))
      s.replace(at, from.size(), to);
    return s;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };

  int count = 0, failed = 0;
  std::set<std::string> subcommands, oracles;
  std::string first_problem;
  for (std::string line; std::getline(cases, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string field; std::getline(ls, field, '|');) f.push_back(field);
    f.resize(4);
    const std::string& name = f[0];
    const int want_rc = std::atoi(f[1].c_str());
    std::string args = replace_all(f[3], "@IN@", (golden / "inputs").string());
    args = replace_all(args, "@ORACLE@", OBSORDER_ORACLE_PATH);
    for (const char* sub : {"order", "lambda-max", "rank-order", "reconstruct", "preserver", "verify"})
      if ((" " + f[3] + " ").find(std::string(" ") + sub + " ") != std::string::npos) subcommands.insert(sub);
    for (const char* mode : {"identity", "affine", "cube"})
      if (f[3].find(std::string("@ORACLE@ ") + mode) != std::string::npos && want_rc == (mode[0] == 'c' ? 3 : 0))
        oracles.insert(mode);

    std::string outputs[2];
    bool ok = true;
    for (int rep = 0; rep < 2 && ok; ++rep) {
      const fs::path dir = work / name / std::to_string(rep);
      fs::create_directories(dir);
      std::string cmd = "cd '" + dir.string() + "' && '" + std::string(OBSORDER_CLI_PATH) + "' " + args;
      if (!f[2].empty()) cmd += " < '" + (golden / "inputs" / f[2]).string() + "'";
      cmd += " > stdout.txt 2> stderr.txt";
      const int status = std::system(cmd.c_str());
      const int rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      outputs[rep] = slurp(dir / "stdout.txt");
      if (rc != want_rc) {
        ok = false;
        if (first_problem.empty()) first_problem = name + ": exit " + std::to_string(rc);
      } else if (outputs[rep] != slurp(golden / "expected" / (name + ".out"))) {
        ok = false;
        if (first_problem.empty()) first_problem = name + ": output differs from golden file";
      }
    }
    if (ok && outputs[0] != outputs[1]) {
      ok = false;
      if (first_problem.empty()) first_problem = name + ": output not reproducible";
    }
    ++count;
    if (!ok) ++failed;
  }
  fs::remove_all(work);

  std::ostringstream os;
  os << count << " golden cases x2, " << failed << " failed, " << subcommands.size() << "/6 subcommands, "
     << oracles.size() << "/3 bundled oracles";
  if (!first_problem.empty()) os << " (" << first_problem << ")";
  return {failed == 0 && subcommands.size() == 6 && oracles.size() == 3, os.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "order predicate soundness", 10.0,
       [] { return run_suites({{"order", range(2, 6), 1000}}, 1); }},
      {2, "range domination vs bisection feasibility", 30.0,
       [] { return run_suites({{"lemma-rng", range(2, 6), 300}}, 2); }},
      {3, "extremal lambda", 20.0,
       [] { return run_suites({{"lambda-max", range(2, 6), 60}}, 3); }},
      {4, "order-theoretic rank witness", 60.0,
       [] { return run_suites({{"lemma-rank", range(3, 6), 300}}, 4); }},
      {5, "automorphisms preserve order both ways", 60.0,
       [] { return run_suites({{"thm2-order", range(2, 5), 500}}, 5); }},
      {6, "reconstruction round trip", 120.0, reconstruction_round_trip},
      {7, "commutativity preserver classification", 60.0, commutativity_classifier},
      {8, "complementarity and scalars", 60.0,
       [] { return run_suites({{"cor4", range(2, 4), 100}}, 8); }},
      {9, "orthogonality preserver classification", 60.0,
       [] { return run_suites({{"cor5", range(2, 5), 500}}, 9); }},
      {10, "CLI golden files", 10.0, cli_contract},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s %2d %-44s %7.2fs / %4.0fs  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                c.budget_s, o.detail.c_str(), in_time ? "" : " [over time budget]");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
