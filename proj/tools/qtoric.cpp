// qtoric: cohomology rings, Stiefel-Whitney classes and skew-embedding
// bounds for quasitoric manifolds over the cube.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtoric/cube.hpp"
#include "qtoric/io.hpp"
#include "qtoric/manifolds.hpp"
#include "qtoric/oracle.hpp"
#include "qtoric/verify.hpp"

namespace {

using namespace qtoric;

constexpr int kExitVerificationFailed = 1;
constexpr int kExitInvalidInput = 2;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dimension cap from QTORIC_MAX_N (default 12, at most 16).
int dimension_cap() {
  const char* raw = std::getenv("QTORIC_MAX_N");
  if (raw == nullptr || *raw == '\0') return kDefaultDimensionCap;
  try {
    std::size_t used = 0;
    const int cap = std::stoi(raw, &used);
    if (used == std::string(raw).size() && cap >= 1 && cap <= kHardDimensionCap) return cap;
  } catch (const std::exception&) {
  }
  throw InvalidInput("QTORIC_MAX_N must be an integer in 1.." +
                     std::to_string(kHardDimensionCap));
}

struct Options {
  std::string family = "mi";
  int n = 0;
  std::string basis;
  std::string matrix_path;
  std::string format = "text";
  int n_max = 0;
  bool check = false;
};

Family parse_family(const std::string& s) {
  if (s == "mi") return Family::MI;
  if (s == "q") return Family::Q;
  if (s == "custom") return Family::Custom;
  throw InvalidInput("unknown family: " + s);
}

ManifoldModel build_model(const Options& opt, io::RunReport& report) {
  const Family family = parse_family(opt.family);
  std::optional<CharacteristicMatrix> matrix;
  if (family == Family::Custom) {
    if (opt.matrix_path.empty()) throw InvalidInput("--family custom requires --matrix");
    matrix = io::load_matrix(opt.matrix_path);
    report.inputs.matrix_source = opt.matrix_path;
  } else {
    if (!opt.matrix_path.empty()) throw InvalidInput("--matrix is only valid with --family custom");
    report.inputs.matrix_source = "builtin";
  }
  report.inputs.family = opt.family;
  report.inputs.n = opt.n;
  return build(family, static_cast<std::size_t>(opt.n), matrix, {dimension_cap()});
}

Basis resolve_basis(const Options& opt, const ManifoldModel& m) {
  if (opt.basis.empty()) return m.preferred_basis();
  if (opt.basis == "u") return Basis::U;
  if (opt.basis == "t") {
    if (!m.has_t_ring()) throw InvalidInput("--basis t is only available for mi and q");
    return Basis::T;
  }
  throw InvalidInput("unknown basis: " + opt.basis);
}

struct Outcome {
  int status = 0;
  std::string text;
};

std::string render_class(const std::string& title, const GradedClass& c,
                         const std::vector<std::string>& names) {
  std::string out = title + ":\n";
  for (std::size_t k = 0; k < c.components.size(); ++k) {
    out += "  deg " + std::to_string(2 * k) + ": " + to_string(c.components[k], names) + "\n";
  }
  return out;
}

Outcome cmd_ring(const Options& opt, io::RunReport& report) {
  const ManifoldModel m = build_model(opt, report);
  const Basis basis = resolve_basis(opt, m);
  report.inputs.basis = basis_name(basis);
  const QuotientRing& ring = m.ring(basis);
  report.generators = ring.names;
  for (const auto& r : ring.relations.generators()) report.relations.push_back(io::encode(r));

  std::string text = "ring " + opt.family + "(" + std::to_string(opt.n) + ") basis " +
                     basis_name(basis) + "\n";
  text += "generators:";
  for (const auto& name : ring.names) text += " " + name;
  text += "\nrelations:\n";
  for (const auto& r : ring.relations.generators()) text += "  " + to_string(r, ring.names) + "\n";
  text += "groebner basis (" + std::string(GroebnerBasis::order_name()) + "):\n";
  for (const auto& g : ring.gb.elements()) text += "  " + to_string(g, ring.names) + "\n";
  text += "ranks:";
  for (const auto r : standard_monomials(ring.gb, static_cast<int>(m.real_dimension())).ranks()) {
    text += " " + std::to_string(r);
  }
  text += "\n";
  return {0, text};
}

Outcome cmd_classes(const Options& opt, io::RunReport& report) {
  const ManifoldModel m = build_model(opt, report);
  const Basis basis = resolve_basis(opt, m);
  report.inputs.basis = basis_name(basis);
  const auto& names = m.ring(basis).names;
  report.generators = names;

  const GradedClass total = total_sw(m, basis);
  const GradedClass dual = dual_sw(m, basis, total);
  const BoundReport bound = bound_from(static_cast<int>(m.real_dimension()), dual.top_degree());
  report.classes.push_back(io::class_record("total_sw", total, names));
  report.classes.push_back(io::class_record("dual_sw", dual, names));
  report.bound = bound;

  std::string text = "classes " + opt.family + "(" + std::to_string(opt.n) + ") basis " +
                     basis_name(basis) + "\n";
  text += render_class("total w", total, names);
  text += render_class("dual w", dual, names);
  text += "k_max: " + std::to_string(bound.k_max) + "\n";
  text += "bound: sw " + std::to_string(bound.sw_bound) + ", generic " +
          std::to_string(bound.generic_bound) + ", final " + std::to_string(bound.final_bound) +
          "\n";
  return {0, text};
}

Outcome cmd_sigma(const Options& opt, io::RunReport& report) {
  if (opt.n < 1) throw InvalidInput("--n must be positive");
  report.inputs.n = opt.n;
  report.inputs.check = opt.check;
  const auto table = sigma_table(static_cast<std::size_t>(opt.n));
  report.sigma_rows = table.rows;
  std::string text;
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) text += (k ? " " : "") + std::to_string(row[k]);
    text += "\n";
  }
  int status = 0;
  if (opt.check) {
    const int class_cap = std::min(opt.n, dimension_cap());
    const auto result = cross_check_sigma(opt.n, class_cap, {dimension_cap()});
    std::string detail = std::to_string(result.witnesses.size()) + " witnesses, " +
                         std::to_string(result.disagreements.size()) + " disagreements";
    for (const auto& w : result.disagreements) {
      detail += "; n=" + std::to_string(w.n) + " k=" + std::to_string(w.k) + " (" +
                std::to_string(w.recurrence_value) + "," + std::to_string(w.lucas_value) + "," +
                std::to_string(w.bruteforce_value) + ")";
    }
    report.verdicts.push_back({"sigma_cross_check", result.passed(), detail});
    text += std::string("check: ") + (result.passed() ? "pass" : "FAIL") + " (" + detail + ")\n";
    if (!result.passed()) status = kExitVerificationFailed;
  }
  return {status, text};
}

Outcome cmd_verify(const Options& opt, io::RunReport& report) {
  if (opt.n_max < 1 || opt.n_max > dimension_cap()) {
    throw InvalidInput("--n-max must be in 1.." + std::to_string(dimension_cap()));
  }
  report.inputs.n_max = opt.n_max;
  const auto results = run_verification(opt.n_max);
  std::string text;
  const CheckResult* first_failure = nullptr;
  for (const auto& r : results) {
    const std::string name = (r.n ? "n=" + std::to_string(r.n) + "/" : std::string{}) + r.name;
    report.verdicts.push_back({name, r.passed, r.detail});
    text += std::string(r.passed ? "PASS " : "FAIL ") + name +
            (r.detail.empty() ? "" : " (" + r.detail + ")") + "\n";
    if (!r.passed && first_failure == nullptr) first_failure = &r;
  }
  text += std::to_string(results.size()) + " checks, " +
          (first_failure ? "failures present" : "all passed") + "\n";
  if (first_failure != nullptr) {
    std::cerr << "first failing check: "
              << (first_failure->n ? "n=" + std::to_string(first_failure->n) + "/" : "")
              << first_failure->name << "\n";
    return {kExitVerificationFailed, text};
  }
  return {0, text};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology and Stiefel-Whitney classes of quasitoric manifolds over the cube"};
  app.require_subcommand(1);
  Options opt;

  const std::vector<std::string> families{"mi", "q", "custom"};
  const std::vector<std::string> formats{"text", "json"};
  auto add_model_flags = [&](CLI::App* sub) {
    sub->add_option("--family", opt.family, "mi | q | custom")
        ->check(CLI::IsMember(families));
    sub->add_option("--n", opt.n, "cube dimension")->required();
    sub->add_option("--basis", opt.basis, "u | t")->check(CLI::IsMember({"u", "t"}));
    sub->add_option("--matrix", opt.matrix_path, "characteristic matrix JSON (custom family)");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "text | json")->check(CLI::IsMember(formats));
  };

  CLI::App* ring = app.add_subcommand("ring", "print generators and relations");
  add_model_flags(ring);
  add_format(ring);
  CLI::App* classes = app.add_subcommand("classes", "total and dual Stiefel-Whitney classes");
  add_model_flags(classes);
  add_format(classes);
  CLI::App* sigma = app.add_subcommand("sigma", "sigma parity table");
  sigma->add_option("--n", opt.n, "number of rows")->required();
  sigma->add_flag("--check", opt.check, "cross-check against binomial parities and classes");
  add_format(sigma);
  CLI::App* verify = app.add_subcommand("verify", "run every invariant suite");
  verify->add_option("--n-max", opt.n_max, "largest dimension checked")->required();
  add_format(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  io::RunReport report;
  for (int i = 1; i < argc; ++i) report.args.emplace_back(argv[i]);
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome outcome;
    if (*ring) {
      report.command = "ring";
      outcome = cmd_ring(opt, report);
    } else if (*classes) {
      report.command = "classes";
      outcome = cmd_classes(opt, report);
    } else if (*sigma) {
      report.command = "sigma";
      outcome = cmd_sigma(opt, report);
    } else {
      report.command = "verify";
      outcome = cmd_verify(opt, report);
    }
    report.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (opt.format == "json") {
      std::cout << io::to_json(report).dump(2) << "\n";
    } else {
      std::cout << outcome.text;
    }
    return outcome.status;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}
