// qstokes: evaluate q-special functions, verify connection formulas, scan limits.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qstokes/cli.hpp"

namespace {

struct Flags {
  std::optional<double> q;
  std::optional<std::string> a1, a2, a3, b1, b2;
  double lambda_re = 1.1 * std::cos(0.7), lambda_im = 1.1 * std::sin(0.7);
  std::optional<double> x_re, x_im;
  std::optional<double> alpha1, alpha2, alpha3, beta1;
  std::optional<double> tol;
  std::optional<long> max_terms, n;
  std::uint64_t seed = 7;
  long samples = 0;
  std::string format = "json";
  std::string profile = "paper-default";
  std::string k = "4..10";
  int lambda_grid = 8;
  std::string target;
};

/// "re" or "re,im".
qstokes::cplx parse_complex_flag(const std::string& name, const std::string& s) {
  try {
    const std::size_t comma = s.find(',');
    std::size_t pos = 0;
    const double re = std::stod(s.substr(0, comma), &pos);
    if (pos != s.substr(0, comma).size()) throw std::invalid_argument(s);
    if (comma == std::string::npos) return {re, 0.0};
    const std::string tail = s.substr(comma + 1);
    const double im = std::stod(tail, &pos);
    if (pos != tail.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::exception&) {
    throw qstokes::Error(qstokes::ErrorKind::invalid_argument, "--" + name + " expects RE or RE,IM, got '" + s + "'");
  }
}

void add_common(CLI::App& app, Flags& f) {
  app.add_option("--q", f.q, "base q in (0,1)");
  app.add_option("--a1", f.a1, "upper parameter a1 (RE or RE,IM)");
  app.add_option("--a2", f.a2, "upper parameter a2");
  app.add_option("--a3", f.a3, "upper parameter a3");
  app.add_option("--b1", f.b1, "lower parameter b1");
  app.add_option("--b2", f.b2, "lower parameter b2");
  app.add_option("--lambda-re", f.lambda_re, "spiral direction, real part");
  app.add_option("--lambda-im", f.lambda_im, "spiral direction, imaginary part");
  app.add_option("--x-re", f.x_re, "evaluation point, real part");
  app.add_option("--x-im", f.x_im, "evaluation point, imaginary part");
  app.add_option("--alpha1", f.alpha1, "a1 = q^alpha1");
  app.add_option("--alpha2", f.alpha2, "a2 = q^alpha2");
  app.add_option("--alpha3", f.alpha3, "a3 = q^alpha3");
  app.add_option("--beta1", f.beta1, "b1 = q^beta1");
  app.add_option("--tol", f.tol, "override the check tolerance");
  app.add_option("--max-terms", f.max_terms, "series truncation cap");
  app.add_option("--seed", f.seed, "sampling seed");
  app.add_option("--samples", f.samples, "number of sample points (0: suite default)");
  app.add_option("--format", f.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--profile", f.profile, "parameter profile")->check(CLI::IsMember({"paper-default"}));
}

qstokes::RunConfig to_config(const std::string& command, const Flags& f) {
  qstokes::RunConfig c;
  c.command = command;
  c.target = f.target;
  c.format = qstokes::parse_format(f.format);
  auto& o = c.opts;
  o.q = f.q;
  if (f.a1) o.a1 = parse_complex_flag("a1", *f.a1);
  if (f.a2) o.a2 = parse_complex_flag("a2", *f.a2);
  if (f.a3) o.a3 = parse_complex_flag("a3", *f.a3);
  if (f.b1) o.b1 = parse_complex_flag("b1", *f.b1);
  if (f.b2) o.b2 = parse_complex_flag("b2", *f.b2);
  o.lambda = {f.lambda_re, f.lambda_im};
  if (f.x_re || f.x_im) o.x = qstokes::cplx(f.x_re.value_or(0.0), f.x_im.value_or(0.0));
  o.tol = f.tol;
  o.samples = f.samples;
  o.seed = f.seed;
  if (f.max_terms) o.tr.max_terms = *f.max_terms;
  if (f.alpha1 || f.alpha2 || f.alpha3) {
    if (!(f.alpha1 && f.alpha2 && f.alpha3)) {
      throw qstokes::Error(qstokes::ErrorKind::invalid_argument, "--alpha1, --alpha2 and --alpha3 must be given together");
    }
    c.alpha = std::array<qstokes::cplx, 3>{*f.alpha1, *f.alpha2, *f.alpha3};
  }
  if (f.beta1) c.beta1 = *f.beta1;
  if (f.n) c.n = *f.n;
  std::tie(c.k_first, c.k_last) = qstokes::parse_k_range(f.k);
  c.lambda_grid = f.lambda_grid;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Borel/q-Laplace resummation of 3phi1: evaluation, verification and limit scans"};
  app.require_subcommand(1);
  Flags f;

  auto* eval = app.add_subcommand("eval", "evaluate a function");
  eval->add_option("target", f.target, "poch | theta | qgamma | phi | f31")
      ->required()
      ->check(CLI::IsMember({"poch", "theta", "qgamma", "phi", "f31"}));
  eval->add_option("--n", f.n, "finite length for poch (omit for the infinite product)");
  add_common(*eval, f);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("target", f.target)
      ->required()
      ->check(CLI::IsMember({"triple-product", "roundtrip", "watson", "slater", "lemma-ni", "main", "elliptic",
                             "residual", "recurrence"}));
  add_common(*verify, f);

  auto* scan = app.add_subcommand("scan", "parameter scans");
  scan->add_option("target", f.target, "limit | stokes")->required()->check(CLI::IsMember({"limit", "stokes"}));
  scan->add_option("--k", f.k, "dyadic schedule q = 1 - 2^-k, as K1..K2");
  scan->add_option("--lambda-grid", f.lambda_grid, "number of spiral directions for the Stokes scan");
  add_common(*scan, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qstokes::kExitConfig;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    return qstokes::run(to_config(command, f), std::cout, std::cerr);
  } catch (const qstokes::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qstokes::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qstokes::kExitConfig;
  }
}
