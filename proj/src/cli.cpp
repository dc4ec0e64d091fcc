#include "eqlines/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "eqlines/certificate.hpp"
#include "eqlines/constraints.hpp"
#include "eqlines/constructions.hpp"
#include "eqlines/errors.hpp"
#include "eqlines/gegenbauer.hpp"
#include "eqlines/gram.hpp"
#include "eqlines/parallel.hpp"

namespace eqlines::cli {

namespace {

/// Usage problems detected after CLI parsing (bad parameter values).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Emits either prose lines or `key = value` lines.
class Report {
 public:
  Report(std::ostream& out, bool machine, int precision) : out_(out), machine_(machine), precision_(precision) {}

  bool machine() const { return machine_; }
  int precision() const { return precision_; }

  void number(const std::string& key, const Rational& value) {
    out_ << key << " = " << value;
    if (!machine_ && !value.is_integer()) out_ << " ~ " << value.decimal(precision_);
    out_ << '\n';
  }
  void text(const std::string& key, const std::string& value) { out_ << key << " = " << value << '\n'; }
  void flag(const std::string& key, bool value) { text(key, value ? "true" : "false"); }
  /// Prose-only line.
  void line(const std::string& s) {
    if (!machine_) out_ << s << '\n';
  }
  void matrix(const std::string& key, const RatMatrix& m) {
    if (machine_) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        out_ << key << '[' << i << "] =";
        for (std::size_t j = 0; j < m.cols(); ++j) out_ << ' ' << m(i, j);
        out_ << '\n';
      }
    } else {
      out_ << key << " =\n" << m.str();
      if (!m.str().empty() && m.str().back() != '\n') out_ << '\n';
    }
  }

 private:
  std::ostream& out_;
  bool machine_;
  int precision_;
};

Rational parse_alpha(const std::string& text) {
  Rational a;
  try {
    a = Rational::parse(text);
  } catch (const ParseError&) {
    throw UsageError("--alpha: not a rational: " + text);
  }
  if (a.sign() <= 0 || a >= Rational(1)) throw UsageError("--alpha must lie in (0, 1)");
  return a;
}

int cmd_bound(Report& r, int a) {
  const DimensionRow row = dimension_row(a, r.precision());
  r.number("a", a);
  r.number("D3", row.d3);
  r.number("D4_lo", row.d4.lo);
  r.number("D4_hi", row.d4.hi);
  r.text("D4", row.d4_text);
  r.number("floor_D4", d4_floor(a));
  r.number("bound", Rational(line_bound(a)));
  return kExitOk;
}

int cmd_certificate(Report& r, int a, long d) {
  const CertificateReport rep = certify_bound(a, d);
  r.number("a", a);
  r.number("d", d);
  if (!rep.certificate.F.rows()) {
    r.flag("certified", false);
    r.text("reason", rep.reason);
    r.line("Not certified: " + rep.reason);
    return kExitVerificationFailed;
  }
  const DualCertificate& c = rep.certificate;
  r.number("f1", c.f1);
  r.number("f2", c.f2);
  r.matrix("F", c.F);
  for (const auto& [name, value] : c.minors) r.number(name, value);
  r.number("g_a(d)", c.ga_at_d);
  r.flag("boundary", rep.boundary);
  r.flag("closed_forms_agree", rep.closed_forms_agree);
  r.flag("pairing_identity", rep.pairing_holds);
  r.flag("null_vector", rep.null_vector_holds);
  r.flag("certified", rep.certified);
  r.number("bound", Rational(rep.bound));
  if (rep.certified) {
    r.line("Certified: N ≤ " + rep.bound.get_str());
    return kExitOk;
  }
  if (r.machine()) r.text("reason", rep.reason);
  r.line("Not certified: " + rep.reason);
  return kExitVerificationFailed;
}

int cmd_table3(Report& r, std::ostream& out) {
  if (!r.machine()) out << std::setw(3) << "a" << std::setw(6) << "D3" << std::setw(10) << "D4" << '\n';
  for (int a : kSmallA) {
    const DimensionRow row = dimension_row(a, r.precision());
    if (r.machine()) {
      const std::string tag = "[" + std::to_string(a) + "]";
      r.number("D3" + tag, row.d3);
      r.text("D4" + tag, row.d4_text);
      r.number("D4_lo" + tag, row.d4.lo);
      r.number("D4_hi" + tag, row.d4.hi);
    } else {
      out << std::setw(3) << a << std::setw(6) << row.d3 << std::setw(10) << row.d4_text << '\n';
    }
  }
  return kExitOk;
}

int cmd_classes(Report& r, std::ostream& out, int n) {
  if (n < 1 || n > kMaxEnumerationOrder) {
    throw UsageError("classes: n must be in 1.." + std::to_string(kMaxEnumerationOrder));
  }
  const auto classes = enumerate_classes(n);
  if (r.machine()) {
    r.number("n", n);
    r.number("classes", static_cast<long>(classes.size()));
  } else {
    out << classes.size() << " classes\n";
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::string pattern = classes[i].key.str();
    if (pattern.empty()) pattern = "(empty)";
    if (r.machine()) {
      r.text("class[" + std::to_string(i + 1) + "]", pattern);
      r.number("orbit[" + std::to_string(i + 1) + "]", static_cast<long>(classes[i].orbit_size));
    } else {
      out << std::setw(3) << i + 1 << "  " << pattern << "  orbit " << classes[i].orbit_size << '\n';
    }
  }
  return kExitOk;
}

bool report_matrix(Report& r, const std::string& tag, const ConstraintMatrix& c, bool explore) {
  const PsdVerdict verdict = psd_check(c.matrix);
  std::string labels;
  for (const auto& l : c.labels) labels += (labels.empty() ? "" : " ") + l;
  r.line("[" + tag + "] " + to_string(c.kind) + ", order " + std::to_string(c.matrix.rows()));
  r.text(tag + ".basis", labels);
  r.matrix(tag + ".matrix", c.matrix);
  r.flag(tag + ".psd", verdict.psd);
  r.number(tag + ".rank", static_cast<long>(rank(c.matrix)));
  if (!verdict.psd) {
    std::string w;
    for (const auto& x : verdict.witness) w += (w.empty() ? "" : " ") + x.str();
    r.text(tag + ".witness", w);
  }
  if (explore) {
    const auto minors = leading_principal_minors(c.matrix);
    for (std::size_t i = 0; i < minors.size(); ++i) r.number(tag + ".minor" + std::to_string(i + 1), minors[i]);
  }
  return verdict.psd;
}

int cmd_check(Report& r, const Configuration& x, int max_k, bool explore) {
  r.number("N", static_cast<long>(x.size()));
  r.number("d", x.dimension());
  r.number("alpha", *x.alpha());
  bool ok = true;
  for (int k = 0; k <= max_k; ++k) {
    const Rational lp = lp_value(x, k);
    const std::string tag = "m0.k" + std::to_string(k);
    r.number(tag + ".lp", lp);
    ok = ok && lp.sign() >= 0;
  }
  if (x.dimension() < 3) {
    r.line("dimension below 3: no multipoint constraints");
  } else {
    for (int k = 0; k <= max_k; ++k) {
      ok = report_matrix(r, "m1.k" + std::to_string(k), build_alt_threepoint(x, k), explore) && ok;
    }
  }
  if (x.dimension() < 4) {
    r.line("dimension below 4: no four-point constraints");
  } else {
    const GramMatrix g = GramMatrix::pair(*x.alpha());
    const MultipointCounts counts = multipoint(x, g);
    for (int k = 0; k <= max_k; ++k) {
      ok = report_matrix(r, "m2.k" + std::to_string(k), build_reduced(x, k, g), explore) && ok;
    }
    const auto violations = degeneration_violations(counts);
    r.flag("degeneration_rules", violations.empty());
    ok = ok && violations.empty();
  }
  r.flag("all_constraints_hold", ok);
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_srg(Report& r, const Configuration& x, std::size_t base) {
  const auto a = integer_a(x);
  if (!a) throw NotExtremal("alpha is not the reciprocal of an integer");
  const SrgReport rep = srg_extract(x, base);
  const SrgParameters predicted = predicted_srg(*a);
  const long a2 = *a * *a;
  const Rational ar = *a;
  const Rational k = rep.parameters.k;
  const long v = rep.parameters.v;
  const Spectrum adjacency_expected{{-(ar + 1) / 2, v - a2 + 2}, {k / (ar + 1), a2 - 3}, {k, 1}};
  const Spectrum gram_expected{{0, v - a2 + 3}, {Rational(a2) / 2, a2 - 3}};

  const bool params_ok = rep.parameters == predicted;
  const bool lambda_ok = lambda_identity_check(rep.parameters, *a);
  const bool mu_ok = 2 * rep.parameters.mu == rep.parameters.k;
  const bool adj_ok = rep.adjacency_spectrum == adjacency_expected && rep.charpoly_factors;
  const bool gram_ok = rep.gram_spectrum == gram_expected && rep.gram_formula_holds;

  r.number("a", *a);
  r.number("base", static_cast<long>(base));
  r.text("parameters", rep.parameters.str());
  r.text("predicted", predicted.str());
  r.flag("parameters_match", params_ok);
  r.flag("lambda_identity", lambda_ok);
  r.flag("mu_is_half_k", mu_ok);
  r.text("adjacency_spectrum", spectrum_str(rep.adjacency_spectrum));
  r.flag("charpoly_factors", rep.charpoly_factors);
  r.text("derived_gram_spectrum", spectrum_str(rep.gram_spectrum));
  r.flag("derived_gram_formula", rep.gram_formula_holds);
  const bool ok = params_ok && lambda_ok && mu_ok && adj_ok && gram_ok;
  r.flag("verified", ok);
  return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact bounds and audits for equiangular lines", "eqlines"};
  app.require_subcommand(1);
  app.fallthrough();

  bool machine = false;
  int precision = 2;
  app.add_flag("--machine", machine, "Print key = value lines");
  app.add_option("--precision", precision, "Decimal places in approximations")->check(CLI::Range(0, 60));

  int a = 0;
  long d = 0;
  int n = 0;
  int max_k = kDefaultMaxDegree;
  bool explore = false;
  std::string file;
  std::string alpha_text;
  std::string out_path;
  std::size_t base = 0;

  auto* bound = app.add_subcommand("bound", "D3(a), D4(a), floor(D4(a)) and the line bound");
  bound->add_option("a", a, "odd integer >= 3")->required();

  auto* certificate = app.add_subcommand("certificate", "Verify the dual certificate at (a, d)");
  certificate->add_option("a", a, "odd integer >= 3")->required();
  certificate->add_option("d", d, "dimension >= 4")->required();

  auto* table3 = app.add_subcommand("table3", "D3 and D4 for a = 3, 5, 7, 9, 11");

  auto* classes = app.add_subcommand("classes", "Switching classes of n-point sign patterns");
  classes->add_option("n", n, "1..7")->required();

  auto* check = app.add_subcommand("check", "Constraint matrices of a configuration");
  check->add_option("file", file, "Gram file")->required();
  check->add_option("--alpha", alpha_text, "common angle p/q")->required();
  check->add_option("--max-k", max_k, "largest degree")->check(CLI::Range(0, 40));
  check->add_flag("--explore", explore, "Also print leading principal minors");

  auto* gen = app.add_subcommand("gen28", "Write the 28-line configuration");
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* srg = app.add_subcommand("srg", "Strongly regular graph of the derived code");
  srg->add_option("file", file, "Gram file")->required();
  srg->add_option("--alpha", alpha_text, "common angle p/q")->required();
  srg->add_option("--base", base, "base point index");

  std::vector<std::string> argv_store{"eqlines"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  Report report(out, machine, precision);
  const auto start = std::chrono::steady_clock::now();
  std::string name;
  int code = kExitOk;
  try {
    if (bound->parsed()) {
      name = "bound";
      code = cmd_bound(report, a);
    } else if (certificate->parsed()) {
      name = "certificate";
      code = cmd_certificate(report, a, d);
    } else if (table3->parsed()) {
      name = "table3";
      code = cmd_table3(report, out);
    } else if (classes->parsed()) {
      name = "classes";
      code = cmd_classes(report, out, n);
    } else if (check->parsed()) {
      name = "check";
      const Configuration x = load_configuration(file, parse_alpha(alpha_text));
      code = cmd_check(report, x, max_k, explore);
    } else if (gen->parsed()) {
      name = "gen28";
      const std::string text = format_configuration(gen28());
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(out_path);
        if (!(f << text)) throw UsageError("cannot write " + out_path);
        report.text("wrote", out_path);
      }
    } else if (srg->parsed()) {
      name = "srg";
      const Configuration x = load_configuration(file, parse_alpha(alpha_text));
      code = cmd_srg(report, x, base);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BadA& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BadDimension& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotPSD& e) {
    err << "verification failed: " << e.what() << "; witness:";
    for (const auto& w : e.witness()) err << ' ' << w;
    err << '\n';
    return kExitVerificationFailed;
  } catch (const NotStronglyRegular& e) {
    err << "verification failed: " << e.what() << " (vertices " << e.first() << ", " << e.second() << ")\n";
    return kExitVerificationFailed;
  } catch (const Error& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "[" << name << "] " << std::fixed << std::setprecision(3) << seconds << " s, " << worker_count()
      << " worker(s)\n";
  return code;
}

}  // namespace eqlines::cli
