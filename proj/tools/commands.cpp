#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "cli.hpp"
#include "deltakit/arith.hpp"
#include "deltakit/characters.hpp"
#include "deltakit/delta.hpp"
#include "deltakit/errors.hpp"
#include "deltakit/expsums.hpp"
#include "deltakit/parallel.hpp"
#include "deltakit/pipeline.hpp"
#include "forms.hpp"
#include "suites.hpp"

namespace deltakit::cli {
namespace {

using modforms::FormId;
using pipeline::Rational;

struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool failed = false;

  static std::string field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + '"';
  }

  void write(std::ostream& os) const {
    for (const auto& c : comments) os << "# " << c << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << field(r[i]);
      os << '\n';
    }
  }
};

std::string num(double x) { return formatDouble(x); }
std::string num(std::int64_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }
std::string flag(bool b) { return b ? "true" : "false"; }

FormId formOrThrow(const std::string& name) {
  const auto id = modforms::parseFormId(name);
  if (!id) throw InvalidArgument("unknown form '" + name + "'");
  return *id;
}

std::vector<FormId> formsOrAll(const std::string& name) {
  if (name.empty() || name == "all") return modforms::allForms();
  return {formOrThrow(name)};
}

std::string formChoices() {
  std::string s;
  for (auto id : modforms::allForms()) s += (s.empty() ? "" : ", ") + std::string(modforms::formName(id));
  return s;
}

// Common options attached to every command.
struct Common {
  std::string out;
  int threads = 1;
};

void addCommon(CLI::App* sub, Common& common) {
  sub->add_option("--config", "Flat key = value file with # comments; command-line flags override it");
  sub->add_option("--out", common.out, "CSV output path (stdout when absent)");
  sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1, 256));
}

// ---------------------------------------------------------------------------

Table charactersTable(std::int64_t M) {
  Table t;
  t.comments = {"Dirichlet characters modulo " + std::to_string(M) +
                    " in enumeration order, with conductor and Gauss sum",
                "primitive characters have |gauss sum| = sqrt(M)"};
  t.columns = {"index", "order", "conductor", "primitive", "parity", "gauss_re", "gauss_im", "gauss_abs"};
  const auto chars = characters::enumerateCharacters(M);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const auto& chi = chars[i];
    const auto g = characters::gaussSum(chi);
    const bool even = M <= 2 || chi.exponent(M - 1) == 0;
    t.rows.push_back({num(static_cast<std::int64_t>(i)), num(chi.order()), num(chi.conductor()),
                      flag(chi.isPrimitive()), even ? "even" : "odd", num(g.real()), num(g.imag()),
                      num(std::abs(g))});
  }
  return t;
}

Table kloostermanTable(std::int64_t a, std::int64_t b, const std::vector<std::int64_t>& moduli,
                       expsums::KloostermanMethod method) {
  Table t;
  t.comments = {"Kloosterman sums S(a, b; c) against the Weil bound tau(c) sqrt(gcd(a, b, c)) sqrt(c)"};
  t.columns = {"a", "b", "c", "value", "weil_bound", "ratio"};
  for (std::int64_t c : moduli) {
    const auto s = expsums::kloosterman(a, b, c, method);
    const double value = s.nearestInteger ? static_cast<double>(*s.nearestInteger) : s.value;
    t.rows.push_back({num(a), num(b), num(c), num(value), num(s.weilBound), num(std::fabs(s.value) / s.weilBound)});
  }
  return t;
}

Table deltaTable(double Q, std::int64_t P, std::int64_t nmax, int variant) {
  const auto scheme = kernels::calibrate(kernels::DeltaScheme(Q, P, kernels::deltaBump(variant)));
  Table t;
  t.comments = {P == 1 ? "Heath-Brown delta decomposition; value is 1 at n = 0 and vanishes elsewhere"
                       : "conductor-lowered delta decomposition; value is 1 at n = 0 and vanishes elsewhere",
                "Q=" + num(Q) + " P=" + num(P) + " bump=" + num(variant) + " c_Q=" + num(scheme.cQ())};
  t.columns = {"n", "value"};
  for (std::int64_t n = -nmax; n <= nmax; ++n) {
    const double v = P == 1 ? kernels::deltaDecompose(n, scheme) : kernels::deltaDecomposeLowered(n, P, scheme);
    t.rows.push_back({num(n), num(v)});
  }
  return t;
}

Table voronoiTable(const std::vector<FormId>& forms, const std::vector<std::int64_t>& moduli, std::int64_t a,
                   int threads) {
  struct Case {
    FormId id;
    std::int64_t q;
  };
  std::vector<Case> cases;
  for (auto id : forms) {
    for (auto q : moduli) {
      if (arith::gcd(a, q) == 1) cases.push_back({id, q});
    }
  }
  std::vector<std::vector<std::string>> rows(cases.size());
  parallelFor(cases.size(), threads, [&](std::size_t i) {
    const auto& f = builtinForm(cases[i].id);
    const std::int64_t q = cases[i].q;
    const double X = pipeline::voronoiScale(q, f.level());
    const auto [h, h2] = pipeline::voronoiTestFunctions(X);
    std::vector<std::string> r = {std::string(modforms::formName(cases[i].id)), num(f.level()), num(q), num(a)};
    try {
      const auto rep = pipeline::voronoiVerify(f, a, q, h, h2);
      for (auto s : {flag(rep.ramified), num(rep.eta.real()), num(rep.eta.imag()),
                     num(std::fabs(std::abs(rep.eta) - 1.0)), num(rep.residual), num(rep.dualTerms), std::string()}) {
        r.push_back(s);
      }
    } catch (const Error& e) {
      r.insert(r.end(), {flag(f.level() > 1 && q % f.level() == 0), "", "", "", "", "", e.what()});
    }
    rows[i] = std::move(r);
  });
  Table t;
  t.comments = {"Voronoi summation: unit factor solved from one test function, residual measured on a second"};
  t.columns = {"form", "level", "q", "a", "ramified", "eta_re", "eta_im", "eta_modulus_error", "residual",
               "dual_terms", "note"};
  t.rows = std::move(rows);
  return t;
}

Table shiftedTable(FormId id, std::int64_t r, std::int64_t M, double X, double Y, int variant) {
  pipeline::ShiftedSumSpec s;
  s.f1 = s.f2 = &builtinForm(id);
  s.r = r;
  s.M = M;
  s.X = X;
  s.Y = Y;
  s.deltaVariant = variant;
  s.validate();
  const auto rep = pipeline::shiftedSumDelta(s);
  Table t;
  t.comments = {"shifted convolution sum by brute force and by the lowered delta method, split into strata",
                "bound is the shifted-sum estimate with epsilon = 0 and implied constant 1"};
  t.columns = {"form", "r", "M", "X", "Y", "Q", "c_Q", "q_max", "brute", "delta", "S1", "S2", "T",
               "identity_residual", "partition_residual", "bound", "ratio"};
  t.rows.push_back({std::string(modforms::formName(id)), num(r), num(M), num(X), num(Y), num(rep.Q), num(rep.cQ),
                    num(rep.qMax), num(rep.bruteValue), num(rep.deltaValue), num(rep.S1), num(rep.S2), num(rep.T),
                    num(rep.identityResidual), num(rep.partitionResidual), num(rep.boundValue),
                    num(std::fabs(rep.bruteValue) / rep.boundValue)});
  return t;
}

Table momentTable(FormId id, const std::vector<std::int64_t>& moduli, std::optional<double> fixedX,
                  std::optional<Rational> eta, double epsilon, int threads) {
  const auto& f = builtinForm(id);
  const auto h = kernels::unitBlockBump();
  std::vector<std::vector<std::string>> rows(moduli.size());
  parallelFor(moduli.size(), threads, [&](std::size_t i) {
    const std::int64_t M = moduli[i];
    const double cond = static_cast<double>(f.level()) * static_cast<double>(M) * static_cast<double>(M);
    const double X = fixedX ? *fixedX : std::sqrt(cond);
    const auto sides = pipeline::gaussOpenIdentity(f, M, X, h);
    const auto off = pipeline::offDiagonal(f, M, X, h);
    std::string bound;
    std::optional<Rational> e = eta;
    if (!e && M > 1) {
      const double approx = std::log(static_cast<double>(f.level())) / std::log(static_cast<double>(M));
      e = Rational(static_cast<std::int64_t>(std::llround(approx * 1000)), 1000);
    }
    if (e) {
      const auto budget = pipeline::exponentBudget(*e);
      const double delta = std::max(0.0, boost::rational_cast<double>(budget.delta));
      try {
        bound = num(pipeline::theorem1Bound(f.level(), M, X, delta, epsilon));
      } catch (const InvalidArgument&) {
        // X outside the admissible window: left blank.
      }
    }
    rows[i] = {std::string(modforms::formName(id)), num(M), num(X), num(sides.lhs), num(sides.rhs),
               num(off.diagonal), num(off.offDiagonal), num(off.rBound), num(off.allResidue), bound};
  });
  Table t;
  t.comments = {"second moment over primitive characters, its Gauss-sum opening and the diagonal split",
                "first_bound uses the conductor P M^2 window with epsilon = " + num(epsilon) + "; blank outside it"};
  if (f.level() == 1) t.comments.push_back("level 1: the first bound coincides with the classical level-one bound");
  t.columns = {"form", "M", "X", "second_moment", "gauss_rhs", "diagonal", "off_diagonal", "r_bound", "all_residue",
               "first_bound"};
  t.rows = std::move(rows);
  return t;
}

Table exponentTable(const std::vector<std::string>& etas) {
  Table t;
  t.comments = {"exponent budget: delta = (2 - 5 eta) / (10 (2 + eta)), final exponent 1/4 - delta/2",
                "subconvex exactly on 0 < eta < 2/5; without conductor lowering the range ends at 2/7"};
  t.columns = {"eta", "delta", "final_exponent", "subconvex", "classical_threshold", "blomer_harcos_displayed",
               "blomer_harcos_two_term"};
  for (const auto& text : etas) {
    const auto b = pipeline::exponentBudget(pipeline::parseRational(text));
    t.rows.push_back({pipeline::formatRational(b.eta), pipeline::formatRational(b.delta),
                      pipeline::formatRational(b.finalExponent), flag(b.subconvex),
                      pipeline::formatRational(b.classicalThreshold), pipeline::formatRational(b.blomerHarcosDisplayed),
                      pipeline::formatRational(b.blomerHarcosTwoTerm)});
  }
  return t;
}

Table verifyTable(int threads) {
  Table t;
  t.comments = {"verification suites; a check passes when measured <= limit; monitored checks never fail the run"};
  t.columns = {"suite", "title", "check", "status", "measured", "limit"};
  for (int s = 1; s <= kSuiteCount; ++s) {
    for (const auto& r : runSuite(s, threads)) {
      const std::string status = r.monitored ? (r.passed ? "monitored-pass" : "monitored-fail")
                                             : (r.passed ? "pass" : "fail");
      if (!r.passed && !r.monitored) t.failed = true;
      t.rows.push_back({num(s), suiteTitle(s), r.check, status, num(r.measured), num(r.limit)});
    }
  }
  return t;
}

bool givenOnCommandLine(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Splices the --config file of the chosen command into the argument list,
// ahead of the command-line flags and skipping keys given there.
std::vector<std::string> expandConfig(const std::vector<std::string>& args, CLI::App& app) {
  std::size_t commandAt = 0;
  CLI::App* sub = nullptr;
  for (std::size_t i = 1; i < args.size() && sub == nullptr; ++i) {
    sub = app.get_subcommand_no_throw(args[i]);
    commandAt = i;
  }
  if (sub == nullptr) return args;
  std::vector<std::string> rest;
  std::string configPath;
  for (std::size_t i = commandAt + 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      configPath = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      configPath = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  std::vector<std::string> out(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(commandAt) + 1);
  if (!configPath.empty()) {
    std::ifstream in(configPath);
    if (!in) throw InvalidArgument("cannot read config file " + configPath);
    for (const auto& item : CLI::ConfigTOML().from_config(in)) {
      const std::string key = item.fullname();
      const std::string flagName = "--" + key;
      if (key == "config" || sub->get_option_no_throw(flagName) == nullptr) {
        throw InvalidArgument("config key '" + key + "' is not an option of " + sub->get_name());
      }
      if (givenOnCommandLine(rest, flagName)) continue;
      std::string value;
      for (const auto& v : item.inputs) value += (value.empty() ? "" : ",") + v;
      out.push_back(flagName);
      out.push_back(value);
    }
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::filesystem::path outputPath(const std::string& out, const std::string& command) {
  const char* dir = std::getenv(kOutDirEnv);
  if (out.empty()) {
    if (dir == nullptr || *dir == '\0') return {};
    return std::filesystem::path(dir) / (command + ".csv");
  }
  std::filesystem::path p(out);
  if (p.is_relative() && dir != nullptr && *dir != '\0') p = std::filesystem::path(dir) / p;
  return p;
}

}  // namespace

std::string formatDouble(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"deltakit: delta-method, Voronoi and shifted-sum verification toolkit"};
  app.name(args.empty() ? "deltakit" : args[0]);
  app.require_subcommand(1);
  Common common;

  std::int64_t charM = 0;
  auto* chars = app.add_subcommand("characters", "Enumerate Dirichlet characters modulo M");
  chars->add_option("--M", charM, "Modulus")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{100000}));
  chars->footer("Columns: index, order, conductor, primitive, parity, gauss_re, gauss_im, gauss_abs");

  std::int64_t ka = 1, kb = 1, kc = 0, kcmax = 0;
  std::string method = "brute";
  auto* kl = app.add_subcommand("kloosterman", "Kloosterman sums and the Weil bound");
  kl->add_option("--a", ka, "First argument");
  kl->add_option("--b", kb, "Second argument");
  kl->add_option("--c", kc, "Modulus")->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}));
  kl->add_option("--cmax", kcmax, "Sweep c = 1..cmax instead of a single modulus")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000}));
  kl->add_option("--method", method, "brute or crt")->check(CLI::IsMember({"brute", "crt"}));
  kl->footer("Columns: a, b, c, value, weil_bound, ratio");

  double dQ = 0.0;
  std::int64_t dP = 1, nmax = 50;
  int bump = 0;
  auto* del = app.add_subcommand("delta", "Evaluate the delta decomposition for |n| <= nmax");
  del->add_option("--Q", dQ, "Modulus size Q > 1")->required();
  del->add_option("--P", dP, "1 for the plain scheme, a prime for the lowered scheme");
  del->add_option("--nmax", nmax, "Largest |n|")->check(CLI::Range(std::int64_t{0}, std::int64_t{100000}));
  del->add_option("--bump", bump, "Weight variant 0, 1 or 2")->check(CLI::Range(0, 2));
  del->footer("Columns: n, value");

  std::string vform;
  std::vector<std::int64_t> vq = {1, 2, 3, 4};
  std::int64_t va = 1;
  auto* vor = app.add_subcommand("voronoi", "Solve and cross-check the Voronoi unit factor");
  vor->add_option("--form", vform, "Form id or 'all' (" + formChoices() + ")");
  vor->add_option("--q", vq, "Moduli (comma separated)")->delimiter(',')->check(CLI::Range(std::int64_t{1}, std::int64_t{50}));
  vor->add_option("--a", va, "Numerator of the additive twist");
  vor->footer("Columns: form, level, q, a, ramified, eta_re, eta_im, eta_modulus_error, residual, dual_terms, note");

  std::string sform = "E2_11_2";
  std::int64_t sr = 1, sM = 2;
  double sX = 40.0, sY = 0.0;
  int sbump = 0;
  auto* sh = app.add_subcommand("shifted", "Shifted convolution sum: brute force, delta method and strata");
  sh->add_option("--form", sform, "Form id (" + formChoices() + ")");
  sh->add_option("--r", sr, "Shift multiplier, coprime to the level");
  sh->add_option("--M", sM, "Squarefree modulus coprime to the level");
  sh->add_option("--X", sX, "Scale of n")->check(CLI::Range(1.0, 2000.0));
  sh->add_option("--Y", sY, "Scale of m (defaults to X)")->check(CLI::Range(1.0, 2000.0));
  sh->add_option("--bump", sbump, "Delta weight variant 0, 1 or 2")->check(CLI::Range(0, 2));
  sh->footer("Columns: form, r, M, X, Y, Q, c_Q, q_max, brute, delta, S1, S2, T, identity_residual, "
             "partition_residual, bound, ratio");

  std::string mform = "Delta_1_12";
  std::vector<std::int64_t> mM = {3};
  double mX = 0.0;
  std::string meta;
  double mepsilon = 0.01;
  auto* mom = app.add_subcommand("moment", "Second moment, Gauss-sum opening and off-diagonal split");
  mom->add_option("--form", mform, "Form id (" + formChoices() + ")");
  mom->add_option("--M", mM, "Squarefree moduli (comma separated)")->delimiter(',')
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{2000}));
  mom->add_option("--X", mX, "Length (defaults to sqrt(P M^2))")->check(CLI::Range(1.0, 1500.0));
  mom->add_option("--eta", meta, "Exact eta for the bound window (defaults to log P / log M to 3 places)");
  mom->add_option("--epsilon", mepsilon, "Window slack epsilon")->check(CLI::Range(0.0, 1.0));
  mom->footer("Columns: form, M, X, second_moment, gauss_rhs, diagonal, off_diagonal, r_bound, all_residue, "
              "first_bound");

  std::vector<std::string> etas;
  auto* ex = app.add_subcommand("exponent", "Exact exponent budget for eta");
  ex->add_option("--eta", etas, "Rationals p/q (comma separated)")->required()->delimiter(',');
  ex->footer("Columns: eta, delta, final_exponent, subconvex, classical_threshold, blomer_harcos_displayed, "
             "blomer_harcos_two_term");

  auto* ver = app.add_subcommand("verify-all", "Run every verification suite");
  ver->footer("Columns: suite, title, check, status, measured, limit");

  for (auto* sub : {chars, kl, del, vor, sh, mom, ex, ver}) addCommon(sub, common);

  std::vector<std::string> expanded;
  try {
    expanded = expandConfig(args, app);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  Table table;
  std::string command;
  try {
    if (*chars) {
      command = "characters";
      table = charactersTable(charM);
    } else if (*kl) {
      command = "kloosterman";
      std::vector<std::int64_t> moduli;
      if (kcmax > 0) {
        for (std::int64_t c = 1; c <= kcmax; ++c) moduli.push_back(c);
      } else if (kc > 0) {
        moduli.push_back(kc);
      } else {
        throw InvalidArgument("kloosterman: give --c or --cmax");
      }
      table = kloostermanTable(ka, kb, moduli,
                               method == "crt" ? expsums::KloostermanMethod::Crt : expsums::KloostermanMethod::Brute);
    } else if (*del) {
      command = "delta";
      table = deltaTable(dQ, dP, nmax, bump);
    } else if (*vor) {
      command = "voronoi";
      table = voronoiTable(formsOrAll(vform), vq, va, common.threads);
    } else if (*sh) {
      command = "shifted";
      table = shiftedTable(formOrThrow(sform), sr, sM, sX, sY > 0.0 ? sY : sX, sbump);
    } else if (*mom) {
      command = "moment";
      std::optional<Rational> eta;
      if (!meta.empty()) eta = pipeline::parseRational(meta);
      table = momentTable(formOrThrow(mform), mM, mX > 0.0 ? std::optional<double>(mX) : std::nullopt, eta, mepsilon,
                          common.threads);
    } else if (*ex) {
      command = "exponent";
      table = exponentTable(etas);
    } else if (*ver) {
      command = "verify-all";
      table = verifyTable(common.threads);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const auto path = outputPath(common.out, command);
  if (path.empty()) {
    table.write(out);
  } else {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << path.string() << '\n';
      return 1;
    }
    table.write(file);
  }
  if (table.failed) {
    err << command << ": at least one check failed\n";
    return 1;
  }
  return 0;
}

}  // namespace deltakit::cli
