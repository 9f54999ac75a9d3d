#include "cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "jordan/jordan.hpp"

namespace jordan::cli {
namespace {

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

double parse_real(std::string_view text, std::size_t offset) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("invalid number '" + std::string(text) + "'", offset);
  return v;
}

// Accepts 1.5, -2, 2i, -i, 1.5-3i, 1e-3+2e-1i.
Complex parse_complex(std::string_view tok, std::size_t offset) {
  if (tok.empty()) throw ParseError("empty coefficient", offset);
  if (tok.back() != 'i' && tok.back() != 'j') return parse_real(tok, offset);
  const std::string_view body = tok.substr(0, tok.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag = [&](std::string_view s, std::size_t at) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, at);
  };
  if (split == std::string_view::npos) return {0.0, imag(body, offset)};
  return {parse_real(body.substr(0, split), offset), imag(body.substr(split), offset + split)};
}

struct Token {
  std::string text;
  std::size_t offset;
};

std::vector<Token> split_tokens(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (i < text.size()) {
    while (i < text.size() && sep(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !sep(text[i])) ++i;
    if (i > start) out.push_back({text.substr(start, i - start), start});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read element file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

unsigned thread_count() {
  const char* env = std::getenv("JORDAN_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  unsigned n = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || ptr != s.data() + s.size() || n == 0)
    throw PreconditionFailed("JORDAN_THREADS must be a positive integer");
  return n;
}

// ---------------------------------------------------------------- validate

struct Invariant {
  std::string name;
  double tolerance;
  std::function<double(const Element&, const Element&)> residual;
  bool matrix_only = false;
};

double rel(const Matrix& got, const Matrix& want) { return (got - want).norm() / std::max(1.0, want.norm()); }

std::vector<Invariant> invariant_suite() {
  return {
      {"unit", 1e-12,
       [](const Element& a, const Element&) {
         return (jordan_mul(unit_element(a.algebra()), a) - a).norm() / std::max(1.0, a.norm());
       }},
      {"commutativity", 0.0, [](const Element& a, const Element& b) { return (jordan_mul(a, b) - jordan_mul(b, a)).norm(); }},
      {"jordan_identity", 1e-10,
       [](const Element& a, const Element& b) {
         const Element a2 = jordan_square(a);
         const double scale = std::pow(1.0 + a.norm(), 3) * (1.0 + b.norm());
         return (jordan_mul(jordan_mul(a2, b), a) - jordan_mul(jordan_mul(a, b), a2)).norm() / scale;
       }},
      {"linearized_U", 1e-10,
       [](const Element& a, const Element& c) {
         const Matrix lhs = U_operator(a + c).entries();
         const Matrix rhs = U_operator(a).entries() + 2.0 * U_pair_operator(a, c).entries() + U_operator(c).entries();
         return rel(rhs, lhs);
       }},
      {"fundamental_formula", 1e-9,
       [](const Element& a, const Element& b) {
         const OperatorMatrix ua = U_operator(a);
         return rel(U_operator(U_apply(a, b)).entries(), (ua * U_operator(b) * ua).entries());
       }},
      {"power_associativity", 1e-9,
       [](const Element& a, const Element&) {
         double worst = 0.0;
         for (std::uint64_t n = 1; n <= 8; ++n) {
           for (std::uint64_t m = 1; m <= 8; ++m) {
             const Element whole = jordan_power(a, n + m);
             worst = std::max(worst, (jordan_mul(jordan_power(a, n), jordan_power(a, m)) - whole).norm() /
                                         std::max(1.0, whole.norm()));
           }
         }
         return worst;
       }},
      {"special_product", 1e-12,
       [](const Element& a, const Element& b) {
         const Matrix ma = to_matrix(a), mb = to_matrix(b);
         return std::max(rel(to_matrix(jordan_mul(a, b)), 0.5 * (ma * mb + mb * ma)),
                         rel(to_matrix(U_apply(a, b)), ma * mb * ma));
       },
       true},
  };
}

int run_validate(const ExperimentConfig& cfg, const AlgebraPtr& alg, std::ostream& out) {
  Rng rng(cfg.seed);
  std::vector<std::pair<Element, Element>> samples;
  for (int i = 0; i < cfg.samples; ++i) {
    Element a = random_element(alg, rng);
    Element b = random_element(alg, rng);
    samples.emplace_back(std::move(a), std::move(b));
  }
  out << "invariant,max_residual,tolerance,result\n";
  bool all = true;
  for (const Invariant& inv : invariant_suite()) {
    if (inv.matrix_only && alg->family() != Family::matrix) continue;
    const auto it = cfg.tolerances.find(inv.name);
    const double tol = it == cfg.tolerances.end() ? inv.tolerance : it->second;
    double worst = 0.0;
    for (const auto& [a, b] : samples) worst = std::max(worst, inv.residual(a, b));
    const bool ok = worst <= tol;
    all = all && ok;
    out << inv.name << ',' << fmt(worst) << ',' << fmt(tol) << ',' << (ok ? "PASS" : "FAIL") << '\n';
  }
  return all ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------- spectrum

int run_spectrum(const ExperimentConfig& cfg, const AlgebraPtr& alg, std::ostream& out) {
  const Vector coeffs = parse_coefficients(cfg.element);
  if (coeffs.size() != alg->dim())
    throw ParseError("expected " + std::to_string(2 * alg->dim()) + " real,imag values for " + cfg.algebra + ", got " +
                         std::to_string(2 * coeffs.size()),
                     0);
  const SpectrumSet s = jordan_spectrum(Element(alg, coeffs));
  const double snap = 1e-12 * std::max(1.0, s.spectral_radius());
  std::vector<Complex> pts;
  for (Complex z : s.points()) {
    pts.emplace_back(std::abs(z.real()) < snap ? 0.0 : z.real(), std::abs(z.imag()) < snap ? 0.0 : z.imag());
  }
  std::sort(pts.begin(), pts.end(), [](Complex p, Complex q) {
    return p.real() != q.real() ? p.real() > q.real() : p.imag() > q.imag();
  });
  for (Complex z : pts) out << fmt(z.real()) << ',' << fmt(z.imag()) << '\n';
  return kExitPass;
}

// ---------------------------------------------------------------- trotter

void write_csv(const ExperimentConfig& cfg, FormulaId id, const ConvergenceReport& r, std::ostream& out) {
  out << "formula,algebra,seed,n,error\n";
  for (std::size_t i = 0; i < r.n_grid.size(); ++i) {
    out << to_string(id) << ',' << cfg.algebra << ',' << cfg.seed << ',' << r.n_grid[i] << ',' << fmt(r.errors[i])
        << '\n';
  }
  out << "# fitted_slope," << (r.fitted_slope ? fmt(*r.fitted_slope) : std::string("undefined")) << '\n';
  out << "# target_norm," << fmt(r.target_norm) << '\n';
  if (!r.skipped.empty()) {
    out << "# skipped";
    for (std::uint64_t n : r.skipped) out << ',' << n;
    out << '\n';
  }
}

int run_trotter(const ExperimentConfig& cfg, const AlgebraPtr& alg, std::ostream& out) {
  if (!cfg.formula) throw PreconditionFailed("trotter needs --formula");
  const FormulaId id = parse_formula(*cfg.formula);
  const auto grid = geometric_grid(cfg.grid.min, cfg.grid.max, cfg.grid.ratio);

  Rng rng(cfg.seed);
  Element a = random_element(alg, rng);
  Element b = random_element(alg, rng);
  Element c = random_element(alg, rng);
  Element d = random_element(alg, rng);
  const TrotterInputs in{std::move(a), std::move(b), std::move(c), std::move(d)};
  const ConvergenceReport r = convergence_report(id, in, grid, thread_count());

  if (cfg.out_path) {
    std::ofstream file(*cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw PreconditionFailed("cannot write '" + *cfg.out_path + "'");
    write_csv(cfg, id, r, file);
  } else {
    write_csv(cfg, id, r, out);
  }
  const bool converging = r.exact() || r.errors.back() < r.errors.front();
  return converging ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------- functional

FunctionalHandle builtin_functional(const std::string& name, const AlgebraPtr& alg) {
  if (name == "trace") return normalized_trace(alg);
  const auto colon = name.find(':');
  if (colon == std::string::npos) throw ParseError("unknown functional '" + name + "'", 0);
  const std::string kind = name.substr(0, colon);
  const std::string idx = name.substr(colon + 1);
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
  if (idx.empty() || ec != std::errc{} || ptr != idx.data() + idx.size())
    throw ParseError("invalid character index in '" + name + "'", colon + 1);
  const auto chars = characters(alg);
  if (index >= chars.size())
    throw ParseError("character index out of range (" + std::to_string(chars.size()) + " available)", colon + 1);
  if (kind == "char") return chars[index];
  if (kind == "negchar") return negated(chars[index]);
  if (kind == "sqchar") return squared(chars[index]);
  throw ParseError("unknown functional kind '" + kind + "'", 0);
}

void print_report(const CharacterReport& r, double tol, std::ostream& out) {
  const std::pair<const char*, double> rows[] = {
      {"spectral", r.spectral_residual},         {"U_multiplicative", r.U_mult_residual},
      {"linearity", r.linearity_residual},       {"membership", r.membership_residual},
      {"exp", r.exp_residual},                   {"exp_image", r.exp_image_residual},
      {"multiplicativity", r.multiplicativity_residual}, {"agreement", r.agreement_residual},
  };
  out << "check,residual,tolerance,result\n";
  for (const auto& [name, value] : rows)
    out << name << ',' << fmt(value) << ',' << fmt(tol) << ',' << (value <= tol ? "PASS" : "FAIL") << '\n';
  out << "# unit_value," << fmt(r.unit_value.real()) << ',' << fmt(r.unit_value.imag()) << '\n';
  out << "# unit_sign," << r.unit_sign << '\n';
  for (const std::string& note : r.notes) out << "# " << note << '\n';
}

int run_functional(const ExperimentConfig& cfg, const AlgebraPtr& alg, std::ostream& out) {
  if (cfg.functional.empty()) throw PreconditionFailed("functional needs --functional");
  const auto it = cfg.tolerances.find("character");
  const double tol = it == cfg.tolerances.end() ? 1e-6 : it->second;
  const FunctionalHandle f = builtin_functional(cfg.functional, alg);
  const CharacterReport r = verify_character_theorem(f, alg, cfg.seed, cfg.samples);
  print_report(r, tol, out);
  if (r.passed(tol)) {
    out << "result,PASS\n";
    return kExitPass;
  }
  if (r.unit_sign == -1) {
    // f(1) = -1: the statement is about -f, with f(e^x) = -e^{psi(x)}.
    const CharacterReport flipped = verify_character_theorem(negated(f), alg, cfg.seed, cfg.samples);
    print_report(flipped, tol, out);
    const bool ok = flipped.passed(tol);
    out << "result," << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? kExitPass : kExitCheckFailed;
  }
  out << "result,FAIL\n";
  return kExitCheckFailed;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  std::uint64_t parts[3] = {};
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t end = k < 2 ? text.find(':', pos) : text.size();
    if (end == std::string::npos) throw ParseError("n-grid must be MIN:MAX:RATIO", text.size());
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, parts[k]);
    if (end == pos || ec != std::errc{} || ptr != text.data() + end)
      throw ParseError("invalid n-grid field", pos);
    pos = end + 1;
  }
  GridSpec g{parts[0], parts[1], parts[2]};
  if (g.min < 2) throw ParseError("n-grid MIN must be at least 2", 0);
  if (g.ratio < 2) throw ParseError("n-grid RATIO must be at least 2", text.rfind(':') + 1);
  if (g.max < g.min) throw ParseError("n-grid MAX must be at least MIN", text.find(':') + 1);
  return g;
}

Vector parse_coefficients(const std::vector<std::string>& tokens) {
  std::string joined;
  if (tokens.size() == 1 && !tokens[0].empty() && tokens[0][0] == '@') {
    joined = read_file(tokens[0].substr(1));
  } else {
    for (std::size_t i = 0; i < tokens.size(); ++i) joined += (i ? "," : "") + tokens[i];
  }
  const std::vector<Token> parts = split_tokens(joined);
  if (parts.empty()) throw ParseError("empty element", 0);
  if (parts.size() % 2 != 0) throw ParseError("element needs real,imag pairs", joined.size());
  Vector v(static_cast<Eigen::Index>(parts.size() / 2));
  for (std::size_t i = 0; i < parts.size(); i += 2) {
    const Complex re = parse_complex(parts[i].text, parts[i].offset);
    const Complex im = parse_complex(parts[i + 1].text, parts[i + 1].offset);
    v[static_cast<Eigen::Index>(i / 2)] = re + Complex(0, 1) * im;
  }
  return v;
}

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.samples <= 0) throw PreconditionFailed("--samples must be positive");
    const AlgebraPtr alg = parse_algebra(cfg.algebra);
    switch (cfg.command) {
      case Command::validate: return run_validate(cfg, alg, out);
      case Command::spectrum: return run_spectrum(cfg, alg, out);
      case Command::trotter: return run_trotter(cfg, alg, out);
      case Command::functional: return run_functional(cfg, alg, out);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionFailed& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedAlgebra& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidElement& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Experiments on finite-dimensional complex Jordan algebras", "jordan-cli"};
  app.set_config("--config", "", "INI/TOML file with option values; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  ExperimentConfig cfg;
  std::string grid_text = "16:4096:2";
  std::string element_text;
  std::string formula;
  std::string out_path;
  std::vector<std::string> tolerances;

  app.add_option("--algebra", cfg.algebra, "Algebra descriptor, e.g. matrix:2 or sum:fn:2+spin:3")->required();
  app.add_option("--formula", formula, "jordan_product, U_single, U_pair, general or associative_identity");
  app.add_option("--n-grid", grid_text, "Geometric grid MIN:MAX:RATIO")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Number of random samples")->capture_default_str();
  app.add_option("--element", element_text, "Interleaved real,imag coefficients, or @file");
  app.add_option("--functional", cfg.functional, "char:<i>, negchar:<i>, sqchar:<i> or trace");
  app.add_option("--out", out_path, "Write CSV here instead of stdout");
  app.add_option("--tol", tolerances, "Tolerance override NAME=VALUE (repeatable)");

  app.add_subcommand("validate", "Check the algebra identities on random samples");
  app.add_subcommand("spectrum", "Print the Jordan spectrum of an element");
  app.add_subcommand("trotter", "Trotter convergence experiment, CSV output");
  app.add_subcommand("functional", "Check the character theorem for a built-in functional");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (name == "validate") cfg.command = Command::validate;
  if (name == "spectrum") cfg.command = Command::spectrum;
  if (name == "trotter") cfg.command = Command::trotter;
  if (name == "functional") cfg.command = Command::functional;

  try {
    cfg.grid = parse_grid(grid_text);
    for (const std::string& t : tolerances) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) throw ParseError("--tol expects NAME=VALUE", 0);
      cfg.tolerances[t.substr(0, eq)] = parse_real(std::string_view(t).substr(eq + 1), eq + 1);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!formula.empty()) cfg.formula = formula;
  if (!element_text.empty()) cfg.element = {element_text};
  if (!out_path.empty()) cfg.out_path = out_path;
  if (cfg.command == Command::spectrum && cfg.element.empty()) {
    err << "error: spectrum needs --element\n";
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace jordan::cli
