#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "csa/apps.hpp"
#include "csa/errors.hpp"
#include "csa/instance_io.hpp"
#include "csa/splitter.hpp"

namespace {

enum Exit { kOk = 0, kNegative = 1, kInconclusive = 2, kInput = 3, kInternal = 4 };

struct Shared {
  std::uint64_t seed = 1;
  unsigned precision_bits = 128;
  double delta = 0.99;
  std::size_t shell_cap = 8;
  bool deterministic = false;
  std::optional<double> budget_seconds;
  bool force_enumeration = false;
  bool no_ball = false;
};

void add_shared(CLI::App* app, Shared& s) {
  app->add_option("--seed", s.seed, "random seed")->capture_default_str();
  app->add_option("--precision-bits", s.precision_bits, "initial working precision in bits")->capture_default_str();
  app->add_option("--delta", s.delta, "LLL parameter")->capture_default_str()->check(CLI::Range(0.26, 0.999999));
  app->add_option("--shell-cap", s.shell_cap, "largest max-norm shell before the ball phase")->capture_default_str();
  app->add_flag("--deterministic", s.deterministic, "sequential, reproducible search");
  app->add_option("--budget-seconds", s.budget_seconds, "wall-clock budget for the search");
  app->add_flag("--force-enumeration", s.force_enumeration, "skip the reduced-basis scan");
  app->add_flag("--no-ball", s.no_ball, "stop after the shell cap");
}

csa::SplitConfig config_of(const Shared& s) {
  csa::SplitConfig c;
  c.seed = s.seed;
  c.precision_bits = s.precision_bits;
  c.delta = s.delta;
  c.shell_cap = s.shell_cap;
  c.deterministic = s.deterministic;
  c.budget_seconds = s.budget_seconds;
  c.force_enumeration = s.force_enumeration;
  c.ball_phase = !s.no_ball;
  return c;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    csa::write_file(out, text);
}

void print_levels(const csa::SplitStats& st) {
  for (std::size_t i = 0; i < st.levels.size(); ++i) {
    const auto& l = st.levels[i];
    std::cerr << "level " << i << ": n=" << l.n << " disc=" << l.discriminant << " bits=" << l.precision_bits
              << " lll-ratio=" << l.ratio << " c_m=" << l.c_m << " found=" << l.found_in << " rank=" << l.found_rank;
    if (l.found_in != "reduced-basis") std::cerr << " shell=" << l.shell << " visited=" << l.visited;
    std::cerr << "\n";
  }
}

int run_gen(std::size_t n, std::optional<long> quadratic, long bound, std::uint64_t seed, bool identity,
            bool no_hidden, const std::string& out) {
  csa::GenOptions o;
  o.n = n;
  if (quadratic) {
    o.field.kind = csa::FieldDescriptor::Kind::quadratic;
    o.field.D = *quadratic;
  }
  o.entry_bound = bound;
  o.seed = seed;
  o.identity = identity;
  o.hidden_witness = !no_hidden;
  emit(out, csa::write_instance(csa::gen_instance(o)));
  return kOk;
}

int run_split(const std::string& path, const Shared& s, const std::string& out) {
  const csa::Algebra A = csa::read_instance(csa::read_file(path)).algebra();
  const auto t0 = std::chrono::steady_clock::now();
  const csa::SplitReport rep = csa::split(A, config_of(s));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(out, csa::write_witness(csa::witness_from_report(A, rep)));
  print_levels(rep.stats);
  std::cerr << "split: n=" << rep.iso.n << " levels=" << rep.stats.levels.size() << " seconds=" << secs << "\n";
  return kOk;
}

int run_verify(const std::string& inst, const std::string& wit) {
  const csa::Algebra A = csa::read_instance(csa::read_file(inst)).algebra();
  const csa::WitnessFile w = csa::read_witness(csa::read_file(wit), A.field());
  const csa::VerifyResult r = csa::verify_witness(A, w);
  if (r.ok) {
    std::cout << "pass\n";
    return kOk;
  }
  std::cout << "fail: " << r.check << (r.detail.empty() ? "" : " " + r.detail) << "\n";
  return kNegative;
}

int run_iso(const std::string& a, const std::string& b, const Shared& s, const std::string& out) {
  const csa::Algebra A = csa::read_instance(csa::read_file(a)).algebra();
  const csa::Algebra B = csa::read_instance(csa::read_file(b)).algebra();
  const csa::IsoResult r = csa::algebra_isomorphism(A, B, config_of(s));
  emit(out, csa::write_isomorphism(B, r));
  print_levels(r.stats);
  return kOk;
}

int run_zerodiv(const std::string& path, const Shared& s, const std::string& out) {
  const csa::Algebra A = csa::read_instance(csa::read_file(path)).algebra();
  const csa::ZeroDivisorResult r = csa::find_zero_divisor(A, config_of(s));
  emit(out, csa::write_zero_divisor(A, r));
  print_levels(r.stats);
  return kOk;
}

int run_norm(long D, const std::string& a_text, bool no_shortcuts, const Shared& s) {
  const csa::Rational a = csa::parse_rational(a_text);
  const csa::NormResult r = csa::solve_norm_equation(D, a, config_of(s), !no_shortcuts);
  switch (r.status) {
    case csa::NormStatus::solved:
      std::cout << "x = " << csa::to_string(r.x0) << " + " << csa::to_string(r.x1) << "*sqrt(" << D << ")\n";
      return kOk;
    case csa::NormStatus::unsolvable:
      std::cout << "unsolvable: " << r.reason << "\n";
      return kNegative;
    case csa::NormStatus::inconclusive:
      std::cout << "inconclusive: " << r.reason << "\n";
      return kInconclusive;
  }
  return kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit splitting of central simple algebras given by structure constants"};
  app.require_subcommand(1);

  Shared shared;
  std::string out;

  auto* gen = app.add_subcommand("gen", "generate a random instance of M_n(K) in a scrambled basis");
  std::size_t n = 2;
  std::optional<long> quadratic;
  long bound = 10;
  bool identity = false, no_hidden = false;
  gen->add_option("--n", n, "degree")->required();
  gen->add_option("--quadratic", quadratic, "use K = Q(sqrt(D)) instead of Q");
  gen->add_option("--entry-bound", bound, "bound on numerators and denominators")->capture_default_str();
  gen->add_option("--seed", shared.seed, "random seed")->capture_default_str();
  gen->add_flag("--identity", identity, "emit the standard basis");
  gen->add_flag("--no-hidden", no_hidden, "omit the change of basis");
  gen->add_option("-o,--output", out, "output file");

  std::string inst, inst2, wit;
  auto* sp = app.add_subcommand("split", "find a rank-one element and an isomorphism A -> M_n(K)");
  sp->add_option("instance", inst)->required();
  sp->add_option("-o,--output", out, "witness file");
  add_shared(sp, shared);

  auto* iso = app.add_subcommand("iso", "isomorphism between two central simple algebras");
  iso->add_option("a", inst)->required();
  iso->add_option("b", inst2)->required();
  iso->add_option("-o,--output", out, "output file");
  add_shared(iso, shared);

  auto* zd = app.add_subcommand("zerodiv", "find a zero divisor");
  zd->add_option("instance", inst)->required();
  zd->add_option("-o,--output", out, "output file");
  add_shared(zd, shared);

  auto* norm = app.add_subcommand("norm", "solve x0^2 - D x1^2 = a over Q");
  long D = 0;
  std::string a_text;
  bool no_shortcuts = false;
  norm->add_option("--D", D, "squarefree D")->required();
  norm->add_option("--a", a_text, "right-hand side, a rational")->required();
  norm->add_flag("--no-shortcuts", no_shortcuts, "always go through the quaternion algebra");
  add_shared(norm, shared);

  auto* ver = app.add_subcommand("verify", "check a witness file against an instance");
  ver->add_option("instance", inst)->required();
  ver->add_option("witness", wit)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*gen) return run_gen(n, quadratic, bound, shared.seed, identity, no_hidden, out);
    if (*sp) return run_split(inst, shared, out);
    if (*iso) return run_iso(inst, inst2, shared, out);
    if (*zd) return run_zerodiv(inst, shared, out);
    if (*norm) return run_norm(D, a_text, no_shortcuts, shared);
    if (*ver) return run_verify(inst, wit);
  } catch (const csa::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const csa::NotSplit& e) {
    std::cerr << "not split: " << e.what() << "\n";
    return kNegative;
  } catch (const csa::StructuralFailure& e) {
    std::cerr << "not a full matrix algebra: " << e.what() << "\n";
    return kNegative;
  } catch (const csa::BudgetExhausted& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const csa::PrecisionCeiling& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
