// Command-line frontend: builds empirical pair correlation measures, emits
// limit densities and arithmetic constants, runs the verification suites.
// CSV for grids/histograms, JSON for scalar reports; identical configuration
// produces byte-identical output.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paircorr/acceptance.hpp"
#include "paircorr/arith.hpp"
#include "paircorr/errors.hpp"
#include "paircorr/family.hpp"
#include "paircorr/limits.hpp"
#include "paircorr/measures.hpp"
#include "paircorr/modular.hpp"

namespace {

using namespace paircorr;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Flat ordered JSON object with preformatted values.
class JsonWriter {
public:
  void field(const std::string& key, const std::string& raw) { fields_.emplace_back(key, raw); }
  void string_field(const std::string& key, const std::string& s) { field(key, "\"" + s + "\""); }
  void number(const std::string& key, double v) { field(key, fmt17(v)); }
  void integer(const std::string& key, long long v) { field(key, std::to_string(v)); }

  std::string str() const {
    std::ostringstream os;
    os << "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i)
      os << "  \"" << fields_[i].first << "\": " << fields_[i].second
         << (i + 1 < fields_.size() ? ",\n" : "\n");
    os << "}\n";
    return os.str();
  }

private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + out_path);
  os << content;
}

std::uint32_t default_prime_cutoff() {
  if (const char* env = std::getenv("PAIRCORR_PRIME_CUTOFF")) {
    long v = std::atol(env);
    if (v < 2) throw ValidationError("PAIRCORR_PRIME_CUTOFF must be >= 2");
    return static_cast<std::uint32_t>(v);
  }
  return 1'000'000;
}

family::ScalingSpec parse_scaling(const std::string& text) {
  if (text == "trivial") return family::ScalingSpec::trivial();
  if (text == "linear") return family::ScalingSpec::linear();
  if (text == "invavg") return family::ScalingSpec::inverse_average_gap();
  if (text.rfind("power:", 0) == 0) {
    double alpha = std::stod(text.substr(6));
    return family::ScalingSpec::power(alpha);
  }
  throw ValidationError("scaling must be trivial | power:ALPHA | linear | invavg");
}

std::pair<double, double> parse_support(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("support must be lo:hi");
  double lo = std::stod(text.substr(0, colon));
  double hi = std::stod(text.substr(colon + 1));
  if (!(lo < hi)) throw ValidationError("support must satisfy lo < hi");
  return {lo, hi};
}

std::string histogram_csv(const measures::Histogram& h, bool with_overflow) {
  std::ostringstream os;
  os << "bin_lo,bin_hi,density\n";
  for (std::uint32_t i = 0; i < h.bins; ++i)
    os << fmt17(h.bin_lo(i)) << ',' << fmt17(h.bin_hi(i)) << ',' << fmt17(h.density(i)) << '\n';
  if (with_overflow)
    os << "# overflow_mass=" << fmt17(h.overflow_mass) << " overflow_atoms=" << h.overflow_atoms
       << '\n';
  return os.str();
}

struct EmpiricalArgs {
  std::uint32_t n = 2000, a = 1, b = 1, bins = 400;
  std::string weights = "trivial", scaling = "trivial", support = "-10:10";
  std::string normalizer = "auto";
  double normalizer_value = 0.0;
  std::uint64_t budget = 100'000'000;
  std::string format = "csv", out;
};

int run_empirical(const EmpiricalArgs& args) {
  auto scaling = parse_scaling(args.scaling);
  auto mode = args.weights == "euler" ? family::WeightMode::euler : family::WeightMode::trivial;
  if (args.weights != "euler" && args.weights != "trivial")
    throw ValidationError("weights must be trivial or euler");
  family::WeightedLogFamily fam(args.a, args.b, mode);

  std::shared_ptr<const arith::Sieve> sieve;
  if (mode == family::WeightMode::euler) sieve = std::make_shared<arith::Sieve>(args.n);

  measures::BuildOptions opts;
  opts.atom_budget = args.budget;
  auto mu = measures::build_pair_correlation(fam, args.n, scaling, sieve, opts);

  double norm = 0.0;
  double Nd = args.n;
  std::string chosen = args.normalizer;
  if (chosen == "auto") {
    if (scaling.kind() == family::ScalingKind::trivial) chosen = "mass";
    else if (mode == family::WeightMode::euler) chosen = "n3";
    else if (scaling.classify().regime == family::Regime::zero) chosen = "n2psi";
    else chosen = "psi";
  }
  if (chosen == "mass") norm = static_cast<double>(mu.total_mass());
  else if (chosen == "psi") norm = scaling.psi(args.n);
  else if (chosen == "n2psi") norm = Nd * Nd / scaling.psi(args.n);
  else if (chosen == "n3") norm = Nd * Nd * Nd;
  else if (chosen == "value") norm = args.normalizer_value;
  else throw ValidationError("normalizer must be auto|mass|psi|n2psi|n3|value");
  if (!(norm > 0.0)) throw ValidationError("normalizer must be positive");

  auto [lo, hi] = parse_support(args.support);
  auto hist = measures::bin(mu, lo, hi, args.bins, norm);

  if (args.format == "csv") {
    emit(args.out, histogram_csv(hist, true));
  } else if (args.format == "json") {
    JsonWriter w;
    w.integer("n", args.n);
    w.string_field("weights", args.weights);
    w.string_field("normalizer", chosen);
    w.number("normalization", norm);
    w.field("total_mass", to_string(mu.total_mass_exact()));
    w.number("overflow_mass", hist.overflow_mass);
    w.integer("overflow_atoms", static_cast<long long>(hist.overflow_atoms));
    std::ostringstream rows;
    rows << '[';
    for (std::uint32_t i = 0; i < hist.bins; ++i)
      rows << fmt17(hist.density(i)) << (i + 1 < hist.bins ? "," : "");
    rows << ']';
    w.field("density", rows.str());
    emit(args.out, w.str());
  } else {
    throw ValidationError("format must be csv or json");
  }
  return 0;
}

struct LimitArgs {
  std::string density = "unscaled-trivial";
  std::uint32_t a = 1, b = 1, bins = 400;
  double lambda = 1.0;
  std::uint32_t prime_cutoff = 0;
  std::string support = "-10:10", format = "csv", out;
};

int run_limit(const LimitArgs& args) {
  auto [lo, hi] = parse_support(args.support);
  std::uint32_t cutoff = args.prime_cutoff ? args.prime_cutoff : default_prime_cutoff();

  std::function<double(double, double)> bin_average; // integral over [x,y] / (y-x)
  std::shared_ptr<limits::LinearEulerDensity> euler_density;
  std::shared_ptr<const arith::Sieve> sieve;

  auto averaged = [](auto g) {
    return [g](double x, double y) {
      // 9-point midpoint rule per bin; the densities are piecewise smooth
      double acc = 0.0;
      int n = 9;
      for (int i = 0; i < n; ++i) acc += g(x + (y - x) * (i + 0.5) / n);
      return acc / n;
    };
  };

  if (args.density == "unscaled-trivial") {
    bin_average = averaged([](double s) { return limits::g_unscaled_trivial(s); });
  } else if (args.density == "unscaled-euler") {
    bin_average = averaged([](double s) { return limits::g_unscaled_euler(s); });
  } else if (args.density == "sublinear-trivial") {
    double v = limits::g_sublinear_trivial(args.b);
    bin_average = [v](double, double) { return v; };
  } else if (args.density == "linear-trivial") {
    std::uint32_t b = args.b;
    double lambda = args.lambda;
    if (!(lambda > 0.0)) throw ValidationError("linear-trivial needs lambda > 0");
    bin_average = averaged([b, lambda](double s) { return limits::g_linear_trivial(s, b, lambda); });
  } else if (args.density == "linear-euler") {
    sieve = std::make_shared<arith::Sieve>(cutoff);
    euler_density = std::make_shared<limits::LinearEulerDensity>(sieve, args.a, args.b, cutoff);
    euler_density->warm_up(std::max(std::abs(lo), std::abs(hi)));
    bin_average = [euler_density](double x, double y) {
      double span = y - x;
      if (x >= 0.0) return euler_density->integral(x, y) / span;
      if (y <= 0.0) return euler_density->integral(-y, -x) / span;
      return (euler_density->integral(0.0, -x) + euler_density->integral(0.0, y)) / span;
    };
  } else {
    throw ValidationError(
        "density must be unscaled-trivial|unscaled-euler|sublinear-trivial|linear-trivial|linear-euler");
  }

  std::ostringstream os;
  os << "bin_lo,bin_hi,density\n";
  double width = (hi - lo) / args.bins;
  for (std::uint32_t i = 0; i < args.bins; ++i) {
    double x = lo + i * width, y = lo + (i + 1) * width;
    os << fmt17(x) << ',' << fmt17(y) << ',' << fmt17(bin_average(x, y)) << '\n';
  }
  if (args.format != "csv") throw ValidationError("limit output is csv");
  emit(args.out, os.str());
  return 0;
}

struct ConstantsArgs {
  std::uint32_t a = 1, b = 1, k = 0;
  std::string kind = "c-abk";
  std::uint32_t prime_cutoff = 0;
  std::uint32_t series_cutoff = 0;
  std::string format = "json", out;
};

int run_constants(const ConstantsArgs& args) {
  if (args.format != "json") throw ValidationError("constants output is json");
  std::uint32_t cutoff = args.prime_cutoff ? args.prime_cutoff : default_prime_cutoff();
  JsonWriter w;
  w.string_field("kind", args.kind);

  if (args.kind == "c-ab") {
    auto c = arith::c_ab(args.a, args.b);
    w.integer("a", args.a);
    w.integer("b", args.b);
    w.number("value", c.value);
    w.number("tail_bound", c.tail_bound);
    w.integer("cutoff", 0);
  } else if (args.kind == "c-abk") {
    arith::Sieve sieve(cutoff);
    auto c = arith::c_abk_product(sieve, args.a, args.b, args.k, cutoff);
    w.integer("a", args.a);
    w.integer("b", args.b);
    w.integer("k", args.k);
    w.number("value", c.value);
    w.number("tail_bound", c.tail_bound);
    w.integer("cutoff", cutoff);
    if (args.series_cutoff > 0) {
      double series = arith::c_abk_series(sieve, args.a, args.b, args.k, args.series_cutoff);
      w.number("series_value", series);
      w.integer("series_cutoff", args.series_cutoff);
      w.number("gap", std::abs(series - c.value));
    }
  } else if (args.kind == "lambda") {
    auto lam = arith::lambda_abk(args.a, args.b, args.k);
    w.integer("a", args.a);
    w.integer("b", args.b);
    w.integer("k", args.k);
    w.number("value", lam.value());
    w.integer("numerator", lam.num);
    w.integer("denominator", lam.den);
    w.integer("cutoff", 0);
  } else if (args.kind == "asymptote") {
    arith::Sieve sieve(cutoff);
    auto c = arith::asymptote_constant(sieve, cutoff);
    w.number("value", c.value);
    w.number("tail_bound", c.tail_bound);
    w.integer("cutoff", cutoff);
  } else if (args.kind == "c1") {
    arith::Sieve sieve(cutoff);
    auto c = arith::euler_c1(sieve, cutoff);
    w.number("value", c.value);
    w.number("tail_bound", c.tail_bound);
    w.integer("cutoff", cutoff);
  } else {
    throw ValidationError("kind must be c-abk|c-ab|lambda|asymptote|c1");
  }
  emit(args.out, w.str());
  return 0;
}

struct SumArgs {
  double x = 1000.0;
  std::uint32_t a = 1, b = 1, k = 0;
  std::uint32_t prime_cutoff = 0;
  std::string format = "json", out;
};

int run_mirsky(const SumArgs& args) {
  if (args.format != "json") throw ValidationError("mirsky output is json");
  std::uint32_t cutoff = args.prime_cutoff ? args.prime_cutoff : default_prime_cutoff();
  std::uint32_t need = static_cast<std::uint32_t>(args.x) + args.k;
  arith::Sieve sieve(std::max({cutoff, need, 2u}));
  auto c = arith::c_abk_product(sieve, args.a, args.b, args.k, cutoff);
  u128 sum = arith::mirsky_sum(sieve, args.x, args.a, args.b, args.k);
  double main = arith::mirsky_asymptotic(args.x, args.k, c);
  double resid = std::abs(static_cast<double>(to_long_double(sum)) - main);
  double envelope = args.x * (args.x + args.k) * std::log(2.0 * args.x) *
                    std::log(2.0 * args.x + args.k);
  JsonWriter w;
  w.number("x", args.x);
  w.integer("a", args.a);
  w.integer("b", args.b);
  w.integer("k", args.k);
  w.field("sum", to_string(sum));
  w.number("c_abk", c.value);
  w.number("main_term", main);
  w.number("residual", resid);
  w.number("envelope", envelope);
  w.number("normalized_residual", resid / envelope);
  w.integer("cutoff", cutoff);
  emit(args.out, w.str());
  return 0;
}

int run_mertens(const SumArgs& args) {
  if (args.format != "json") throw ValidationError("mertens output is json");
  auto need = static_cast<std::uint32_t>(args.x);
  arith::Sieve sieve(std::max(need, 2u));
  auto c = arith::c_ab(args.a, args.b);
  u128 sum = arith::mertens_congruence_sum(sieve, args.x, args.a, args.b);
  double main = arith::mertens_asymptotic(args.x, c);
  double resid = std::abs(static_cast<double>(to_long_double(sum)) - main);
  double envelope = args.x * std::log(2.0 * args.x);
  JsonWriter w;
  w.number("x", args.x);
  w.integer("a", args.a);
  w.integer("b", args.b);
  w.field("sum", to_string(sum));
  w.number("c_ab", c.value);
  w.number("main_term", main);
  w.number("residual", resid);
  w.number("envelope", envelope);
  w.number("normalized_residual", resid / envelope);
  emit(args.out, w.str());
  return 0;
}

struct PerpArgs {
  std::uint32_t b = 1, n = 100;
  bool census = false;
  std::string format = "csv", out;
};

int run_perp(const PerpArgs& args) {
  std::ostringstream os;
  if (args.census) {
    if (args.format != "csv") throw ValidationError("census output is csv");
    os << "p,q,radius\n";
    for (const auto& t : modular::tangency_census(args.b, args.n))
      os << t.p << ',' << t.q << ',' << fmt17(t.radius) << '\n';
    emit(args.out, os.str());
    return 0;
  }
  arith::Sieve sieve(args.n);
  auto spec = modular::ortholength_spectrum(sieve, args.b, args.n);
  if (args.format == "csv") {
    os << "q,length,multiplicity\n";
    for (const auto& e : spec.entries)
      os << e.q << ',' << fmt17(e.length) << ',' << e.multiplicity << '\n';
    emit(args.out, os.str());
  } else {
    throw ValidationError("perp output is csv");
  }
  return 0;
}

int run_verify(const std::string& suite) {
  auto ids = acceptance::suite_criteria(suite);
  acceptance::Options options;
  options.prime_cutoff = default_prime_cutoff();
  options.criteria = ids;
  auto results = acceptance::run(options);
  for (const auto& r : results)
    std::printf("[%2d] %s  %s  (%s)\n", r.id, r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
  return acceptance::all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"pair correlations of logarithms of integers"};
  app.require_subcommand(1);

  EmpiricalArgs emp;
  auto* cmd_emp = app.add_subcommand("empirical", "histogram of an empirical measure");
  cmd_emp->add_option("--n", emp.n, "horizon N")->check(CLI::PositiveNumber);
  cmd_emp->add_option("--a", emp.a)->check(CLI::PositiveNumber);
  cmd_emp->add_option("--b", emp.b)->check(CLI::PositiveNumber);
  cmd_emp->add_option("--weights", emp.weights, "trivial | euler");
  cmd_emp->add_option("--scaling", emp.scaling, "trivial | power:ALPHA | linear | invavg");
  cmd_emp->add_option("--bins", emp.bins)->check(CLI::PositiveNumber);
  cmd_emp->add_option("--support", emp.support, "lo:hi");
  cmd_emp->add_option("--normalizer", emp.normalizer, "auto|mass|psi|n2psi|n3|value");
  cmd_emp->add_option("--normalizer-value", emp.normalizer_value);
  cmd_emp->add_option("--budget", emp.budget, "atom budget");
  cmd_emp->add_option("--format", emp.format, "csv | json");
  cmd_emp->add_option("--out", emp.out, "output path (default stdout)");

  LimitArgs lim;
  auto* cmd_lim = app.add_subcommand("limit", "closed-form limit density on a grid");
  cmd_lim->add_option("--density", lim.density);
  cmd_lim->add_option("--a", lim.a)->check(CLI::PositiveNumber);
  cmd_lim->add_option("--b", lim.b)->check(CLI::PositiveNumber);
  cmd_lim->add_option("--lambda", lim.lambda);
  cmd_lim->add_option("--bins", lim.bins)->check(CLI::PositiveNumber);
  cmd_lim->add_option("--support", lim.support, "lo:hi");
  cmd_lim->add_option("--prime-cutoff", lim.prime_cutoff);
  cmd_lim->add_option("--format", lim.format);
  cmd_lim->add_option("--out", lim.out);

  ConstantsArgs cst;
  auto* cmd_cst = app.add_subcommand("constants", "arithmetic constants with tail bounds");
  cmd_cst->add_option("--a", cst.a)->check(CLI::PositiveNumber);
  cmd_cst->add_option("--b", cst.b)->check(CLI::PositiveNumber);
  cmd_cst->add_option("--k", cst.k);
  cmd_cst->add_option("--kind", cst.kind, "c-abk|c-ab|lambda|asymptote|c1");
  cmd_cst->add_option("--prime-cutoff", cst.prime_cutoff);
  cmd_cst->add_option("--series-cutoff", cst.series_cutoff, "also evaluate the series oracle");
  cmd_cst->add_option("--format", cst.format);
  cmd_cst->add_option("--out", cst.out);

  SumArgs mir;
  auto* cmd_mir = app.add_subcommand("mirsky", "exact correlation sum vs asymptotic");
  cmd_mir->add_option("--x", mir.x)->check(CLI::PositiveNumber);
  cmd_mir->add_option("--a", mir.a)->check(CLI::PositiveNumber);
  cmd_mir->add_option("--b", mir.b)->check(CLI::PositiveNumber);
  cmd_mir->add_option("--k", mir.k);
  cmd_mir->add_option("--prime-cutoff", mir.prime_cutoff);
  cmd_mir->add_option("--format", mir.format);
  cmd_mir->add_option("--out", mir.out);

  SumArgs mer;
  auto* cmd_mer = app.add_subcommand("mertens", "exact totient sum vs asymptotic");
  cmd_mer->add_option("--x", mer.x)->check(CLI::PositiveNumber);
  cmd_mer->add_option("--a", mer.a)->check(CLI::PositiveNumber);
  cmd_mer->add_option("--b", mer.b)->check(CLI::PositiveNumber);
  cmd_mer->add_option("--format", mer.format);
  cmd_mer->add_option("--out", mer.out);

  PerpArgs perp;
  auto* cmd_perp = app.add_subcommand("perp", "ortholength spectrum / tangency census");
  cmd_perp->add_option("--b", perp.b)->check(CLI::PositiveNumber);
  cmd_perp->add_option("--n", perp.n)->check(CLI::PositiveNumber);
  cmd_perp->add_flag("--census", perp.census, "emit the tangency census up to q = n");
  cmd_perp->add_option("--format", perp.format);
  cmd_perp->add_option("--out", perp.out);

  std::string suite = "all";
  auto* cmd_verify = app.add_subcommand("verify", "run acceptance suites");
  cmd_verify->add_option("--suite", suite,
                         "all|constants|mirsky|mertens|cdf|scaling|euler-linear|modular|mass|properties");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_emp->parsed()) return run_empirical(emp);
    if (cmd_lim->parsed()) return run_limit(lim);
    if (cmd_cst->parsed()) return run_constants(cst);
    if (cmd_mir->parsed()) return run_mirsky(mir);
    if (cmd_mer->parsed()) return run_mertens(mer);
    if (cmd_perp->parsed()) return run_perp(perp);
    if (cmd_verify->parsed()) return run_verify(suite);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
