// qflab command-line front end. Every result is printed as JSON (or CSV for
// tables) with rationals as "num/den".
//
// Exit codes: 0 success, 1 a check failed or a computation could not finish,
// 2 bad usage or a violated precondition.

#include "qflab/acceptance.hpp"
#include "qflab/clifford.hpp"
#include "qflab/counting.hpp"
#include "qflab/cycles.hpp"
#include "qflab/densities.hpp"
#include "qflab/gkmult.hpp"
#include "qflab/io.hpp"
#include "qflab/quadform.hpp"
#include "qflab/quaternion.hpp"
#include "qflab/whittaker.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>

namespace {

using namespace qflab;
using io::Json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json exact(const Rational& x) { return to_string(x); }

Json multiplicity_json(const Multiplicity& e) {
  if (e.integral) return numerator_of(e.value).convert_to<std::int64_t>();
  return to_string(e.value);
}

GKTriple make_triple(const std::vector<int>& a, const std::vector<UnitClass>& eps, std::int64_t p) {
  if (a.size() != 3) throw std::invalid_argument("--a needs three exponents");
  if (eps.size() != 3) throw std::invalid_argument("--eps needs three unit classes");
  GKTriple t;
  for (std::size_t i = 0; i < 3; ++i) {
    t.a[i] = a[i];
    t.eps[i] = eps[i];
  }
  t.p = OddPrime(p);
  t.validate();
  return t;
}

// The first (a, b) with small |a|, |b| whose finite ramification is exactly
// the primes of D and which splits at infinity.
QuaternionAlgebra algebra_with_discriminant(std::int64_t D) {
  if (D == 1) return QuaternionAlgebra::split();
  if (D < 1) throw std::invalid_argument("--disc must be a positive integer");
  const auto primes = prime_factors(Integer(D));
  std::int64_t squarefree = 1;
  for (auto q : primes) squarefree *= q;
  if (squarefree != D || primes.size() % 2 == 1)
    throw std::invalid_argument("--disc must be a product of an even number of distinct primes");
  for (std::int64_t bound = 1; bound <= 400; ++bound) {
    for (std::int64_t a = -bound; a <= bound; ++a) {
      for (std::int64_t b : {-bound, bound}) {
        if (a == 0) continue;
        const QuaternionAlgebra B{Rational(a), Rational(b)};
        if (!is_indefinite(B) || discriminant(B) != D) continue;
        return B;
      }
    }
  }
  throw std::invalid_argument("no quaternion algebra of discriminant " + std::to_string(D) + " found by search");
}

int run_density(const std::string& T_spec, std::int64_t p_value, int r, bool closed, bool oracle) {
  const SymMat T = io::parse_matrix_spec(T_spec);
  const OddPrime p(p_value);
  Json out{{"T", io::matrix_to_json(T)}, {"p", p_value}, {"r", r}};
  const bool use_closed = closed || (!oracle && T.rows() == 4);
  if (use_closed) {
    std::optional<DensityPolynomial> A;
    try {
      A = assemble_A(T, p);
    } catch (const std::invalid_argument& e) {
      if (closed) throw std::invalid_argument(std::string("no closed form in scope: ") + e.what());
      // fall through to the oracle
      return run_density(T_spec, p_value, r, false, true);
    }
    const Rational X = rational_pow(Rational(p_value), -r);
    out["method"] = "closed";
    out["A"] = io::density_polynomial_to_json(*A);
    out["value"] = exact((*A)(X));
    emit(out);
    return kOk;
  }
  const DensityResult res = density_oracle(split_lattice_diagonal(r), T, p);
  out["method"] = "oracle";
  out["value"] = exact(res.value);
  out["oracle"] = io::density_result_to_json(res);
  emit(out);
  return kOk;
}

int run_oracle(const std::string& s_spec, const std::string& T_spec, std::int64_t p, int t, const std::string& strategy,
               const std::string& job_file, bool stabilize, bool text) {
  const CountJob job = [&] {
    if (!job_file.empty()) {
      std::ifstream in(job_file);
      if (!in) throw std::invalid_argument("cannot open job file '" + job_file + "'");
      return io::count_job_from_json(Json::parse(in));
    }
    if (s_spec.empty() || T_spec.empty() || p == 0)
      throw std::invalid_argument("oracle needs --s, --T and --p (or --job)");
    CountJob j{io::parse_rational_list(s_spec), io::parse_matrix_spec(T_spec), OddPrime(p), t, parse_strategy(strategy)};
    j.validate();
    return j;
  }();
  DensityResult res;
  if (stabilize) {
    OracleOptions opts;
    opts.strategy = job.strategy;
    res = density_oracle(job.s, job.T, job.p, opts);
  } else {
    res = normalized_count(job);
  }
  if (text) {
    std::cout << to_string(res.value) << "\n";
    return kOk;
  }
  Json out = io::density_result_to_json(res);
  out["job"] = io::count_job_to_json(job);
  emit(out);
  return kOk;
}

int run_kitaoka(std::int64_t p, const std::string& a_spec, const std::string& eps_spec, const std::string& at) {
  const GKTriple t = make_triple(io::parse_int_list(a_spec), io::parse_sign_list(eps_spec), p);
  const Rational X = parse_rational(at);
  const DensityPolynomial full = kitaoka_ternary_poly(t);
  emit({{"a", t.a},
        {"eps", {t.eps[0].value(), t.eps[1].value(), t.eps[2].value()}},
        {"p", p},
        {"chi_tilde", chi_tilde(t).value()},
        {"bracket", io::polynomial_to_json(kitaoka_bracket(t))},
        {"density", io::density_polynomial_to_json(full)},
        {"X", exact(X)},
        {"value", exact(full(X))}});
  return kOk;
}

int run_gk(const std::string& a_spec, std::int64_t p_value, int max_a, bool csv) {
  const OddPrime p(p_value);
  if (max_a >= 0) {
    Json rows = Json::array();
    if (csv) std::cout << "a1,a2,a3,p,e_p\n";
    for (int a1 = 0; a1 <= max_a; ++a1)
      for (int a2 = a1; a2 <= max_a; ++a2)
        for (int a3 = a2; a3 <= max_a; ++a3) {
          const Multiplicity e = e_p(a1, a2, a3, p);
          if (csv) std::cout << a1 << "," << a2 << "," << a3 << "," << p_value << "," << to_string(e.value) << "\n";
          else rows.push_back({{"a", {a1, a2, a3}}, {"e_p", multiplicity_json(e)}, {"integral", e.integral}});
        }
    if (!csv) emit({{"p", p_value}, {"rows", rows}});
    return kOk;
  }
  const auto a = io::parse_int_list(a_spec);
  if (a.size() != 3) throw std::invalid_argument("--a needs three exponents");
  const Multiplicity e = e_p(a[0], a[1], a[2], p);
  if (csv) {
    std::cout << "a1,a2,a3,p,e_p\n" << a[0] << "," << a[1] << "," << a[2] << "," << p_value << "," << to_string(e.value) << "\n";
  } else {
    emit({{"a", a}, {"p", p_value}, {"e_p", multiplicity_json(e)}, {"integral", e.integral}});
  }
  return kOk;
}

int run_ratio(std::int64_t p, const std::string& T_spec) {
  const RatioReport r = verify_ratio_identity(io::parse_matrix_spec(T_spec), OddPrime(p));
  emit(io::ratio_report_to_json(r));
  return r.equal ? kOk : kCheckFailed;
}

int run_diff(const std::string& T_spec, std::int64_t disc) {
  const SymMat T = io::parse_matrix_spec(T_spec);
  const QuaternionAlgebra B = algebra_with_discriminant(disc);
  const auto diff = diff_set(T, IncoherentCollection(B));
  emit({{"T", io::matrix_to_json(T)},
        {"disc", disc},
        {"algebra", {{"a", exact(B.a)}, {"b", exact(B.b)}}},
        {"diff", io::places_to_json(diff)},
        {"odd", diff.size() % 2 == 1},
        {"signature_unaddressed", diff_signature_unaddressed(T)}});
  return kOk;
}

int run_isolated(const std::string& T_spec, std::int64_t p_value) {
  const SymMat T = io::parse_matrix_spec(T_spec);
  const OddPrime p(p_value);
  const bool nonsingular = is_nonsingular(T);
  Json out{{"T", io::matrix_to_json(T)}, {"p", p_value}, {"isolated", is_isolated(T, p)}, {"nonsingular", nonsingular}};
  if (nonsingular) out["represents_one"] = represents_one_over_Zp(T, p);
  out["rank_mod_p"] = rank_mod_p(T, p);
  emit(out);
  return kOk;
}

int run_classify(int rank, int dim, const std::vector<std::string>& flags, std::int64_t p) {
  ComponentInput in{rank, dim, false, false};
  for (const auto& f : flags) {
    if (f == "represents_one") in.represents_one = true;
    else if (f == "has_radical_line") in.has_radical_line = true;
    else throw std::invalid_argument("unknown flag '" + f + "' (expected represents_one or has_radical_line)");
  }
  const auto c = classify_component(in, OddPrime(p));
  emit({{"rank_mod_p", rank},
        {"dim_m", dim},
        {"p", p},
        {"label", std::string(to_string(c.label))},
        {"line_count", c.line_count},
        {"case", c.case_ref}});
  return kOk;
}

int run_clifford_check(int words, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> len(1, 8), gen(0, 4);
  std::vector<SpinWord> ws;
  for (int i = 0; i < words; ++i) {
    SpinWord w(static_cast<std::size_t>(len(rng)));
    for (auto& g : w) g = static_cast<SpinGenerator>(gen(rng));
    ws.push_back(std::move(w));
  }
  const SpinCheck rel = check_clifford_relations();
  const SpinCheck c = check_spin_compatibility(ws);
  emit({{"clifford_relations", {{"ok", rel.ok}, {"failures", rel.failures}}},
        {"j_compatibility", {{"ok", c.ok}, {"words", words}, {"seed", seed}, {"failures", c.failures}}},
        {"ok", rel.ok && c.ok}});
  return rel.ok && c.ok ? kOk : kCheckFailed;
}

int run_sweep(const std::string& suite, bool csv) {
  const auto results = acceptance::run_suite(suite);
  bool all = true;
  if (csv) std::cout << "id,name,result,summary\n";
  Json rows = Json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    if (csv) {
      std::cout << r.id << "," << r.name << "," << (r.pass ? "PASS" : "FAIL") << "," << r.summary << "\n";
    } else {
      rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary}, {"detail", r.detail}});
    }
  }
  if (!csv) emit({{"suite", suite}, {"pass", all}, {"criteria", rows}});
  return all ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact local densities, multiplicities and related checks"};
  app.set_config("--config", "", "read options from a key=value file");
  app.require_subcommand(1);

  std::string T_spec, s_spec, a_spec, eps_spec, strategy = "mitm", job_file, suite, at = "1";
  std::int64_t p = 0, disc = 1;
  int r = 0, t = 1, rank = 0, dim = 0, max_a = -1, words = 100;
  unsigned seed = 1;
  bool closed = false, oracle = false, csv = false, stabilize = false, text = false;
  std::vector<std::string> flags;

  auto* density = app.add_subcommand("density", "density of T against the split lattice with r extra planes");
  density->add_option("--p", p, "odd prime")->required();
  density->add_option("--T", T_spec, "matrix: d:1,1,1,3, inline JSON or a JSON file")->required();
  density->add_option("--r", r, "number of extra hyperbolic planes")->check(CLI::NonNegativeNumber);
  auto* closed_flag = density->add_flag("--closed", closed, "closed form only");
  density->add_flag("--oracle", oracle, "counting oracle only")->excludes(closed_flag);

  auto* orc = app.add_subcommand("oracle", "normalized count of X^t diag(s) X = T mod p^t");
  orc->add_option("--s", s_spec, "diagonal of the representing form, e.g. 1,1,-1,1,-1");
  orc->add_option("--T", T_spec, "target matrix");
  orc->add_option("--p", p, "odd prime");
  orc->add_option("--t", t, "level")->check(CLI::PositiveNumber);
  orc->add_option("--strategy", strategy, "naive or mitm")->check(CLI::IsMember({"naive", "mitm"}));
  orc->add_option("--job", job_file, "JSON job descriptor instead of the flags");
  orc->add_flag("--stabilize", stabilize, "raise t until two consecutive levels agree");
  orc->add_flag("--text", text, "print only the value");

  auto* kit = app.add_subcommand("kitaoka", "ternary closed form against the split lattices");
  kit->add_option("--p", p, "odd prime")->required();
  kit->add_option("--a", a_spec, "exponents A1,A2,A3")->required();
  kit->add_option("--eps", eps_spec, "unit classes, e.g. +,-,+")->required();
  kit->add_option("--at", at, "X at which to evaluate");

  auto* gk = app.add_subcommand("gk", "intersection multiplicity from the exponents");
  gk->add_option("--a", a_spec, "exponents A1,A2,A3");
  gk->add_option("--p", p, "odd prime")->required();
  gk->add_option("--max-a", max_a, "emit the table over all exponents up to this bound");
  gk->add_flag("--csv", csv, "CSV output");

  auto* ratio = app.add_subcommand("ratio", "derivative over twisted value against the multiplicity");
  ratio->add_option("--p", p, "odd prime")->required();
  ratio->add_option("--T", T_spec, "target matrix")->required();

  auto* diff = app.add_subcommand("diff", "places where the incoherent collection fails to represent T");
  diff->add_option("--T", T_spec, "target matrix")->required();
  diff->add_option("--disc", disc, "discriminant of the indefinite quaternion algebra (1 = split)");

  auto* iso = app.add_subcommand("isolated", "whether T is an isolated intersection");
  iso->add_option("--T", T_spec, "target matrix")->required();
  iso->add_option("--p", p, "odd prime")->required();

  auto* cls = app.add_subcommand("classify", "component decision table");
  cls->add_option("--rank", rank, "rank of T mod p")->required();
  cls->add_option("--dim", dim, "dimension of the reduced space")->required();
  cls->add_option("--flags", flags, "represents_one, has_radical_line")->delimiter(',');
  cls->add_option("--p", p, "odd prime (default 3)");

  auto* cc = app.add_subcommand("clifford-check", "Clifford relations and J-compatibility of the spin representation");
  cc->add_option("--words", words, "number of random words")->check(CLI::NonNegativeNumber);
  cc->add_option("--seed", seed, "seed for the words");

  auto* sweep = app.add_subcommand("sweep", "run an acceptance suite");
  sweep->add_option("--suite", suite, "all, a criterion name or its number")->required();
  sweep->add_flag("--csv", csv, "CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (density->parsed()) return run_density(T_spec, p, r, closed, oracle);
    if (orc->parsed()) return run_oracle(s_spec, T_spec, p, t, strategy, job_file, stabilize, text);
    if (kit->parsed()) return run_kitaoka(p, a_spec, eps_spec, at);
    if (gk->parsed()) {
      if (a_spec.empty() && max_a < 0) throw std::invalid_argument("gk needs --a or --max-a");
      return run_gk(a_spec, p, max_a, csv);
    }
    if (ratio->parsed()) return run_ratio(p, T_spec);
    if (diff->parsed()) return run_diff(T_spec, disc);
    if (iso->parsed()) return run_isolated(T_spec, p);
    if (cls->parsed()) return run_classify(rank, dim, flags, p == 0 ? 3 : p);
    if (cc->parsed()) return run_clifford_check(words, seed);
    if (sweep->parsed()) return run_sweep(suite, csv);
  } catch (const std::invalid_argument& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << Json{{"error", std::string("malformed JSON: ") + e.what()}}.dump() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
