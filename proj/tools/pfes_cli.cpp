// pfes: command-line front end for the coefficient-table library.
//
// Exit status: 0 success, 2 parse or usage error, 3 invariant violation
// (including failed checks), 4 any other stage failure.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "pfes/pfes.hpp"

namespace {

using namespace pfes;

constexpr int kOk = 0;
constexpr int kParse = 2;
constexpr int kInvariant = 3;
constexpr int kStage = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse_error: return kParse;
    case ErrorKind::invariant_error: return kInvariant;
    default: return kStage;
  }
}

FourierTable load_table(const std::string& path) { return parse_table(read_text_file(path)); }

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

std::vector<i64> split_ints(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError(1, 1, "bad integer list '" + text + "'");
    }
  }
  return out;
}

std::string matrix_text(const Mat2& m) {
  const IntMat2 a = to_int_matrix(m);
  return "[" + std::to_string(a.a) + "," + std::to_string(a.b) + ";" + std::to_string(a.c) + "," + std::to_string(a.d) + "]";
}

struct Options {
  std::string in, out, op = "up", chr = "1", primes = "2", index, exclude, config;
  i64 p = 0, level = 0, m = 0, bound = 50, window = 0, max_modulus = 0, disc_bound = 100;
  int k = 0, eps = 0;
  std::uint64_t seed = 0;
  bool float_check = false;
};

int cmd_verify_cosets(const Options& o) {
  const auto reps = build_up_cosets(o.p, o.level);
  std::vector<SimilitudeMatrix> mats;
  for (const auto& r : reps) mats.push_back(r.final_rep);
  LeftCosetTester tester(mats, o.level);
  std::size_t clashes = 0;
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (tester.same(i, j)) ++clashes;
  std::map<UpFamily, std::size_t> sizes;
  std::size_t inequivalent = 0;
  bool sizes_ok = true;
  for (const auto& r : reps) {
    ++sizes[r.family];
    if (!same_left_coset(r.final_rep.matrix(), r.original, o.level)) ++inequivalent;
  }
  std::cout << "family sizes";
  for (UpFamily fam : {UpFamily::siegel, UpFamily::klingen, UpFamily::siegel_twisted, UpFamily::klingen_twisted}) {
    std::cout << ' ' << sizes[fam];
    sizes_ok = sizes_ok && sizes[fam] == up_family_size(fam, o.p);
  }
  const std::size_t expected = static_cast<std::size_t>(o.p * o.p * o.p + 2 * o.p * o.p + o.p);
  std::cout << "\nrepresentatives " << reps.size() << " (expected " << expected << ")\n"
            << "distinct cosets " << (clashes == 0 ? "yes" : "no") << " (" << clashes << " clashes)\n"
            << "equivalent to original forms " << (inequivalent == 0 ? "yes" : "no") << "\n";
  return sizes_ok && reps.size() == expected && clashes == 0 && inequivalent == 0 ? kOk : kInvariant;
}

int cmd_apply(const Options& o) {
  FourierTable f = load_table(o.in);
  FourierTable g(f.level(), f.weight(), 1, 1);
  if (o.op == "up") {
    g = up_apply(f, HeckeParams::up(o.p, f.level(), f.weight()));
    g.provenance.push_back("up p=" + std::to_string(o.p));
  } else if (o.op == "tp") {
    const HeckeParams h = HeckeParams::tp(o.p, f.level(), f.weight());
    g = evdokimov_apply(f, h);
    std::string reps;
    for (const auto& u : resolved_reps(h)) reps += matrix_text(u);
    g.provenance.push_back("tp p=" + std::to_string(o.p) + " reps=" + reps);
  } else {
    throw ParseError(1, 1, "--op must be 'up' or 'tp'");
  }
  emit(o.out, serialize_table(g));
  return kOk;
}

int cmd_check_oracle(const Options& o) {
  const FourierTable f = load_table(o.in);
  const HeckeParams h = HeckeParams::up(o.p, f.level(), f.weight());
  const FourierTable a = up_apply(f, h);
  const FourierTable b = up_oracle(f, h);
  Rational worst = 0;
  std::size_t compared = 0;
  std::set<QuadIndex, CanonicalLess> keys;
  for (const auto& [t, v] : a.entries()) keys.insert(t);
  for (const auto& [t, v] : b.entries()) keys.insert(t);
  for (const auto& t : keys) {
    ++compared;
    const Rational d = abs(a.at(t) - b.at(t));
    if (d > worst) worst = d;
  }
  std::cout << "certified bound " << a.certified_bound() << ", compared " << compared << " coefficients, max deviation "
            << to_string(worst) << "\n";
  int rc = worst == 0 ? kOk : kInvariant;
  if (o.float_check) {
    const auto cmp = compare_float(b, up_oracle_float(f, h));
    std::cout << "float mode: max relative error " << cmp.max_relative_error << " over " << cmp.compared << "\n";
    if (!(cmp.max_relative_error <= 1e-9)) rc = kInvariant;
  }
  return rc;
}

int cmd_fricke(const Options& o) {
  const FourierTable f = load_table(o.in);
  const auto eps = fricke_eigen_check(f);
  std::cout << "fricke sign " << (eps ? (*eps > 0 ? "+1" : "-1") : "none") << "\n";
  if (f.fricke_sign && eps != f.fricke_sign) {
    std::cout << "header EPS disagrees with the coefficients\n";
    return kInvariant;
  }
  return kOk;
}

int cmd_equivariance(const Options& o) {
  const FourierTable f = load_table(o.in);
  std::optional<IndexWindow> w;
  if (o.window > 0) w = IndexWindow::fricke_stable(o.window, f.level());
  const auto report = check_equivariance(f, default_gamma0_generators(f.level()), w);
  std::cout << "violations " << report.violations.size() << "\n";
  for (const auto& v : report.violations)
    std::cout << "  a" << v.index << " = " << to_string(v.value) << " but a" << v.image << " = " << to_string(v.image_value)
              << " (generator " << v.generator << ")\n";
  for (const auto& r : report.orbits) std::cout << "orbit " << r << "\n";
  return report.ok() ? kOk : kInvariant;
}

int cmd_fj(const Options& o) {
  emit(o.out, serialize_slice(fj_extract(load_table(o.in), o.m)));
  return kOk;
}

int cmd_skoruppa(const Options& o) {
  const JacobiSlice phi = parse_slice(read_text_file(o.in));
  const int k = o.k ? o.k : phi.weight;
  emit(o.out, serialize_qseries(skoruppa_map(phi, DirichletCharacter::parse(o.chr), k)));
  return kOk;
}

int cmd_detect_theta(const Options& o) {
  const QSeries f = parse_qseries(read_text_file(o.in));
  const auto match = theta_shape_detect(f, o.max_modulus);
  if (!match) {
    std::cout << "no theta shape\n";
    return kOk;
  }
  std::cout << "theta shape t=" << match->t << " r=" << match->r << " psi=" << match->psi.to_string()
            << " scale=" << to_string(match->scale) << " (" << match->status << ", heuristic)\n";
  return kOk;
}

int cmd_scan(const Options& o) {
  const QSeries f = parse_qseries(read_text_file(o.in));
  std::set<i64> s;
  for (i64 l : split_ints(o.primes)) s.insert(l);
  for (i64 d : squarefree_scan(f, s)) std::cout << d << "\n";
  return kOk;
}

int cmd_represent_prime(const Options& o) {
  const auto t = split_ints(o.index);
  if (t.size() != 3) throw ParseError(1, 1, "--T expects n,r,mN");
  std::set<i64> ex;
  if (!o.exclude.empty())
    for (i64 q : split_ints(o.exclude)) ex.insert(q);
  const auto rep = represent_prime({t[0], t[1], t[2]}, o.level, ex, o.bound);
  std::cout << "c=" << rep.c << " d=" << rep.d << " q=" << rep.q << " A=[" << rep.a.a << "," << rep.a.b << ";"
            << rep.a.c << "," << rep.a.d << "] image=" << rep.image << "\n";
  return kOk;
}

int cmd_pipeline(const Options& o) {
  const FourierTable f = load_table(o.in);
  PipelineConfig cfg;
  if (!o.config.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text_file(o.config));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(1, 1, std::string("config: ") + e.what());
    }
    cfg = PipelineConfig::from_json(j);
  }
  const PipelineOutcome res = run_pipeline(f, cfg);
  emit(o.out, res.report.dump(2) + "\n");
  if (res.success) return kOk;
  return res.failure ? exit_code(*res.failure) : kStage;
}

int cmd_gen_random(const Options& o) {
  RandomTableSpec spec;
  spec.level = o.level;
  spec.weight = o.k ? o.k : 2;
  spec.disc_bound = o.disc_bound;
  spec.seed = o.seed;
  if (o.window > 0) spec.window = o.window;
  if (o.eps) spec.fricke_sign = o.eps;
  emit(o.out, serialize_table(random_symmetric_table(spec)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paramodular Fourier coefficient tables: Hecke relations, Jacobi slices, half-integral weight scans"};
  app.require_subcommand(1);
  Options o;
  int (*handler)(const Options&) = nullptr;

  auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&handler, fn] { handler = fn; });
    return sub;
  };

  auto* vc = add("verify-cosets", "build the U(p) representatives and certify them", cmd_verify_cosets);
  vc->add_option("--p", o.p, "prime exactly dividing N")->required();
  vc->add_option("--N", o.level, "paramodular level")->required();

  auto* ap = add("apply", "apply U(p) or T(p)+T(p^2) to a table", cmd_apply);
  ap->add_option("--op", o.op, "up or tp")->check(CLI::IsMember({"up", "tp"}));
  ap->add_option("--p", o.p, "prime")->required();
  ap->add_option("--in", o.in, "input table")->required();
  ap->add_option("--out", o.out, "output table (default stdout)");

  auto* co = add("check-oracle", "compare the closed U(p) relation with the coset computation", cmd_check_oracle);
  co->add_option("--p", o.p, "prime exactly dividing N")->required();
  co->add_option("--in", o.in, "input table")->required();
  co->add_flag("--float-check", o.float_check, "also run the floating-point phase summation");

  auto* fr = add("fricke", "report the Fricke sign of a table", cmd_fricke);
  fr->add_option("--in", o.in, "input table")->required();

  auto* eq = add("equivariance", "check the Gamma^0(N) coefficient symmetry", cmd_equivariance);
  eq->add_option("--in", o.in, "input table")->required();
  eq->add_option("--window", o.window, "restrict to n <= E, mN <= N E");

  auto* fj = add("fj", "extract one Fourier-Jacobi slice", cmd_fj);
  fj->add_option("--in", o.in, "input table")->required();
  fj->add_option("--m", o.m, "Jacobi index (bottom-right entry)")->required();
  fj->add_option("--out", o.out, "output slice (default stdout)");

  auto* sk = add("skoruppa", "map a Jacobi slice to a half-integral weight series", cmd_skoruppa);
  sk->add_option("--in", o.in, "input slice")->required();
  sk->add_option("--char", o.chr, "character spec q[:j],...");
  sk->add_option("--k", o.k, "weight (default: slice weight)");
  sk->add_option("--out", o.out, "output series (default stdout)");

  auto* dt = add("detect-theta", "test a series for the weight 3/2 theta shape", cmd_detect_theta);
  dt->add_option("--in", o.in, "input series")->required();
  dt->add_option("--max-modulus", o.max_modulus, "search moduli up to this bound instead of the level");

  auto* sc = add("scan", "list square-free D with nonzero coefficient", cmd_scan);
  sc->add_option("--in", o.in, "input series")->required();
  sc->add_option("--primes", o.primes, "comma-separated l with gcd(D, l) = 1 required");

  auto* rp = add("represent-prime", "find a prime represented by the form of an index", cmd_represent_prime);
  rp->add_option("--T", o.index, "index n,r,mN")->required();
  rp->add_option("--N", o.level, "level")->required();
  rp->add_option("--exclude", o.exclude, "comma-separated primes to skip");
  rp->add_option("--bound", o.bound, "search bound on |c|, |d|");

  auto* pl = add("pipeline", "run the full non-vanishing pipeline", cmd_pipeline);
  pl->add_option("--in", o.in, "input table")->required();
  pl->add_option("--config", o.config, "JSON configuration");
  pl->add_option("--out", o.out, "report path (default stdout)");

  auto* gr = add("gen-random", "write a pseudo-random symmetrized table", cmd_gen_random);
  gr->add_option("--N", o.level, "level")->required();
  gr->add_option("--k", o.k, "weight");
  gr->add_option("--bound", o.disc_bound, "discriminant bound");
  gr->add_option("--seed", o.seed, "RNG seed");
  gr->add_option("--window", o.window, "index window E");
  gr->add_option("--eps", o.eps, "Fricke sign +1 or -1")->check(CLI::IsMember({-1, 1}));
  gr->add_option("--out", o.out, "output table (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    return handler(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}
