#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "weiltrace/curve.hpp"
#include "weiltrace/symplectic.hpp"
#include "weiltrace/verify.hpp"

using namespace weiltrace;

namespace {

using ojson = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << content;
}

struct CommonOpts {
  std::string json_path;
  std::string csv_path;
  std::int64_t dim_cap = 4096;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("--json", opts.json_path, "write the JSON report here");
  sub->add_option("--csv", opts.csv_path, "write the CSV report here");
  sub->add_option("--dim-cap", opts.dim_cap,
                  "largest model dimension ell^n to build by brute force")
      ->capture_default_str();
}

int finish_sweep(SweepConfig cfg, const CommonOpts& opts) {
  cfg.dim_cap = opts.dim_cap;
  const SweepReport rep = run_sweep(cfg);
  if (!opts.json_path.empty()) write_file(opts.json_path, emit_json(rep));
  if (!opts.csv_path.empty()) write_file(opts.csv_path, emit_csv(rep));
  std::cout << to_string(cfg.mode) << " ell=" << cfg.ell;
  if (cfg.mode == SweepMode::gauss_only)
    std::cout << " size=" << cfg.gauss_size;
  else if (cfg.mode != SweepMode::curve)
    std::cout << " n=" << cfg.n;
  std::cout << " seed=" << cfg.seed << ": " << rep.pass_count << " passed, "
            << rep.fail_count << " failed\n";
  for (const TrialReport& t : rep.trials)
    if (!t.error.empty()) {
      std::cout << "  trial seed " << t.seed << " aborted: " << t.error
                << "\n";
      break;
    }
  return rep.fail_count == 0 ? 0 : 1;
}

const char* kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::PlusOne:
      return "plus-one";
    case BlockKind::MinusOne:
      return "minus-one";
    case BlockKind::SquarefreeFactor:
      return "factor";
  }
  return "unknown";
}

ojson poly_json(const FlPoly& f) {
  ojson a = ojson::array();
  for (int i = 0; i <= f.degree(); ++i) a.push_back(f.coeff(i));
  return a;
}

int run_decompose(std::int64_t ell, const std::string& matrix_path,
                  std::uint64_t seed, const CommonOpts& opts) {
  ojson parsed;
  try {
    parsed = ojson::parse(read_file(matrix_path));
  } catch (const ojson::parse_error& e) {
    throw std::invalid_argument(std::string("matrix file: ") + e.what());
  }
  if (!parsed.is_array())
    throw std::invalid_argument("matrix file must hold a row-major array");
  const std::size_t len = parsed.size();
  int d = 0;
  while (static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d + 1) <=
         len)
    ++d;
  if (static_cast<std::size_t>(d) * static_cast<std::size_t>(d) != len ||
      d == 0 || d % 2 != 0)
    throw std::invalid_argument(
        "matrix must be square of even dimension, row-major");
  FlMat S(ell, d, d);
  std::size_t i = 0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) S.set(r, c, parsed.at(i++).get<std::int64_t>());

  const SymplecticSpace V = SymplecticSpace::standard(ell, d / 2);
  if (!is_symplectomorphism(V, S))
    throw std::invalid_argument(
        "matrix does not preserve the standard symplectic form");

  const std::vector<InvariantBlock> blocks =
      invariant_decomposition(V, S, seed);

  FlPoly product = FlPoly::constant(ell, 1);
  ojson doc;
  doc["ell"] = ell;
  doc["dim"] = d;
  doc["charpoly"] = poly_json(charpoly(S));
  doc["blocks"] = ojson::array();
  for (const InvariantBlock& b : blocks) {
    product = product * b.charpoly_on_block;
    ojson bj;
    bj["kind"] = kind_name(b.kind);
    bj["dim"] = b.subspace.dim();
    ojson rows = ojson::array();
    for (const FlVec& row : b.subspace.basis()) {
      ojson rj = ojson::array();
      for (std::int64_t v : row) rj.push_back(v);
      rows.push_back(rj);
    }
    bj["basis"] = rows;
    bj["charpoly"] = poly_json(b.charpoly_on_block);
    doc["blocks"].push_back(bj);
  }
  const bool product_ok = product == charpoly(S);
  doc["charpoly_product_ok"] = product_ok;

  if (!opts.json_path.empty()) write_file(opts.json_path, doc.dump(2) + "\n");
  std::cout << "decompose ell=" << ell << " dim=" << d << ": "
            << blocks.size() << " invariant blocks";
  for (const InvariantBlock& b : blocks)
    std::cout << " [" << kind_name(b.kind) << " dim " << b.subspace.dim()
              << "]";
  std::cout << "\n  charpoly product check: "
            << (product_ok ? "exact" : "MISMATCH") << "\n";
  return product_ok ? 0 : 1;
}

int run_curve(const std::string& input_path, int trials, std::uint64_t seed,
              const CommonOpts& opts) {
  SweepConfig cfg;
  cfg.mode = SweepMode::curve;
  cfg.curve_input = read_file(input_path);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.n = 1;
  validate_config(cfg);

  const CurveSpec spec = parse_curve_spec(cfg.curve_input);
  cfg.ell = spec.ell;
  const CurveFrobeniusData data = extract_frobenius(spec);
  std::cout << "curve over F_" << spec.p;
  if (spec.e > 1) std::cout << "^" << spec.e;
  std::cout << " (a=" << spec.a << ", b=" << spec.b << "), ell=" << spec.ell
            << ":\n"
            << "  point-count trace " << data.trace_a
            << ", torsion field degree " << data.torsion_field_degree
            << ", fixed points " << data.fixed_count << "\n"
            << "  frobenius matrix " << data.frobenius.to_string()
            << " charpoly " << charpoly(data.frobenius).to_string() << "\n";
  return finish_sweep(std::move(cfg), opts);
}

int run_rep(std::int64_t ell, int n, std::uint64_t seed, int pairs,
            const CommonOpts& opts) {
  const RepCheckReport r = run_rep_check(ell, n, seed, pairs);
  if (!opts.json_path.empty()) write_file(opts.json_path, emit_rep_json(r));
  const auto line = [](const char* name, bool ok) {
    std::cout << "  " << name << ": " << (ok ? "ok" : "FAILED") << "\n";
  };
  std::cout << "rep-check ell=" << r.ell << " n=" << r.n << " dim=" << r.dim
            << "\n";
  line("dimension", r.dim_ok);
  line("homomorphism", r.homomorphism_ok);
  line("central character", r.central_character_ok);
  line("irreducibility norm sum", r.irreducible_ok);
  line("intertwining", r.intertwiner_ok);
  line("covariance", r.covariance_ok);
  std::cout << "  composition scalars (reported, not asserted):";
  for (const CycScalar& s : r.multiplicativity_scalars)
    std::cout << " " << s.to_string();
  std::cout << "\n";
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact verification of trace identities for the metaplectic model "
      "over F_ell: brute-force operator traces against closed forms, "
      "quadratic character sums, and elliptic-curve Frobenius data."};
  app.require_subcommand(1);

  std::int64_t ell = 3;
  int n = 1;
  int trials = 10;
  int gauss_size = 2;
  int pairs = 200;
  std::uint64_t seed = 1;
  bool any_g = false;
  std::string matrix_path;
  std::string input_path;
  CommonOpts trace_opts, gauss_opts, main_opts, rep_opts, dec_opts, curve_opts;

  CLI::App* trace = app.add_subcommand(
      "trace-check",
      "closed-form vs brute-force vs contribution-set traces");
  trace->add_option("--ell", ell, "odd prime modulus")->required();
  trace->add_option("--dim", n, "half-dimension n")->required();
  trace->add_option("--trials", trials, "independent trials")
      ->capture_default_str();
  trace->add_option("--seed", seed, "master seed")->capture_default_str();
  trace->add_flag("--any-g", any_g,
                  "draw arbitrary symplectomorphisms, semisimple or not");
  add_common(trace, trace_opts);

  CLI::App* gauss = app.add_subcommand(
      "gauss-check", "brute-force vs closed-form quadratic character sums");
  gauss->add_option("--ell", ell, "odd prime modulus")->required();
  gauss->add_option("--size", gauss_size, "form size")->capture_default_str();
  gauss->add_option("--trials", trials, "independent trials")
      ->capture_default_str();
  gauss->add_option("--seed", seed, "master seed")->capture_default_str();
  add_common(gauss, gauss_opts);

  CLI::App* mainchk = app.add_subcommand(
      "main-check",
      "full trace identity: operator trace vs signed character sum");
  mainchk->add_option("--ell", ell, "odd prime modulus")->required();
  mainchk->add_option("--dim", n, "half-dimension n")->required();
  mainchk->add_option("--trials", trials, "independent trials")
      ->capture_default_str();
  mainchk->add_option("--seed", seed, "master seed")->capture_default_str();
  add_common(mainchk, main_opts);

  CLI::App* rep = app.add_subcommand(
      "rep-check",
      "representation axioms, irreducibility, intertwiner properties");
  rep->add_option("--ell", ell, "odd prime modulus")->required();
  rep->add_option("--dim", n, "half-dimension n")->required();
  rep->add_option("--seed", seed, "master seed")->capture_default_str();
  rep->add_option("--pairs", pairs, "random pairs for the homomorphism check")
      ->capture_default_str();
  add_common(rep, rep_opts);

  CLI::App* dec = app.add_subcommand(
      "decompose", "invariant symplectic block decomposition of a matrix");
  dec->add_option("--ell", ell, "odd prime modulus")->required();
  dec->add_option("--matrix", matrix_path,
                  "JSON file holding the matrix, row-major")
      ->required();
  dec->add_option("--seed", seed, "seed for the cyclic-subspace search")
      ->capture_default_str();
  add_common(dec, dec_opts);

  CLI::App* curve = app.add_subcommand(
      "curve", "extract Frobenius from a curve spec and run every check");
  curve->add_option("--input", input_path, "JSON curve spec file")
      ->required();
  curve->add_option("--trials", trials, "pairings to draw")->default_val(1);
  curve->add_option("--seed", seed, "master seed for the pairings")
      ->capture_default_str();
  add_common(curve, curve_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*trace) {
      SweepConfig cfg;
      cfg.mode = any_g ? SweepMode::random_any : SweepMode::random_semisimple;
      cfg.ell = ell;
      cfg.n = n;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.check_main = false;
      return finish_sweep(std::move(cfg), trace_opts);
    }
    if (*gauss) {
      SweepConfig cfg;
      cfg.mode = SweepMode::gauss_only;
      cfg.ell = ell;
      cfg.gauss_size = gauss_size;
      cfg.trials = trials;
      cfg.seed = seed;
      return finish_sweep(std::move(cfg), gauss_opts);
    }
    if (*mainchk) {
      SweepConfig cfg;
      cfg.mode = SweepMode::random_semisimple;
      cfg.ell = ell;
      cfg.n = n;
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.check_main = true;
      return finish_sweep(std::move(cfg), main_opts);
    }
    if (*rep) return run_rep(ell, n, seed, pairs, rep_opts);
    if (*dec) return run_decompose(ell, matrix_path, seed, dec_opts);
    if (*curve) return run_curve(input_path, trials, seed, curve_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
