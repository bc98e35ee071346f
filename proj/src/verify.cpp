#include "weiltrace/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "weiltrace/curve.hpp"
#include "weiltrace/heisenberg.hpp"

namespace weiltrace {

namespace {

using ojson = nlohmann::ordered_json;

std::int64_t pow_capped(std::int64_t base, int e, std::int64_t cap) {
  std::int64_t p = 1;
  for (int i = 0; i < e; ++i) {
    p *= base;
    if (p > cap) return cap + 1;
  }
  return p;
}

ojson mat_to_json(const FlMat& M) {
  ojson a = ojson::array();
  for (int r = 0; r < M.rows(); ++r)
    for (int c = 0; c < M.cols(); ++c) a.push_back(M.at(r, c));
  return a;
}

FlMat mat_from_json(std::int64_t ell, const ojson& a) {
  const std::size_t len = a.size();
  int d = 0;
  while (static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d + 1) <=
         len)
    ++d;
  if (static_cast<std::size_t>(d) * static_cast<std::size_t>(d) != len)
    throw std::invalid_argument("matrix entry count is not a square");
  FlMat M(ell, d, d);
  std::size_t i = 0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) M.set(r, c, a.at(i++).get<std::int64_t>());
  return M;
}

ojson poly_to_json(const FlPoly& f) {
  ojson a = ojson::array();
  for (int i = 0; i <= f.degree(); ++i) a.push_back(f.coeff(i));
  return a;
}

FlPoly poly_from_json(std::int64_t ell, const ojson& a) {
  std::vector<std::int64_t> c;
  for (const auto& v : a) c.push_back(v.get<std::int64_t>());
  return FlPoly(ell, std::move(c));
}

std::string rational_to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

ojson cyc_to_json(const CycScalar& s) {
  ojson a = ojson::array();
  for (const Rational& c : s.coeffs()) a.push_back(rational_to_string(c));
  return a;
}

CycScalar cyc_from_json(std::int64_t ell, const ojson& a) {
  CycScalar s(ell);
  std::int64_t e = 0;
  for (const auto& v : a) {
    Rational r(v.get<std::string>());
    r.canonicalize();
    s += CycScalar::zeta_pow(ell, e++) * r;
  }
  return s;
}

ojson opt_bool(const std::optional<bool>& b) {
  if (!b) return nullptr;
  return *b;
}

std::optional<bool> opt_bool_from(const ojson& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<bool>();
}

ojson trial_to_json(const TrialReport& t) {
  ojson j;
  j["seed"] = t.seed;
  j["g"] = t.g ? mat_to_json(*t.g) : ojson(nullptr);
  j["charpoly"] = t.charpoly_g ? poly_to_json(*t.charpoly_g) : ojson(nullptr);
  j["n_minus1"] = t.n_minus1 ? ojson(*t.n_minus1) : ojson(nullptr);
  j["fixed_dim"] = t.fixed_dim;
  j["fbar"] = t.fbar ? poly_to_json(*t.fbar) : ojson(nullptr);
  j["semisimple"] = opt_bool(t.semisimple);
  if (t.closed) {
    ojson c;
    c["sign"] = t.closed->sign;
    c["ell_power"] = t.closed->ell_power;
    j["closed"] = c;
  } else {
    j["closed"] = nullptr;
  }
  j["value"] = t.value ? cyc_to_json(*t.value) : ojson(nullptr);
  j["brute_equal"] = opt_bool(t.brute_equal);
  j["lemma_equal"] = opt_bool(t.lemma_equal);
  j["main_equal"] = opt_bool(t.main_equal);
  j["dim_identity"] = opt_bool(t.dim_identity);
  j["pairing"] = t.pairing ? mat_to_json(*t.pairing) : ojson(nullptr);
  j["error"] = t.error.empty() ? ojson(nullptr) : ojson(t.error);
  j["pass"] = t.pass;
  return j;
}

TrialReport trial_from_json(std::int64_t ell, const ojson& j) {
  TrialReport t;
  t.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("g").is_null()) t.g = mat_from_json(ell, j.at("g"));
  if (!j.at("charpoly").is_null())
    t.charpoly_g = poly_from_json(ell, j.at("charpoly"));
  if (!j.at("n_minus1").is_null()) t.n_minus1 = j.at("n_minus1").get<int>();
  t.fixed_dim = j.at("fixed_dim").get<int>();
  if (!j.at("fbar").is_null()) t.fbar = poly_from_json(ell, j.at("fbar"));
  t.semisimple = opt_bool_from(j.at("semisimple"));
  if (!j.at("closed").is_null()) {
    ClosedTraceReport c;
    c.sign = j.at("closed").at("sign").get<int>();
    c.ell_power = j.at("closed").at("ell_power").get<int>();
    t.closed = c;
  }
  if (!j.at("value").is_null()) t.value = cyc_from_json(ell, j.at("value"));
  t.brute_equal = opt_bool_from(j.at("brute_equal"));
  t.lemma_equal = opt_bool_from(j.at("lemma_equal"));
  t.main_equal = opt_bool_from(j.at("main_equal"));
  t.dim_identity = opt_bool_from(j.at("dim_identity"));
  if (!j.at("pairing").is_null()) t.pairing = mat_from_json(ell, j.at("pairing"));
  if (!j.at("error").is_null()) t.error = j.at("error").get<std::string>();
  t.pass = j.at("pass").get<bool>();
  return t;
}

/// Conjunction of every engaged equality flag; vacuous trials pass.
bool conclude(const TrialReport& t) {
  if (!t.error.empty()) return false;
  for (const auto& f :
       {t.brute_equal, t.lemma_equal, t.main_equal, t.dim_identity})
    if (f && !*f) return false;
  return true;
}

TrialReport run_g_trial(const SweepConfig& cfg, const SymplecticSpace& V,
                        const FlMat& g, std::uint64_t trial_seed,
                        std::mt19937_64& rng) {
  TrialReport t;
  t.seed = trial_seed;
  t.g = g;
  const FlPoly cp = charpoly(g);
  t.charpoly_g = cp;
  const EigenDims ed = eigen_dims(g);
  t.n_minus1 = ed.neg_dim;
  t.fixed_dim = ed.fixed_dim;
  const UnitFactorSplit split = strip_unit_factors(cp);
  t.fbar = split.remaining;
  const bool ss = is_semisimple(g);
  t.semisimple = ss;

  const bool under_cap = pow_capped(V.ell(), V.n(), cfg.dim_cap) <= cfg.dim_cap;
  std::optional<CycScalar> brute;
  if (under_cap) {
    const RepSpace rep = RepSpace::standard(V);
    brute = brute_trace(rep, g);
    t.lemma_equal = (trace_via_S_set(rep, g) == *brute);
    t.value = brute;
  }

  if (ss) {
    const ClosedTrace ct = trace_closed_form(V, g);
    t.closed = ClosedTraceReport{ct.sign, ct.fixed_halfdim};
    t.value = ct.value;
    if (brute) t.brute_equal = (ct.value == *brute);
    t.dim_identity = check_dimension_identity(g);
    if (cfg.check_main) {
      const FlMat Q = random_pairing(V.ell(), ed.fixed_dim, rng);
      t.pairing = Q;
      const MainTheoremCheck mt =
          check_main_theorem(V, g, QuadraticForm(Q), cfg.dim_cap, brute);
      t.main_equal = mt.all_equal;
    }
  }

  t.pass = conclude(t);
  return t;
}

TrialReport run_gauss_trial(const SweepConfig& cfg, std::uint64_t trial_seed,
                            std::mt19937_64& rng) {
  TrialReport t;
  t.seed = trial_seed;
  const FlMat Q = random_pairing(cfg.ell, cfg.gauss_size, rng);
  t.pairing = Q;
  t.fixed_dim = Q.rows();
  const QuadraticForm qf(Q);
  const CycScalar closed = quad_gauss_closed(qf);
  t.value = closed;
  if (pow_capped(cfg.ell, cfg.gauss_size, kEnumCap) <= kEnumCap)
    t.brute_equal = (quad_gauss_brute(qf) == closed);
  t.pass = conclude(t);
  return t;
}

}  // namespace

std::string to_string(SweepMode m) {
  switch (m) {
    case SweepMode::random_semisimple:
      return "random-semisimple";
    case SweepMode::random_any:
      return "random-any";
    case SweepMode::curve:
      return "curve";
    case SweepMode::gauss_only:
      return "gauss-only";
  }
  throw std::logic_error("unknown sweep mode");
}

SweepMode sweep_mode_from_string(const std::string& s) {
  if (s == "random-semisimple") return SweepMode::random_semisimple;
  if (s == "random-any") return SweepMode::random_any;
  if (s == "curve") return SweepMode::curve;
  if (s == "gauss-only") return SweepMode::gauss_only;
  throw std::invalid_argument("unknown sweep mode: " + s);
}

void validate_config(const SweepConfig& cfg) {
  (void)PrimeField(cfg.ell);
  detail::require(cfg.trials >= 0, "trial count must be nonnegative");
  detail::require(cfg.dim_cap >= 1, "dimension cap must be positive");
  switch (cfg.mode) {
    case SweepMode::random_semisimple:
    case SweepMode::random_any:
      detail::require(cfg.n >= 1 && cfg.n <= 16,
                      "half-dimension out of range");
      break;
    case SweepMode::gauss_only:
      detail::require(cfg.gauss_size >= 0 && cfg.gauss_size <= 16,
                      "form size out of range");
      break;
    case SweepMode::curve:
      detail::require(!cfg.curve_input.empty(), "curve mode needs a spec");
      (void)parse_curve_spec(cfg.curve_input);
      break;
  }
}

bool check_dimension_identity(const FlMat& g) {
  detail::require(g.is_square(), "dimension identity needs a square matrix");
  const EigenDims ed = eigen_dims(g);
  const UnitFactorSplit split = strip_unit_factors(charpoly(g));
  return ed.neg_dim + ed.fixed_dim + split.remaining.degree() == g.rows();
}

MainTheoremCheck check_main_theorem(
    const SymplecticSpace& V, const FlMat& g, const QuadraticForm& Q,
    std::int64_t dim_cap, const std::optional<CycScalar>& precomputed_brute) {
  detail::require(is_symplectomorphism(V, g),
                  "trace identity needs a symplectomorphism");
  detail::require(is_semisimple(g),
                  "trace identity needs a semisimple element");
  detail::require(Q.ell() == V.ell(), "pairing modulus mismatch");
  const EigenDims ed = eigen_dims(g);
  detail::require(Q.size() == ed.fixed_dim,
                  "pairing size must be the fixed-space dimension");

  const PrimeField F(V.ell());
  MainTheoremCheck out;

  const ClosedTrace ct = trace_closed_form(V, g);
  out.closed_lhs = ct.value;

  const UnitFactorSplit split = strip_unit_factors(charpoly(g));
  const std::int64_t arg = F.mul(
      F.mul(F.pow(F.neg(1), V.n()), split.remaining.eval(1)), Q.determinant());
  out.sign = F.legendre(arg);
  const Rational s(out.sign);

  out.closed_rhs = quad_gauss_closed(Q) * s;
  if (pow_capped(V.ell(), Q.size(), kEnumCap) <= kEnumCap) {
    out.brute_rhs = quad_gauss_brute(Q) * s;
    out.used_brute_sum = true;
  }
  if (precomputed_brute) {
    out.brute_lhs = *precomputed_brute;
    out.used_brute_trace = true;
  } else if (pow_capped(V.ell(), V.n(), dim_cap) <= dim_cap) {
    out.brute_lhs = brute_trace(RepSpace::standard(V), g);
    out.used_brute_trace = true;
  }

  bool eq = out.closed_lhs == out.closed_rhs;
  if (out.used_brute_trace) eq = eq && out.brute_lhs == out.closed_lhs;
  if (out.used_brute_sum) eq = eq && out.brute_rhs == out.closed_rhs;
  out.all_equal = eq;
  return out;
}

FlMat random_pairing(std::int64_t ell, int size, std::mt19937_64& rng) {
  detail::require(size >= 0, "pairing size must be nonnegative");
  const auto mod = static_cast<std::uint64_t>(ell);
  for (;;) {
    FlMat Q(ell, size, size);
    for (int r = 0; r < size; ++r)
      for (int c = r; c < size; ++c) {
        const auto v = static_cast<std::int64_t>(rng() % mod);
        Q.set(r, c, v);
        Q.set(c, r, v);
      }
    if (det(Q) != 0) return Q;
  }
}

SweepReport run_sweep(const SweepConfig& cfg) {
  validate_config(cfg);
  SweepReport rep;
  rep.config = cfg;

  std::optional<std::pair<SymplecticSpace, FlMat>> curve_vg;
  if (cfg.mode == SweepMode::curve)
    curve_vg = curve_to_symplectic(extract_frobenius(
        parse_curve_spec(cfg.curve_input)));

  rep.trials.resize(static_cast<std::size_t>(cfg.trials));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < cfg.trials; ++i) {
    const std::uint64_t trial_seed =
        detail::mix_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const auto t0 = std::chrono::steady_clock::now();
    TrialReport t;
    try {
      std::mt19937_64 rng(trial_seed);
      switch (cfg.mode) {
        case SweepMode::random_semisimple: {
          const SymplecticSpace V = SymplecticSpace::standard(cfg.ell, cfg.n);
          const SemisimpleProfile profile =
              random_profile(cfg.ell, cfg.n, rng());
          const FlMat g = random_semisimple_symplectic(V, profile, rng());
          t = run_g_trial(cfg, V, g, trial_seed, rng);
          break;
        }
        case SweepMode::random_any: {
          const SymplecticSpace V = SymplecticSpace::standard(cfg.ell, cfg.n);
          const FlMat g = random_symplectic(V, rng());
          t = run_g_trial(cfg, V, g, trial_seed, rng);
          break;
        }
        case SweepMode::curve:
          t = run_g_trial(cfg, curve_vg->first, curve_vg->second, trial_seed,
                          rng);
          break;
        case SweepMode::gauss_only:
          t = run_gauss_trial(cfg, trial_seed, rng);
          break;
      }
    } catch (const std::exception& e) {
      t = TrialReport{};
      t.seed = trial_seed;
      t.error = e.what();
      t.pass = false;
    }
    t.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    rep.trials[static_cast<std::size_t>(i)] = std::move(t);
  }

  for (const TrialReport& t : rep.trials)
    (t.pass ? rep.pass_count : rep.fail_count)++;
  return rep;
}

std::string emit_json(const SweepReport& report) {
  const SweepConfig& cfg = report.config;
  ojson j;
  ojson c;
  c["mode"] = to_string(cfg.mode);
  c["ell"] = cfg.ell;
  c["n"] = cfg.n;
  c["trials"] = cfg.trials;
  c["seed"] = cfg.seed;
  c["dim_cap"] = cfg.dim_cap;
  c["gauss_size"] = cfg.gauss_size;
  c["check_main"] = cfg.check_main;
  c["curve"] = cfg.curve_input.empty() ? ojson(nullptr)
                                       : ojson::parse(cfg.curve_input);
  j["config"] = c;
  j["trials"] = ojson::array();
  for (const TrialReport& t : report.trials)
    j["trials"].push_back(trial_to_json(t));
  j["summary"] = ojson{{"pass", report.pass_count},
                       {"fail", report.fail_count}};
  return j.dump(2) + "\n";
}

std::string emit_csv(const SweepReport& report) {
  std::string out =
      "trial,seed,mode,semisimple,fixed_dim,closed_sign,closed_ell_power,"
      "brute_equal,lemma_equal,main_equal,dim_identity,pass,elapsed_ms\n";
  const auto cell = [](const std::optional<bool>& b) -> std::string {
    if (!b) return "";
    return *b ? "true" : "false";
  };
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const TrialReport& t = report.trials[i];
    out += std::to_string(i) + "," + std::to_string(t.seed) + "," +
           to_string(report.config.mode) + "," + cell(t.semisimple) + "," +
           std::to_string(t.fixed_dim) + ",";
    if (t.closed)
      out += std::to_string(t.closed->sign) + "," +
             std::to_string(t.closed->ell_power);
    else
      out += ",";
    out += "," + cell(t.brute_equal) + "," + cell(t.lemma_equal) + "," +
           cell(t.main_equal) + "," + cell(t.dim_identity) + "," +
           (t.pass ? "true" : "false") + ",";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", t.elapsed_ms);
    out += buf;
    out += "\n";
  }
  return out;
}

SweepReport parse_report_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw std::invalid_argument(std::string("report parse: ") + e.what());
  }
  try {
    SweepReport rep;
    const ojson& c = j.at("config");
    rep.config.mode = sweep_mode_from_string(c.at("mode").get<std::string>());
    rep.config.ell = c.at("ell").get<std::int64_t>();
    rep.config.n = c.at("n").get<int>();
    rep.config.trials = c.at("trials").get<int>();
    rep.config.seed = c.at("seed").get<std::uint64_t>();
    rep.config.dim_cap = c.at("dim_cap").get<std::int64_t>();
    rep.config.gauss_size = c.at("gauss_size").get<int>();
    rep.config.check_main = c.at("check_main").get<bool>();
    rep.config.curve_input =
        c.at("curve").is_null() ? std::string() : c.at("curve").dump();
    for (const auto& tj : j.at("trials"))
      rep.trials.push_back(trial_from_json(rep.config.ell, tj));
    rep.pass_count = j.at("summary").at("pass").get<int>();
    rep.fail_count = j.at("summary").at("fail").get<int>();
    return rep;
  } catch (const ojson::exception& e) {
    throw std::invalid_argument(std::string("report structure: ") + e.what());
  }
}

RepCheckReport run_rep_check(std::int64_t ell, int n, std::uint64_t seed,
                             int pair_samples) {
  detail::require(n >= 1 && n <= 8, "half-dimension out of range");
  detail::require(pair_samples >= 0, "sample count must be nonnegative");
  const SymplecticSpace V = SymplecticSpace::standard(ell, n);
  const RepSpace rep = RepSpace::standard(V);
  detail::require(rep.dim() <= 256, "model too large for dense matrix checks");

  RepCheckReport r;
  r.ell = ell;
  r.n = n;
  r.dim = rep.dim();
  r.dim_ok = rep.dim() == pow_capped(ell, n, kEnumCap);

  const auto mod = static_cast<std::uint64_t>(ell);
  std::mt19937_64 rng(seed);
  const auto random_heis = [&]() {
    HeisenbergElement h;
    h.z = static_cast<std::int64_t>(rng() % mod);
    h.v.assign(static_cast<std::size_t>(V.dim()), 0);
    for (auto& coord : h.v) coord = static_cast<std::int64_t>(rng() % mod);
    return h;
  };

  r.homomorphism_ok = true;
  for (int i = 0; i < pair_samples && r.homomorphism_ok; ++i) {
    const HeisenbergElement a = random_heis();
    const HeisenbergElement b = random_heis();
    if (pi_operator(rep, a) * pi_operator(rep, b) !=
        pi_operator(rep, heis_mul(V, a, b)))
      r.homomorphism_ok = false;
  }

  const int d = static_cast<int>(rep.dim());
  r.central_character_ok = true;
  for (std::int64_t z = 0; z < ell; ++z) {
    const HeisenbergElement h{z, FlVec(static_cast<std::size_t>(V.dim()), 0)};
    if (pi_operator(rep, h) !=
        CycMatrix::identity(ell, d).scaled(CycScalar::zeta_pow(ell, z))) {
      r.central_character_ok = false;
      break;
    }
  }

  {
    std::int64_t group = pow_capped(ell, 2 * n + 1, kEnumCap);
    detail::require(group <= kEnumCap, "group enumeration too large");
    CycScalar acc(ell);
    FlVec v(static_cast<std::size_t>(V.dim()), 0);
    for (std::int64_t z = 0; z < ell; ++z) {
      std::fill(v.begin(), v.end(), 0);
      for (;;) {
        const CycScalar chi = char_of_pi(rep, HeisenbergElement{z, v});
        acc += chi * chi.conjugate();
        std::size_t jdx = 0;
        while (jdx < v.size() && ++v[jdx] == ell) v[jdx++] = 0;
        if (jdx == v.size()) break;
      }
    }
    r.irreducible_ok = acc == CycScalar::from_int(ell, group);
  }

  std::vector<HeisenbergElement> gens;
  gens.push_back(
      HeisenbergElement{1, FlVec(static_cast<std::size_t>(V.dim()), 0)});
  for (int i = 0; i < V.dim(); ++i) {
    FlVec e(static_cast<std::size_t>(V.dim()), 0);
    e[static_cast<std::size_t>(i)] = 1;
    gens.push_back(HeisenbergElement{0, std::move(e)});
  }

  r.intertwiner_ok = true;
  for (int s = 0; s < 5 && r.intertwiner_ok; ++s) {
    const FlMat g = random_symplectic(V, rng());
    const RepSpace other =
        RepSpace::with_default_complement(V, rep.lagrangian().transformed(g));
    const CycMatrix T = intertwiner(rep, other);
    for (const HeisenbergElement& h : gens)
      if (T * pi_operator(other, h) != pi_operator(rep, h) * T) {
        r.intertwiner_ok = false;
        break;
      }
  }

  r.covariance_ok = true;
  for (int s = 0; s < 5 && r.covariance_ok; ++s) {
    const FlMat g = random_symplectic(V, rng());
    const CycMatrix rho = weil_operator(rep, g);
    for (const HeisenbergElement& h : gens)
      if (rho * pi_operator(rep, h) !=
          pi_operator(rep, heis_apply(g, h)) * rho) {
        r.covariance_ok = false;
        break;
      }
  }

  for (int s = 0; s < 5; ++s) {
    const FlMat g1 = random_symplectic(V, rng());
    const FlMat g2 = random_symplectic(V, rng());
    const CycMatrix lhs = weil_operator(rep, g1) * weil_operator(rep, g2);
    const CycMatrix rhs = weil_operator(rep, g1 * g2);
    CycScalar ratio;
    bool found = false;
    for (int rr = 0; rr < rhs.rows() && !found; ++rr)
      for (int cc = 0; cc < rhs.cols() && !found; ++cc)
        if (!rhs.at(rr, cc).is_zero()) {
          ratio = lhs.at(rr, cc) * rhs.at(rr, cc).inverse();
          found = true;
        }
    if (!found || lhs != rhs.scaled(ratio))
      throw std::logic_error("composed operators are not scalar-related");
    r.multiplicativity_scalars.push_back(ratio);
  }

  r.pass = r.dim_ok && r.homomorphism_ok && r.central_character_ok &&
           r.irreducible_ok && r.intertwiner_ok && r.covariance_ok;
  return r;
}

std::string emit_rep_json(const RepCheckReport& report) {
  ojson j;
  j["ell"] = report.ell;
  j["n"] = report.n;
  j["dim"] = report.dim;
  j["dim_ok"] = report.dim_ok;
  j["homomorphism_ok"] = report.homomorphism_ok;
  j["central_character_ok"] = report.central_character_ok;
  j["irreducible_ok"] = report.irreducible_ok;
  j["intertwiner_ok"] = report.intertwiner_ok;
  j["covariance_ok"] = report.covariance_ok;
  j["multiplicativity_scalars"] = ojson::array();
  for (const CycScalar& s : report.multiplicativity_scalars)
    j["multiplicativity_scalars"].push_back(cyc_to_json(s));
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

}  // namespace weiltrace
