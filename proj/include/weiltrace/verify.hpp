#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "weiltrace/cyclotomic.hpp"
#include "weiltrace/matrix.hpp"
#include "weiltrace/poly.hpp"
#include "weiltrace/symplectic.hpp"
#include "weiltrace/trace_formulas.hpp"

namespace weiltrace {

enum class SweepMode { random_semisimple, random_any, curve, gauss_only };

std::string to_string(SweepMode m);
SweepMode sweep_mode_from_string(const std::string& s);

struct SweepConfig {
  std::int64_t ell = 3;
  int n = 1;       // half-dimension of the symplectic space
  int trials = 0;
  std::uint64_t seed = 1;
  std::int64_t dim_cap = 4096;  // largest model dimension ell^n built
  SweepMode mode = SweepMode::random_semisimple;
  int gauss_size = 1;       // form size in gauss-only mode
  bool check_main = true;   // draw a pairing and test the full equality
  std::string curve_input;  // raw curve spec JSON in curve mode
};

void validate_config(const SweepConfig& cfg);

struct ClosedTraceReport {
  int sign = 0;
  int ell_power = 0;  // the closed trace is sign * ell^{ell_power}
};

/// Outcome of one independent trial. Fields that do not apply to the
/// trial's mode (or to a non-semisimple draw) stay disengaged and
/// serialize as null. Every engaged "equal" field is an exact comparison
/// in Q(zeta_ell).
struct TrialReport {
  std::uint64_t seed = 0;
  std::optional<FlMat> g;
  std::optional<FlPoly> charpoly_g;
  std::optional<int> n_minus1;  // dim ker(g + I)
  int fixed_dim = 0;            // dim ker(g - I); form size in gauss mode
  std::optional<FlPoly> fbar;   // charpoly with unit-root factors removed
  std::optional<bool> semisimple;
  std::optional<ClosedTraceReport> closed;
  std::optional<CycScalar> value;  // the verified trace / character sum
  std::optional<bool> brute_equal;
  std::optional<bool> lemma_equal;
  std::optional<bool> main_equal;
  std::optional<bool> dim_identity;
  std::optional<FlMat> pairing;
  std::string error;  // nonempty when the trial aborted
  bool pass = false;
  double elapsed_ms = 0.0;  // reported in CSV only
};

struct SweepReport {
  SweepConfig config;
  std::vector<TrialReport> trials;
  int pass_count = 0;
  int fail_count = 0;
};

/// dim ker(g+I) + dim ker(g-I) + deg fbar == 2n, with the eigenspace
/// dimensions measured as actual kernel dimensions and fbar read off the
/// characteristic polynomial. An identity for semisimple
/// symplectomorphisms; fails exactly when the unit-eigenvalue part of g
/// is not semisimple.
bool check_dimension_identity(const FlMat& g);

struct MainTheoremCheck {
  int sign = 0;  // legendre((-1)^n * fbar(1) * det Q)
  CycScalar brute_lhs;   // operator trace summed entry by entry
  CycScalar closed_lhs;  // closed-form trace
  CycScalar brute_rhs;   // sign * enumerated character sum of Q
  CycScalar closed_rhs;  // sign * closed-form character sum
  bool used_brute_trace = false;  // false above dim_cap
  bool used_brute_sum = false;    // false above the enumeration cap
  bool all_equal = false;         // every computed value agrees
};

/// Both sides of the trace identity: the operator trace of a semisimple
/// symplectomorphism g on the ell^n-dimensional model against the signed
/// character sum of a symmetric nondegenerate pairing Q on the g-fixed
/// subspace (Q.size() must equal dim ker(g-I)). A precomputed operator
/// trace may be passed to avoid recomputing it.
MainTheoremCheck check_main_theorem(
    const SymplecticSpace& V, const FlMat& g, const QuadraticForm& Q,
    std::int64_t dim_cap = 4096,
    const std::optional<CycScalar>& precomputed_brute = std::nullopt);

/// Random symmetric matrix over F_ell, rejection-sampled to nonzero
/// determinant; size 0 gives the empty form.
FlMat random_pairing(std::int64_t ell, int size, std::mt19937_64& rng);

/// Runs cfg.trials independent trials (trial i seeds its generator from
/// (cfg.seed, i)), in parallel when OpenMP is available; the report is
/// ordered by trial index regardless.
SweepReport run_sweep(const SweepConfig& cfg);

/// Deterministic JSON: stable field order, exact values, no timings.
std::string emit_json(const SweepReport& report);

/// One row per trial; elapsed milliseconds in the last column.
std::string emit_csv(const SweepReport& report);

/// Inverse of emit_json (timings come back as zero).
SweepReport parse_report_json(const std::string& text);

/// Structural checks of one fixed model: dimension, the homomorphism
/// property on random pairs, the central character, the character-norm
/// criterion for irreducibility, intertwining against random Lagrangian
/// models, and covariance of the symplectomorphism action. The scalar
/// rho(g1) rho(g2) / rho(g1 g2) is measured on sample pairs and reported
/// as data, not asserted.
struct RepCheckReport {
  std::int64_t ell = 0;
  int n = 0;
  std::int64_t dim = 0;
  bool dim_ok = false;
  bool homomorphism_ok = false;
  bool central_character_ok = false;
  bool irreducible_ok = false;
  bool intertwiner_ok = false;
  bool covariance_ok = false;
  std::vector<CycScalar> multiplicativity_scalars;
  bool pass = false;
};

RepCheckReport run_rep_check(std::int64_t ell, int n, std::uint64_t seed,
                             int pair_samples = 200);

std::string emit_rep_json(const RepCheckReport& report);

}  // namespace weiltrace
