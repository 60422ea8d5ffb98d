#include "ghzpur/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ghzpur/dense_ops.hpp"
#include "ghzpur/exact_engine.hpp"
#include "ghzpur/reference_states.hpp"

namespace ghzpur {

namespace {

namespace pp = pure_pipeline;

constexpr double kDiagTol = 1e-9;
constexpr double kClosureTol = 1e-10;

/// Accumulates the worst deviation of a check against its tolerance.
class Check {
 public:
  Check(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}

  void record(double deviation, const std::string& where) {
    if (!(deviation <= worst_)) {
      worst_ = deviation;
      worst_at_ = where;
    }
  }

  CheckResult result() const {
    const bool ok = worst_ <= tol_;
    std::string detail = "tol " + format(tol_);
    if (!worst_at_.empty()) detail += "; worst at " + worst_at_;
    return {name_, ok, worst_, detail};
  }

 private:
  static std::string format(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  std::string name_;
  double tol_;
  double worst_ = 0.0;
  std::string worst_at_;
};

Eigen::VectorXcd normalized(const Eigen::VectorXcd& v) {
  const double norm = v.norm();
  return norm == 0.0 ? v : Eigen::VectorXcd(v / norm);
}

Eigen::VectorXcd ghz_vec(const GhzLabel& l) { return ghz_label_to_state(l, l.n_qubits()).amplitudes(); }

std::string nq(int n) { return "n=" + std::to_string(n); }

CheckResult check_basis(int n_max) {
  Check c("ghz-basis", kExactTol);
  for (int n = 2; n <= n_max; ++n) {
    const Eigen::MatrixXcd g = ghz_gram_matrix(n);
    c.record((g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff(), nq(n));
  }
  return c.result();
}

CheckResult check_hadamard_table(int n_max) {
  Check c("hadamard-table", kExactTol);
  std::vector<std::string> sign_flipped;
  for (const auto& row : reference::hadamard_table()) {
    std::string complement = row.first;
    for (char& ch : complement) ch = ch == '0' ? '1' : '0';
    const Eigen::VectorXcd paper_state =
        reference::from_terms({{row.first, +1}, {complement, row.sign}}, 1.0 / std::sqrt(2.0));
    const PureState h = hadamard_all(PureState(3, paper_state));
    const Eigen::VectorXcd expected = reference::from_terms(row.expansion, 0.5);
    // Rows are states, so compare as rays; a printed row off by a sign is noted.
    c.record(dense::distance_up_to_phase(h.amplitudes(), expected), row.name);
    if ((h.amplitudes() - expected).cwiseAbs().maxCoeff() > kExactTol) {
      sign_flipped.push_back(row.name);
    }
  }
  for (int n = 2; n <= n_max; ++n) {
    for (const GhzLabel& l : all_labels(n)) {
      const PureState h = hadamard_all(ghz_label_to_state(l, n));
      const int want = l.sign() == Sign::Plus ? 0 : 1;
      double stray = 0.0;
      for (Eigen::Index i = 0; i < h.amplitudes().size(); ++i) {
        if (dense::parity(static_cast<std::uint64_t>(i)) != want) {
          stray = std::max(stray, std::abs(h.amplitudes()(i)));
        }
      }
      c.record(stray, nq(n) + " " + l.to_string());
    }
  }
  CheckResult r = c.result();
  for (const auto& name : sign_flipped) r.detail += "; row " + name + " differs by a global sign";
  return r;
}

CheckResult check_p1_states(int n_max) {
  Check c("p1-state-vectors", kExactTol);
  const int n = 3;
  const auto target = ghz_label_to_state(GhzLabel::target(n), n);
  const auto err1 = ghz_label_to_state(GhzLabel::from_string("100", Sign::Plus), n);
  const auto err3 = ghz_label_to_state(GhzLabel::from_string("001", Sign::Plus), n);
  const Eigen::VectorXcd tt = pp::pair_state(target, target);
  const Eigen::VectorXcd ee = pp::pair_state(err1, err1);

  const Eigen::VectorXcd even_tt = pp::project(tt, n, 0);
  c.record(std::abs(even_tt.squaredNorm() - 0.5), "even target probability");
  c.record(dense::distance_up_to_phase(normalized(even_tt), reference::even_target_pair()),
           "even target pair");
  c.record(dense::distance_up_to_phase(normalized(pp::project(ee, n, 0)), reference::even_error_pair()),
           "even error pair");
  const Eigen::VectorXcd odd_tt = pp::project(tt, n, all_ones(n));
  c.record(std::abs(odd_tt.squaredNorm() - 0.5), "odd target probability");
  c.record(dense::distance_up_to_phase(normalized(odd_tt), reference::odd_target_pair()),
           "odd target pair");
  c.record(dense::distance_up_to_phase(
               normalized(pp::project(pp::pair_state(err3, err3), n, all_ones(n))),
               reference::odd_error_pair_qubit3()),
           "odd error pair (qubit 3)");
  c.record(pp::project(pp::pair_state(target, err1), n, 0).norm(), "cross pair even");
  c.record(pp::project(pp::pair_state(target, err1), n, all_ones(n)).norm(), "cross pair odd");

  for (int m = 2; m <= n_max; ++m) {
    const auto t = ghz_label_to_state(GhzLabel::target(m), m);
    const auto e = ghz_label_to_state(GhzLabel::single_flip(m, 0), m);
    const Eigen::VectorXcd kept_t = normalized(pp::project(pp::pair_state(t, t), m, 0));
    const Eigen::VectorXcd kept_e = normalized(pp::project(pp::pair_state(e, e), m, 0));
    c.record(dense::distance_up_to_phase(kept_t, reference::even_target_pair(m)), nq(m) + " kept target");
    c.record(dense::distance_up_to_phase(kept_e, reference::even_error_pair(m)), nq(m) + " kept error");
    c.record(dense::distance_up_to_phase(pp::rotate_copy2(kept_t, m), reference::rotated_target_pair(m)),
             nq(m) + " rotated target");
    c.record(dense::distance_up_to_phase(pp::rotate_copy2(kept_e, m), reference::rotated_error_pair(m)),
             nq(m) + " rotated error");
  }
  return c.result();
}

/// Drives a pure pair through one step branch by branch and compares each
/// outcome's corrected copy with the predicted label.
void drive_pure_pair(Check& c, StepKind step, const GhzLabel& a, const GhzLabel& b,
                     const GhzLabel& expected, const CorrectionRule& rule) {
  const int n = a.n_qubits();
  Eigen::VectorXcd pair = pp::pair_state(ghz_label_to_state(a, n), ghz_label_to_state(b, n));
  if (step == StepKind::P2) pair = pp::rotate_copy2(pp::rotate_copy1(pair, n), n);
  for (ParityBranch br : {ParityBranch::Even, ParityBranch::Odd}) {
    const std::uint64_t mask = realignment_mask(br, n);
    Eigen::VectorXcd kept = pp::project(pair, n, mask);
    if (kept.norm() < 1e-9) continue;
    kept = pp::rotate_copy2(pp::flip_copy2(normalized(kept), n, mask), n);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      Eigen::VectorXcd copy1 = normalized(pp::copy1_given_outcome(kept, n, k));
      dense::phase_flip(copy1, rule(step, n, k).phase_flip_mask);
      if (step == StepKind::P2) dense::hadamard_range(copy1, n, 0, n);
      c.record(dense::distance_up_to_phase(copy1, ghz_vec(expected)),
               nq(n) + " " + a.to_string() + b.to_string() + " " + std::string(branch_name(br)) +
                   " outcome " + bits_to_string(k, n));
    }
  }
}

CheckResult check_p1_correction(int n_max, const CorrectionRule& rule) {
  Check c("p1-correction", kExactTol);
  for (int n = 2; n <= n_max; ++n) {
    const GhzLabel t = GhzLabel::target(n);
    const GhzLabel tm(n, 0, Sign::Minus);
    const GhzLabel e = GhzLabel::single_flip(n, n - 1);
    const GhzLabel em(n, e.rep(), Sign::Minus);
    drive_pure_pair(c, StepKind::P1, t, t, t, rule);
    drive_pure_pair(c, StepKind::P1, e, e, e, rule);
    drive_pure_pair(c, StepKind::P1, t, tm, tm, rule);
    drive_pure_pair(c, StepKind::P1, em, em, e, rule);
  }
  return c.result();
}

CheckResult check_p2_states() {
  Check c("p2-state-vectors", kExactTol);
  const int n = 3;
  const auto plus = ghz_label_to_state(GhzLabel::target(n), n);
  const auto minus = ghz_label_to_state(GhzLabel(n, 0, Sign::Minus), n);
  auto h_pair = [&](const PureState& x, const PureState& y) {
    return pp::rotate_copy2(pp::rotate_copy1(pp::pair_state(x, y), n), n);
  };
  const Eigen::VectorXcd kept_pp = pp::project(h_pair(plus, plus), n, 0);
  const Eigen::VectorXcd kept_mm = pp::project(h_pair(minus, minus), n, 0);
  c.record(std::abs(kept_pp.squaredNorm() - 0.25), "target pair probability");
  c.record(std::abs(kept_mm.squaredNorm() - 0.25), "error pair probability");
  c.record(dense::distance_up_to_phase(normalized(kept_pp), reference::p2_even_target_pair()),
           "kept target pair");
  c.record(dense::distance_up_to_phase(normalized(kept_mm), reference::p2_even_error_pair()),
           "kept error pair");
  c.record(pp::project(h_pair(plus, minus), n, 0).norm(), "cross pair");

  // Rotated copy 2: amplitude (kept = prefix, measured = k) is sign / (4 sqrt 2).
  auto table = [&](const Eigen::VectorXcd& kept, const std::vector<reference::SignRow>& rows,
                   const std::string& tag) {
    const Eigen::VectorXcd rotated = pp::rotate_copy2(normalized(kept), n);
    const double scale = 1.0 / (4.0 * std::sqrt(2.0));
    for (const auto& row : rows) {
      const std::uint64_t x = string_to_bits(row.prefix);
      for (std::uint64_t k = 0; k < 8; ++k) {
        const double sign = row.signs[static_cast<std::size_t>(k)] == '+' ? 1.0 : -1.0;
        const Eigen::Index idx = static_cast<Eigen::Index>((x << n) | k);
        c.record(std::abs(rotated(idx) - Complex(sign * scale, 0.0)),
                 tag + " row " + row.prefix + " outcome " + bits_to_string(k, n));
      }
    }
  };
  table(kept_pp, reference::rotated_even_rows(), "target");
  table(kept_mm, reference::rotated_odd_rows(), "error");
  return c.result();
}

CheckResult check_p2_correction(int n_max, const CorrectionRule& rule) {
  Check c("p2-correction", kExactTol);
  for (int n = 2; n <= n_max; ++n) {
    const GhzLabel t = GhzLabel::target(n);
    const GhzLabel tm(n, 0, Sign::Minus);
    const GhzLabel e = GhzLabel::single_flip(n, 1 % n);
    const GhzLabel f = GhzLabel::single_flip(n, n - 1);
    drive_pure_pair(c, StepKind::P2, t, t, t, rule);
    drive_pure_pair(c, StepKind::P2, tm, tm, tm, rule);
    drive_pure_pair(c, StepKind::P2, e, e, t, rule);
    drive_pure_pair(c, StepKind::P2, t, e, e, rule);
    drive_pure_pair(c, StepKind::P2, e, f, GhzLabel::canonical(n, e.rep() ^ f.rep(), Sign::Plus), rule);
  }
  return c.result();
}

CheckResult check_bookkeeping(int n_max, std::uint64_t seed, int cases) {
  Check c("probability-bookkeeping", kExactTol);
  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  const int per_n = std::max(1, std::min(cases, 20));
  for (int n = 2; n <= n_max; ++n) {
    for (int i = 0; i < per_n; ++i) {
      const GhzDiagonalEnsemble ens = random_ensemble(n, rng);
      const DensityMatrix rho = ensemble_to_density(ens);
      for (StepKind step : {StepKind::P1, StepKind::P2}) {
        const auto dist = parity_pattern_distribution(rho, step);
        double total = 0.0;
        for (double p : dist) total += p;
        c.record(std::abs(total - 1.0), nq(n) + " pattern sum " + std::string(step_name(step)));
        const ExactStepResult r = exact_step(step, rho, DiscriminationMode::even_plus_odd());
        double accepted = dist[0];
        if (step == StepKind::P1 || n % 2 == 0) accepted += dist[all_ones(n)];
        c.record(std::abs(r.keep_probability - accepted), nq(n) + " kept mass " + std::string(step_name(step)));
      }
      const double even = p1_exact(rho, DiscriminationMode::even_only()).keep_probability;
      const double both = p1_exact(rho, DiscriminationMode::even_plus_odd()).keep_probability;
      c.record(std::abs(both - 2.0 * even), nq(n) + " odd branch doubles P1");
    }
  }
  return c.result();
}

CheckResult check_equivalence(StepKind step, int n_max, std::uint64_t seed, int cases,
                              const CorrectionRule& rule) {
  Check c(std::string("oracle-equivalence-") + (step == StepKind::P1 ? "p1" : "p2"), kDiagTol);
  double worst_keep = 0.0;
  double worst_residual = 0.0;
  std::mt19937_64 rng(seed + (step == StepKind::P1 ? 0 : 7919));
  const DiscriminationMode modes[] = {DiscriminationMode::even_only(),
                                      DiscriminationMode::even_plus_odd(),
                                      DiscriminationMode::six_mode_pbs()};
  for (int n = 2; n <= n_max; ++n) {
    for (int i = 0; i < cases; ++i) {
      const GhzDiagonalEnsemble ens = random_ensemble(n, rng);
      const DensityMatrix rho = ensemble_to_density(ens);
      const DiscriminationMode& mode = modes[static_cast<std::size_t>(i) % 3];
      const StepReport fast = purify_step(step, ens, mode);
      const ExactStepResult exact = exact_step(step, rho, mode, rule);
      const GhzExtraction ex = ghz_diagonal_extract(exact.output);
      double diag = 0.0;
      for (std::size_t j = 0; j < ens.weights().size(); ++j) {
        diag = std::max(diag, std::abs(fast.output.weights()[j] - ex.ensemble.weights()[j]));
      }
      const std::string where = nq(n) + " case " + std::to_string(i) + " " +
                                std::string(mode_name(mode.kind));
      c.record(diag, where);
      const double keep_dev = std::abs(fast.keep_probability - exact.keep_probability);
      worst_keep = std::max(worst_keep, keep_dev);
      worst_residual = std::max(worst_residual, ex.residual_norm);
      // Fold the keep and closure criteria in at their own tolerances.
      if (keep_dev > kExactTol) c.record(std::numeric_limits<double>::infinity(), where + " keep");
      if (ex.residual_norm > kClosureTol) c.record(std::numeric_limits<double>::infinity(), where + " closure");
    }
  }
  CheckResult r = c.result();
  std::ostringstream os;
  os << r.detail << "; max keep deviation " << worst_keep << "; max off-diagonal residual "
     << worst_residual;
  r.detail = os.str();
  return r;
}

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

GhzDiagonalEnsemble random_ensemble(int n_qubits, std::mt19937_64& rng) {
  std::vector<double> w(label_count(n_qubits));
  const bool sparse = rng() % 3 == 0;
  double sum = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - uniform01(rng));
    if (sparse && rng() % 2 == 0) x = 0.0;
    sum += x;
  }
  if (sum == 0.0) {
    w[0] = 1.0;
    sum = 1.0;
  }
  for (double& x : w) x /= sum;
  return {n_qubits, std::move(w)};
}

CorrectionRule corrupted_p2_rule() {
  return [](StepKind step, int n, std::uint64_t outcome) {
    if (step == StepKind::P2) return Correction{};
    return correction_for_outcome(step, n, outcome);
  };
}

ValidationReport run_validation(const ValidationOptions& options) {
  if (options.n_max < 2 || options.n_max > kMaxExactQubits) {
    throw std::invalid_argument("validate: n_max must lie in [2, 5]");
  }
  if (options.cases < 1) throw std::invalid_argument("validate: cases must be >= 1");
  ValidationReport report;
  report.checks.push_back(check_basis(options.n_max));
  report.checks.push_back(check_hadamard_table(options.n_max));
  report.checks.push_back(check_p1_states(options.n_max));
  report.checks.push_back(check_p1_correction(options.n_max, options.rule));
  report.checks.push_back(check_p2_states());
  report.checks.push_back(check_p2_correction(options.n_max, options.rule));
  report.checks.push_back(check_bookkeeping(options.n_max, options.seed, options.cases));
  report.checks.push_back(
      check_equivalence(StepKind::P1, options.n_max, options.seed, options.cases, options.rule));
  report.checks.push_back(
      check_equivalence(StepKind::P2, options.n_max, options.seed, options.cases, options.rule));
  return report;
}

}  // namespace ghzpur
