#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <variant>
#include <vector>

#include "qudit_mbqc/algebra.hpp"
#include "qudit_mbqc/state.hpp"

namespace qmbqc {

/// Measured digits s_a in Z_d, indexed by 1-based site.
class Outcomes {
 public:
  explicit Outcomes(int n_sites) : values_(static_cast<std::size_t>(n_sites) + 1, -1) {}

  int n_sites() const { return static_cast<int>(values_.size()) - 1; }
  bool has(int site) const;
  /// Throws DomainError when `site` has not been measured.
  int at(int site) const;
  int operator[](int site) const { return at(site); }
  void set(int site, int s);
  void clear(int site);

  friend bool operator==(const Outcomes&, const Outcomes&) = default;

 private:
  std::vector<int> values_;
};

/// Measurement bases. A basis is a d x d unitary u whose column s is the
/// state selected by outcome s; measuring with u means measuring u Z u^dag.
namespace basis {

/// Z: u = I.
Operator computational(QuditDim d);
/// X: u = F with F|s> = |x(s)>.
Operator fourier(QuditDim d);
/// X^dag: column s is |x(-s)>, the X^dag eigenvector with eigenvalue q^s.
Operator fourier_dagger(QuditDim d);
/// Column s is the eigenvector of `observable` with eigenvalue q^s.
Operator eigenbasis(const Operator& observable, QuditDim d);

}  // namespace basis

using BasisHook = std::function<Operator(const Outcomes&)>;

struct SiteMeasurement {
  int site;
  BasisHook basis;
  /// Sites whose outcomes the hook reads; they must be measured in strictly
  /// earlier stages.
  std::vector<int> reads;

  static SiteMeasurement fixed(int site, Operator u);
  static SiteMeasurement adaptive(int site, std::vector<int> reads, BasisHook hook);
};

struct Stage {
  std::vector<SiteMeasurement> sites;
};

/// Ordered stages of single-site measurements on an n-site register.
class MeasurementPattern {
 public:
  MeasurementPattern(int n_sites, std::vector<Stage> stages);

  int n_sites() const { return n_sites_; }
  const std::vector<Stage>& stages() const { return stages_; }
  std::vector<int> measured_sites() const;
  std::size_t measured_count() const;

 private:
  int n_sites_;
  std::vector<Stage> stages_;
};

/// Draws outcomes from a seeded generator.
struct RandomDraw {
  std::mt19937_64* rng;
};
/// Selects the given outcome (branch replay).
struct ForcedDraw {
  int outcome;
};
using Sampler = std::variant<RandomDraw, ForcedDraw>;

struct SiteMeasurementResult {
  int outcome;
  StateVector post;  // renormalized unless zero_branch
  double probability;
  bool zero_branch;
};

/// von Neumann measurement of u Z u^dag on `site`. The site register stays in
/// the state, collapsed onto u|s>.
SiteMeasurementResult measure_site(const StateVector& state, int site, const Operator& u,
                                   Sampler sampler);

struct OutcomeRecord {
  Outcomes outcomes;
  double probability;
  StateVector post_state;  // normalized when probability > 0
  bool zero_branch;
  /// u_a|s_a> for each measured site (index = site; empty when unmeasured).
  std::vector<Amplitudes> directions;
};

/// Executes the stages in order; deterministic for a fixed seed.
OutcomeRecord run_pattern_sampled(const StateVector& state, const MeasurementPattern& pattern,
                                  std::uint64_t seed);

/// Replays a specific outcome string.
OutcomeRecord run_pattern_forced(const StateVector& state, const MeasurementPattern& pattern,
                                 const Outcomes& forced);

struct EnumerationOptions {
  std::size_t branch_cap = kDefaultBranchCap;
  bool keep_post_states = true;
};

/// d^m for m measured sites.
std::size_t branch_count(const MeasurementPattern& pattern, int d);

/// One leaf of the enumeration. `state` is the unnormalized projected state.
struct BranchView {
  std::size_t index;
  const Outcomes& outcomes;
  double probability;
  const StateVector& state;
  const std::vector<Amplitudes>& directions;
};

/// Visits every outcome string. Branch index is the mixed-radix number formed
/// by the outcome digits in stage order. `visit` may run concurrently on
/// distinct indices.
void for_each_branch(const StateVector& state, const MeasurementPattern& pattern,
                     const EnumerationOptions& options,
                     const std::function<void(const BranchView&)>& visit);

/// All branches in index order, zero branches included and flagged.
std::vector<OutcomeRecord> enumerate_branches(const StateVector& state,
                                              const MeasurementPattern& pattern,
                                              const EnumerationOptions& options = {});

}  // namespace qmbqc
