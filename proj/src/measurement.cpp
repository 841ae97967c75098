#include "qudit_mbqc/measurement.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include <omp.h>

namespace qmbqc {

bool Outcomes::has(int site) const {
  return site >= 1 && site <= n_sites() && values_[static_cast<std::size_t>(site)] >= 0;
}

int Outcomes::at(int site) const {
  if (!has(site)) throw DomainError("site " + std::to_string(site) + " has no recorded outcome");
  return values_[static_cast<std::size_t>(site)];
}

void Outcomes::set(int site, int s) {
  if (site < 1 || site > n_sites()) throw DomainError("site " + std::to_string(site) + " out of range");
  if (s < 0) throw DomainError("outcome must be a digit in 0..d-1");
  values_[static_cast<std::size_t>(site)] = s;
}

void Outcomes::clear(int site) {
  if (site < 1 || site > n_sites()) throw DomainError("site " + std::to_string(site) + " out of range");
  values_[static_cast<std::size_t>(site)] = -1;
}

namespace basis {

Operator computational(QuditDim d) { return Operator::Identity(d.value(), d.value()); }

Operator fourier(QuditDim d) {
  Operator u(d.value(), d.value());
  for (int s = 0; s < d.value(); ++s) u.col(s) = x_eigenvector(d, s).amplitudes();
  return u;
}

Operator fourier_dagger(QuditDim d) {
  Operator u(d.value(), d.value());
  for (int s = 0; s < d.value(); ++s) u.col(s) = x_eigenvector(d, d.mod(-s)).amplitudes();
  return u;
}

Operator eigenbasis(const Operator& observable, QuditDim d) { return power_eigenbasis(observable, d); }

}  // namespace basis

SiteMeasurement SiteMeasurement::fixed(int site, Operator u) {
  return {site, [u = std::move(u)](const Outcomes&) { return u; }, {}};
}

SiteMeasurement SiteMeasurement::adaptive(int site, std::vector<int> reads, BasisHook hook) {
  return {site, std::move(hook), std::move(reads)};
}

MeasurementPattern::MeasurementPattern(int n_sites, std::vector<Stage> stages)
    : n_sites_(n_sites), stages_(std::move(stages)) {
  std::vector<int> stage_of(static_cast<std::size_t>(n_sites) + 1, -1);
  for (std::size_t k = 0; k < stages_.size(); ++k) {
    for (const SiteMeasurement& m : stages_[k].sites) {
      if (m.site < 1 || m.site > n_sites) throw DomainError("measured site " + std::to_string(m.site) + " out of range");
      if (stage_of[static_cast<std::size_t>(m.site)] >= 0) {
        throw DomainError("site " + std::to_string(m.site) + " is measured twice");
      }
      if (!m.basis) throw DomainError("site " + std::to_string(m.site) + " has no basis");
      stage_of[static_cast<std::size_t>(m.site)] = static_cast<int>(k);
    }
  }
  for (std::size_t k = 0; k < stages_.size(); ++k) {
    for (const SiteMeasurement& m : stages_[k].sites) {
      for (int r : m.reads) {
        if (r < 1 || r > n_sites || stage_of[static_cast<std::size_t>(r)] < 0 ||
            stage_of[static_cast<std::size_t>(r)] >= static_cast<int>(k)) {
          throw DomainError("site " + std::to_string(m.site) + " reads outcome of site " + std::to_string(r) +
                            ", which is not measured in an earlier stage");
        }
      }
    }
  }
}

std::vector<int> MeasurementPattern::measured_sites() const {
  std::vector<int> out;
  for (const Stage& s : stages_) {
    for (const SiteMeasurement& m : s.sites) out.push_back(m.site);
  }
  return out;
}

std::size_t MeasurementPattern::measured_count() const { return measured_sites().size(); }

namespace {

Operator checked_basis(const SiteMeasurement& m, const Outcomes& outcomes, int d) {
  Operator u = m.basis(outcomes);
  if (u.rows() != d || u.cols() != d || !is_unitary(u, 1e-9)) {
    throw DomainError("basis for site " + std::to_string(m.site) + " is not a d x d unitary");
  }
  return u;
}

}  // namespace

SiteMeasurementResult measure_site(const StateVector& state, int site, const Operator& u, Sampler sampler) {
  const int d = state.dim();
  int outcome = 0;
  if (const auto* forced = std::get_if<ForcedDraw>(&sampler)) {
    if (forced->outcome < 0 || forced->outcome >= d) throw DomainError("forced outcome out of range");
    outcome = forced->outcome;
  } else {
    std::mt19937_64& rng = *std::get<RandomDraw>(sampler).rng;
    std::vector<double> probs(static_cast<std::size_t>(d));
    double total = 0.0;
    for (int s = 0; s < d; ++s) {
      probs[static_cast<std::size_t>(s)] = project_site(state, site, u.col(s)).probability;
      total += probs[static_cast<std::size_t>(s)];
    }
    if (total <= 0.0) throw DomainError("cannot sample from the zero vector");
    const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
    double acc = 0.0;
    outcome = d - 1;
    for (int s = 0; s < d; ++s) {
      acc += probs[static_cast<std::size_t>(s)];
      if (r < acc && probs[static_cast<std::size_t>(s)] > 0.0) {
        outcome = s;
        break;
      }
    }
  }
  ProjectionResult p = project_site(state, site, u.col(outcome));
  const double norm2 = state.norm() * state.norm();
  const double prob = norm2 > 0.0 ? p.probability / norm2 : 0.0;
  if (p.zero_branch || prob < kZeroBranchProbability) {
    return {outcome, std::move(p.state), prob, true};
  }
  return {outcome, p.state.normalized(), prob, false};
}

namespace {

OutcomeRecord run_pattern(const StateVector& state, const MeasurementPattern& pattern,
                          const std::function<Sampler(int site)>& sampler_for) {
  if (pattern.n_sites() != state.n_sites()) throw DomainError("pattern and state have different site counts");
  const QuditDim d(state.dim());
  Outcomes outcomes(state.n_sites());
  std::vector<Amplitudes> directions(static_cast<std::size_t>(state.n_sites()) + 1);
  StateVector current = state;
  double probability = 1.0;
  bool zero = false;
  for (const Stage& stage : pattern.stages()) {
    for (const SiteMeasurement& m : stage.sites) {
      const Operator u = checked_basis(m, outcomes, d.value());
      SiteMeasurementResult r = measure_site(current, m.site, u, sampler_for(m.site));
      outcomes.set(m.site, r.outcome);
      directions[static_cast<std::size_t>(m.site)] = u.col(r.outcome);
      probability *= r.probability;
      zero = zero || r.zero_branch;
      current = std::move(r.post);
    }
  }
  return {std::move(outcomes), zero ? 0.0 : probability, std::move(current), zero, std::move(directions)};
}

}  // namespace

OutcomeRecord run_pattern_sampled(const StateVector& state, const MeasurementPattern& pattern, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run_pattern(state, pattern, [&rng](int) -> Sampler { return RandomDraw{&rng}; });
}

OutcomeRecord run_pattern_forced(const StateVector& state, const MeasurementPattern& pattern,
                                 const Outcomes& forced) {
  return run_pattern(state, pattern, [&forced](int site) -> Sampler { return ForcedDraw{forced.at(site)}; });
}

std::size_t branch_count(const MeasurementPattern& pattern, int d) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < pattern.measured_count(); ++i) {
    if (total > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(d)) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= static_cast<std::size_t>(d);
  }
  return total;
}

namespace {

struct Flat {
  const SiteMeasurement* m;
};

struct Walker {
  const std::vector<Flat>& order;
  int d;
  const std::function<void(const BranchView&)>& visit;

  void descend(std::size_t depth, std::size_t index, const StateVector& state, Outcomes& outcomes,
               std::vector<Amplitudes>& directions) const {
    if (depth == order.size()) {
      const double p = state.norm() * state.norm();
      visit(BranchView{index, outcomes, p, state, directions});
      return;
    }
    const SiteMeasurement& m = *order[depth].m;
    const Operator u = checked_basis(m, outcomes, d);
    for (int s = 0; s < d; ++s) {
      ProjectionResult p = project_site(state, m.site, u.col(s));
      outcomes.set(m.site, s);
      directions[static_cast<std::size_t>(m.site)] = u.col(s);
      descend(depth + 1, index * static_cast<std::size_t>(d) + static_cast<std::size_t>(s), p.state, outcomes,
              directions);
    }
    outcomes.clear(m.site);
    directions[static_cast<std::size_t>(m.site)] = Amplitudes();
  }
};

}  // namespace

void for_each_branch(const StateVector& state, const MeasurementPattern& pattern, const EnumerationOptions& options,
                     const std::function<void(const BranchView&)>& visit) {
  if (pattern.n_sites() != state.n_sites()) throw DomainError("pattern and state have different site counts");
  const int d = state.dim();
  const std::size_t total = branch_count(pattern, d);
  if (total > options.branch_cap) {
    throw BranchCapExceeded("enumeration needs " + std::to_string(total) + " branches, cap is " +
                            std::to_string(options.branch_cap));
  }
  std::vector<Flat> order;
  for (const Stage& stage : pattern.stages()) {
    for (const SiteMeasurement& m : stage.sites) order.push_back({&m});
  }
  // Split the tree at a prefix depth with enough subtrees to feed the threads.
  std::size_t prefix_depth = 0;
  std::size_t prefixes = 1;
  const auto wanted = static_cast<std::size_t>(4 * std::max(1, omp_get_max_threads()));
  while (prefix_depth < order.size() && prefixes < wanted) {
    prefixes *= static_cast<std::size_t>(d);
    ++prefix_depth;
  }
  const Walker walker{order, d, visit};
  std::vector<std::string> errors(prefixes);
  const auto n_prefixes = static_cast<long long>(prefixes);
#pragma omp parallel for schedule(dynamic) if (prefixes > 1)
  for (long long t = 0; t < n_prefixes; ++t) {
    try {
      Outcomes outcomes(state.n_sites());
      std::vector<Amplitudes> directions(static_cast<std::size_t>(state.n_sites()) + 1);
      StateVector current = state;
      std::size_t rem = static_cast<std::size_t>(t);
      std::vector<int> digits(prefix_depth);
      for (std::size_t k = prefix_depth; k-- > 0;) {
        digits[k] = static_cast<int>(rem % static_cast<std::size_t>(d));
        rem /= static_cast<std::size_t>(d);
      }
      for (std::size_t k = 0; k < prefix_depth; ++k) {
        const SiteMeasurement& m = *order[k].m;
        const Operator u = checked_basis(m, outcomes, d);
        current = project_site(current, m.site, u.col(digits[k])).state;
        outcomes.set(m.site, digits[k]);
        directions[static_cast<std::size_t>(m.site)] = u.col(digits[k]);
      }
      walker.descend(prefix_depth, static_cast<std::size_t>(t), current, outcomes, directions);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(t)] = e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw DomainError(e);
  }
}

std::vector<OutcomeRecord> enumerate_branches(const StateVector& state, const MeasurementPattern& pattern,
                                              const EnumerationOptions& options) {
  const std::size_t total = branch_count(pattern, state.dim());
  if (total > options.branch_cap) {
    throw BranchCapExceeded("enumeration needs " + std::to_string(total) + " branches, cap is " +
                            std::to_string(options.branch_cap));
  }
  std::vector<std::optional<OutcomeRecord>> slots(total);
  const double norm2 = state.norm() * state.norm();
  for_each_branch(state, pattern, options, [&](const BranchView& b) {
    const double p = norm2 > 0.0 ? b.probability / norm2 : 0.0;
    const bool zero = p < kZeroBranchProbability;
    StateVector post = options.keep_post_states ? (zero ? b.state : b.state.normalized())
                                                : StateVector(b.state.dim(), 0, Amplitudes::Zero(1));
    slots[b.index].emplace(OutcomeRecord{b.outcomes, zero ? 0.0 : p, std::move(post), zero, b.directions});
  });
  std::vector<OutcomeRecord> out;
  out.reserve(total);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace qmbqc
