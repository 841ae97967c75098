#include <string>

#include "qudit_mbqc/protocols.hpp"

namespace qmbqc {

ByproductOp::ByproductOp(QuditDim d, int n_sites)
    : d_(d), z_(static_cast<std::size_t>(n_sites), 0), x_(static_cast<std::size_t>(n_sites), 0) {
  if (n_sites < 1) throw DomainError("byproduct needs at least one site");
}

ByproductOp ByproductOp::from_powers(QuditDim d, std::vector<std::pair<int, int>> z_x_powers, Complex phase) {
  ByproductOp out(d, static_cast<int>(z_x_powers.size()));
  for (std::size_t i = 0; i < z_x_powers.size(); ++i) {
    out.set(static_cast<int>(i), z_x_powers[i].first, z_x_powers[i].second);
  }
  out.phase_ = phase;
  return out;
}

void ByproductOp::set(int i, long long z_pow, long long x_pow) {
  if (i < 0 || i >= n_sites()) throw DomainError("byproduct site " + std::to_string(i) + " out of range");
  z_[static_cast<std::size_t>(i)] = d_.mod(z_pow);
  x_[static_cast<std::size_t>(i)] = d_.mod(x_pow);
}

Operator ByproductOp::matrix() const {
  Operator out = Operator::Identity(1, 1);
  for (std::size_t i = 0; i < z_.size(); ++i) out = kron(out, weyl(d_, z_[i], x_[i]));
  return phase_ * out;
}

ByproductOp byproduct_compose(const ByproductOp& a, const ByproductOp& b) {
  if (!(a.dim() == b.dim()) || a.n_sites() != b.n_sites()) {
    throw DomainError("byproduct_compose: operands act on different registers");
  }
  const QuditDim d = a.dim();
  ByproductOp out(d, a.n_sites());
  long long exponent = 0;
  for (int i = 0; i < a.n_sites(); ++i) {
    // X^b Z^c = q^(bc) Z^c X^b
    exponent += static_cast<long long>(a.x_pow(i)) * b.z_pow(i);
    out.set(i, static_cast<long long>(a.z_pow(i)) + b.z_pow(i), static_cast<long long>(a.x_pow(i)) + b.x_pow(i));
  }
  out.scale(a.phase() * b.phase() * d.q_pow(exponent));
  return out;
}

ByproductOp byproduct_inverse(const ByproductOp& a) {
  const QuditDim d = a.dim();
  ByproductOp out(d, a.n_sites());
  long long exponent = 0;
  for (int i = 0; i < a.n_sites(); ++i) {
    exponent += static_cast<long long>(a.z_pow(i)) * a.x_pow(i);
    out.set(i, -static_cast<long long>(a.z_pow(i)), -static_cast<long long>(a.x_pow(i)));
  }
  out.scale(std::conj(a.phase()) * d.q_pow(exponent));
  return out;
}

std::vector<int> corrected_readout(const ByproductOp& byproduct, std::span<const int> readout) {
  if (readout.size() != static_cast<std::size_t>(byproduct.n_sites())) {
    throw DomainError("corrected_readout: one readout digit per output qudit required");
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < readout.size(); ++i) {
    out.push_back(byproduct.dim().mod(static_cast<long long>(readout[i]) + byproduct.x_pow(static_cast<int>(i))));
  }
  return out;
}

}  // namespace qmbqc
