#pragma once

#include <span>
#include <string>
#include <vector>

#include "qudit_mbqc/algebra.hpp"

namespace qmbqc {

/// Single-site Clifford specified by its images Zbar(m1, n1), Xbar(m2, n2).
struct CliffordSpec {
  int m1 = 1;
  int n1 = 0;
  int m2 = 0;
  int n2 = 1;

  /// gcd(m1,n1) = gcd(m2,n2) = 1 and m1 n2 - m2 n1 = 1 (mod d).
  void validate(QuditDim d) const;
};

/// Site `site` (1-based) of an n-site register: I x ... x op x ... x I.
Operator embed(const Operator& op, int site, int n_sites, QuditDim d);

/// Unitary U with U Z_i U^dag = z_images[i] and U X_i U^dag = x_images[i] for
/// every site i. The images are first checked against the generator algebra
/// (unitary, order d, the Weyl commutation phases); the result is unique up
/// to a global phase, which is fixed by making the first nonzero entry of the
/// first column real positive.
Operator clifford_from_action(QuditDim d, int n_sites, std::span<const Operator> z_images,
                              std::span<const Operator> x_images, double tol = kDefaultTol);

Operator clifford_from_spec(QuditDim d, const CliffordSpec& spec, double tol = kDefaultTol);

enum class CliffordKind { U1n, Un1, V, W };

std::string to_string(CliffordKind kind);
CliffordKind clifford_kind_from_string(const std::string& name);

/// The four basic elements:
///   U1n: Z -> Zbar(1, n), X -> X
///   Un1: Z -> Zbar(n, 1), X -> Z^dag
///   V:   Z -> Zbar(1, 1), X -> X
///   W:   Z -> Z,          X -> Zbar(1, 1)
/// `n` is ignored for V and W.
Operator basic_clifford(QuditDim d, CliffordKind kind, int n = 1);

struct CliffordStep {
  CliffordKind kind;
  int power;   // the n of U1n / Un1; 1 for V and W
  int repeat;  // number of consecutive copies

  friend bool operator==(const CliffordStep&, const CliffordStep&) = default;
};

/// Product step_0 * step_1 * ... (step_0 is applied last).
Operator compose_word(QuditDim d, std::span<const CliffordStep> word);

/// Word over {U1n, Un1, V, W} whose product P satisfies P Z P^dag = c Zbar(m, n)
/// for a unit c. Base cases m = 1 or n = 1 give a single element; otherwise one
/// reduction by a power of W (resp. V) onto a base case is attempted, and a
/// breadth-first search over V/W words covers the remaining composite-d cases.
/// Every word is verified numerically before it is returned.
std::vector<CliffordStep> factor_clifford(QuditDim d, int m, int n, double tol = kProtocolTol);

/// Residual of the conjugation check for a word: min over phases c of
/// max |P Z P^dag - c Zbar(m,n)|.
double factor_residual(QuditDim d, int m, int n, std::span<const CliffordStep> word);

}  // namespace qmbqc
