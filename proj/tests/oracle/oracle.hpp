#pragma once

// Brute-force reference computations built on explicit dense matrices.
// Nothing here calls into qauth; qubit q is bit q of the basis index.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

namespace oracle {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

Mat2 x_gate();
Mat2 h_gate();
Mat2 ry(double theta);

/// Single-qubit gate g on qubit q of an n-qubit space.
Mat on(int n, int q, const Mat2& g);
Mat cnot(int n, int control, int target);

Vec ket(int n, std::size_t index);
/// Two-qubit Bell vector, index = first + 2 * second.
Vec bell(Bell kind);
/// Embeds a two-qubit state on (q0, q1) of an n-qubit space whose other
/// qubits are |0>.
Vec embed_pair(int n, int q0, int q1, const Vec& pair);

/// Projector onto |v> (two-qubit vector) on qubits (q0, q1).
Mat pair_projector(int n, int q0, int q1, const Vec& v);
/// Projector onto the single-qubit state |v> on qubit q.
Mat qubit_projector(int n, int q, const Eigen::Vector2cd& v);

/// Ry(2 theta)|outcome>: the key-angle convention for rotated bases.
Eigen::Vector2cd rotated_state(double theta, int outcome);

double prob(const Vec& v);

// Protocol oracles. Angles are averaged over `levels` equally spaced key
// values in [0, pi); the integrands are low-degree trigonometric
// polynomials, so a uniform grid average is exact once levels exceeds their
// degree.

/// Bob's acceptance of one Kanamori position when Eve plays Alice with a
/// guessed angle phi, averaged over the remaining nonces.
double kanamori_position_acceptance(double theta, double phi, int session_levels);
/// Impersonation acceptance over n independent positions; phi is integrated
/// with a midpoint rule.
double kanamori_impersonation(int n, int theta_levels, int phi_steps, int session_levels);

/// Li-Barnum: acceptance of one pair when Eve returns the auxiliary half
/// untouched (16-dim computation).
double li_barnum_pair_acceptance_without_token();

/// Li-Zhang m=1: probability Bob's Bell outcome is neither codeword after an
/// X on the first in-flight qubit, averaged over the message bit.
double li_zhang_flip_detection();

/// Curty-Santos m=1: detection probability when Eve measures both in-flight
/// qubits in the computational basis, averaged over the message bit.
double curty_santos_intercept_detection();

/// Zhang-Li-Guo: probability one position passes when Eve measures the
/// returning probe in a uniformly chosen computational/diagonal basis.
double zhang_position_pass(double theta, double beta);
/// Detection over n positions sharing theta, with independent betas.
double zhang_intercept_detection(int n, int levels);

/// Zeng-Guo with the A->B claim replaced by uniform bits: enumerates all
/// 2^n replacements against a fixed correct claim.
double zeng_guo_random_claim_detection(int n);

}  // namespace oracle
