#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "symplat/isogeny.hpp"

// Floating-point geometry of the product of the upper half plane with the
// genus-g Siegel space: augmented periods, transporter matrices moving the
// base point to a given (tau, tau'), and the associated negative 2g-plane
// inside the 4g-dimensional tensor space, with coordinates taken in the
// basis order of lattice::tensor_symplectic.

namespace symplat::siegel {

using Complex = std::complex<double>;

struct SiegelPair {
    Complex tau;                 // Im(tau) > 0
    Eigen::MatrixXcd tau_prime;  // g x g symmetric, positive definite imaginary part

    std::size_t genus() const { return static_cast<std::size_t>(tau_prime.rows()); }
};

// Validates the half-plane conditions; throws std::domain_error otherwise.
SiegelPair make_pair(Complex tau, Eigen::MatrixXcd tau_prime, double tol = 1e-9);

SiegelPair pair_from_json(const nlohmann::json& doc);
nlohmann::ordered_json pair_to_json(const SiegelPair& pair);

// (tau; 1) and (tau'; Id) stacked augmentations.
Eigen::MatrixXcd augmented_scalar(Complex tau);
Eigen::MatrixXcd augmented_matrix(const Eigen::MatrixXcd& tau_prime);

// (B tau~)^T tau'~ as a length-g vector; its vanishing picks out the pairs
// (tau, tau') carrying a degree-d map with matrix data B.
Eigen::VectorXcd period_vector(const isogeny::IsogenyMatrix& b, const SiegelPair& pair);

// Upper-triangular M in SL2(R) with (M(0,0) i + M(0,1)) / (M(1,0) i + M(1,1)) = tau.
Eigen::Matrix2d transporter_sl2(Complex tau);

// Block upper-triangular symplectic M' with (i W + X)(i Y + Z)^{-1} = tau',
// where W = M'[0:g,0:g], X = M'[0:g,g:2g], Y = M'[g:2g,0:g], Z = M'[g:2g,g:2g].
Eigen::MatrixXd transporter_sp(const Eigen::MatrixXcd& tau_prime);

// Symplectic tensor pairing on R^{4g} in the tensor basis coordinates.
double tensor_pairing(std::size_t g, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct NegativePlane {
    std::vector<Eigen::VectorXd> basis;  // 2g vectors of dimension 4g
};

struct PlaneBases {
    NegativePlane n0;                      // Gram -2 Id
    std::vector<Eigen::VectorXd> p0;       // Gram +2 Id, orthogonal to n0
};
PlaneBases n0_p0_bases(std::size_t g);

// Gram matrix of a plane basis under the tensor pairing.
Eigen::MatrixXd plane_gram(std::size_t g, const NegativePlane& plane);

// Distance between the column spans of two equal-rank planes, measured as the
// Frobenius norm of the difference of their Euclidean projectors.
double plane_distance(const NegativePlane& a, const NegativePlane& b);

// The negative plane attached to (tau, tau'): basis r_1..r_g, s_1..s_g built
// from the transporter entries; spans the image of n0 under M tensor M'.
NegativePlane phi_plane(const SiegelPair& pair);

struct OrthogonalityReport {
    double max_abs_discrepancy = 0;  // pairing identity, absolute
    double max_rel_discrepancy = 0;  // scaled by 1 + |beta_j|
    double period_max = 0;           // largest period entry
    double pairing_max = 0;          // largest scaled pairing against the plane basis
    bool identity_ok = false;        // discrepancy below the relative tolerance
    bool period_vanishes = false;
    bool orthogonal = false;
    bool equivalent = false;         // the two vanishing verdicts agree
};

// Evaluates the normalized period entries beta_j two ways: directly, and as
// pairings of the tensor vector of B against the plane basis. Reports the
// discrepancy and whether period vanishing matches orthogonality.
OrthogonalityReport orthogonality_identities(const isogeny::IsogenyMatrix& b,
                                             const SiegelPair& pair, double tol_abs = 1e-9,
                                             double tol_rel = 1e-8);

// For g = 1 data, the unique tau' making the period vanish (a Moebius image
// of tau, in the upper half plane exactly when the degree is positive).
Complex matched_tau_prime(const isogeny::IsogenyMatrix& b1, Complex tau);

// Embeds a genus-1 vanishing configuration into genus 2, with an arbitrary
// spectator period in the second diagonal slot.
std::pair<isogeny::IsogenyMatrix, SiegelPair> embed_zero_case(const isogeny::IsogenyMatrix& b1,
                                                              Complex tau, Complex spectator);

}  // namespace symplat::siegel
