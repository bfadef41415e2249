#pragma once

#include <vector>

#include "burgers/types.hpp"

namespace burgers::pod {

enum class FieldTag { velocity, temperature };

/// Orthonormal spatial modes of one field, with the subtracted temporal mean.
/// modes is n_nodes x r, one mode per column; eigenvalues are the retained
/// POD eigenvalues sorted non-increasing.
struct PodBasis {
  MatrixXd modes;
  VectorXd eigenvalues;
  int r = 0;
  FieldTag field = FieldTag::velocity;
  VectorXd mean;

  Eigen::Index n_nodes() const { return modes.rows(); }
};

// Eigenvalues below cutoff_ratio * lambda_max count as numerically zero.
constexpr double kRankCutoffRatio = 1e-12;

/// K_ij = (1/s) <z_i, z_j> under the weighted (trapezoid) inner product.
MatrixXd correlation(const std::vector<VectorXd>& snapshots,
                     const VectorXd& quad_weights);

int numerical_rank(const VectorXd& eigenvalues_sorted);

/// Modes from the eigenpairs of K: phi_i = sum_j v_ij z_j / (sqrt(s*lambda_i)),
/// eigenvectors of unit Euclidean norm, each mode's largest-magnitude entry
/// made positive. The snapshots are used as given (centering is the caller's
/// concern; build_field_basis below does it). Throws RankDeficient when r
/// exceeds the numerical rank of K.
PodBasis build_basis(const MatrixXd& K, const std::vector<VectorXd>& snapshots,
                     int r, FieldTag field = FieldTag::velocity);

/// Full pipeline for one field of a snapshot set: subtract the temporal mean,
/// build the correlation matrix of the fluctuations, extract r modes.
PodBasis build_field_basis(const SnapshotSet& set, FieldTag field, int r,
                           const VectorXd& quad_weights);

/// q_i = <field - mean, phi_i>
VectorXd project(const PodBasis& basis, const VectorXd& quad_weights,
                 const VectorXd& field);

/// mean + sum_i q_i phi_i
VectorXd reconstruct(const PodBasis& basis, const VectorXd& coefficients);

}  // namespace burgers::pod
