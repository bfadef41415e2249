#include "burgers/pod.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "burgers/kernels.hpp"

namespace burgers::pod {

MatrixXd correlation(const std::vector<VectorXd>& snapshots,
                     const VectorXd& quad_weights) {
  if (snapshots.empty()) throw EmptySnapshotSet("correlation: no snapshots");
  const long s = long(snapshots.size());
  const long n = long(snapshots.front().size());
  if (n != quad_weights.size())
    throw DimensionMismatch("correlation: weights do not conform to snapshots");
  for (const VectorXd& z : snapshots)
    if (z.size() != n)
      throw DimensionMismatch("correlation: snapshot length mismatch");

  // Pack row-major for the kernel.
  std::vector<double> Z(std::size_t(s) * n);
  for (long j = 0; j < s; ++j)
    for (long i = 0; i < n; ++i) Z[std::size_t(j) * n + i] = snapshots[j][i];

  MatrixXd K(s, s);
  std::vector<double> Kbuf(std::size_t(s) * s);
  kernels::correlation(Z.data(), s, n, quad_weights.data(), 1.0 / double(s),
                       Kbuf.data());
  for (long i = 0; i < s; ++i)
    for (long j = 0; j < s; ++j) K(i, j) = Kbuf[std::size_t(i) * s + j];
  return K;
}

int numerical_rank(const VectorXd& eigenvalues_sorted) {
  if (eigenvalues_sorted.size() == 0) return 0;
  const double cutoff = kRankCutoffRatio * eigenvalues_sorted[0];
  int rank = 0;
  while (rank < eigenvalues_sorted.size() &&
         eigenvalues_sorted[rank] > cutoff && eigenvalues_sorted[rank] > 0.0)
    ++rank;
  return rank;
}

PodBasis build_basis(const MatrixXd& K, const std::vector<VectorXd>& snapshots,
                     int r, FieldTag field) {
  const long s = long(snapshots.size());
  if (s == 0) throw EmptySnapshotSet("build_basis: no snapshots");
  if (K.rows() != s || K.cols() != s)
    throw DimensionMismatch("build_basis: K does not match snapshot count");
  const Eigen::Index n = snapshots.front().size();

  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(K);
  // Ascending from Eigen; flip to non-increasing.
  VectorXd lambda(s);
  MatrixXd V(s, s);
  for (long i = 0; i < s; ++i) {
    lambda[i] = eig.eigenvalues()[s - 1 - i];
    V.col(i) = eig.eigenvectors().col(s - 1 - i);
  }

  const int rank = numerical_rank(lambda);
  if (r > rank)
    throw RankDeficient("build_basis: requested r=" + std::to_string(r) +
                        " exceeds numerical rank " + std::to_string(rank));
  if (r < 0) throw RankDeficient("build_basis: r must be >= 0");

  PodBasis basis;
  basis.field = field;
  basis.r = r;
  basis.eigenvalues = lambda.head(r);
  basis.mean = VectorXd::Zero(n);
  basis.modes.resize(n, r);
  for (int i = 0; i < r; ++i) {
    VectorXd phi = VectorXd::Zero(n);
    for (long j = 0; j < s; ++j) phi += V(j, i) * snapshots[j];
    phi /= std::sqrt(double(s)) * std::sqrt(lambda[i]);
    // Deterministic sign: largest-magnitude entry positive.
    Eigen::Index imax = 0;
    phi.cwiseAbs().maxCoeff(&imax);
    if (phi[imax] < 0.0) phi = -phi;
    basis.modes.col(i) = phi;
  }
  return basis;
}

PodBasis build_field_basis(const SnapshotSet& set, FieldTag field, int r,
                           const VectorXd& quad_weights) {
  set.validate();
  const bool vel = field == FieldTag::velocity;
  const VectorXd& mean = vel ? set.w_mean : set.T_mean;
  if (mean.size() == 0)
    throw EmptySnapshotSet("build_field_basis: snapshot means not computed");

  std::vector<VectorXd> fluct;
  fluct.reserve(set.size());
  for (const StateField& st : set.states)
    fluct.push_back((vel ? st.w : st.T) - mean);

  const MatrixXd K = correlation(fluct, quad_weights);
  PodBasis basis = build_basis(K, fluct, r, field);
  basis.mean = mean;
  return basis;
}

VectorXd project(const PodBasis& basis, const VectorXd& quad_weights,
                 const VectorXd& field) {
  if (field.size() != basis.n_nodes() || quad_weights.size() != basis.n_nodes())
    throw DimensionMismatch("project: field does not conform to basis grid");
  const VectorXd centered = field - basis.mean;
  VectorXd q(basis.r);
  for (int i = 0; i < basis.r; ++i)
    q[i] = kernels::weighted_dot(centered.data(), basis.modes.col(i).data(),
                                 quad_weights.data(), long(centered.size()));
  return q;
}

VectorXd reconstruct(const PodBasis& basis, const VectorXd& coefficients) {
  if (coefficients.size() != basis.r)
    throw DimensionMismatch("reconstruct: coefficient length != r");
  return basis.mean + basis.modes * coefficients;
}

}  // namespace burgers::pod
