#ifndef HODGESEQ_LAPLACIAN_HPP
#define HODGESEQ_LAPLACIAN_HPP

#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hodgeseq/complex.hpp"
#include "hodgeseq/weights.hpp"

namespace hodgeseq {

using SparseInt = Eigen::SparseMatrix<std::int64_t>;
using SparseReal = Eigen::SparseMatrix<double>;

/**
 * Coboundary matrix D_n of the map C^n -> C^{n+1}: entry (sigma, tau) is the
 * incidence number kappa(sigma, tau) for sigma of dimension n+1, tau of
 * dimension n.  Exact integer entries.
 *
 * On a full sequence complex the top stored dimension has cofaces that were
 * truncated away, so requesting D at n = top_dim raises ErrorKind::Truncation;
 * on a simplicial complex the same request yields the genuine 0 x |X_n| matrix.
 */
SparseInt coboundary_matrix(const ComplexIndex& complex, int n);
SparseReal coboundary_matrix_real(const ComplexIndex& complex, int n);

/**
 * Everything needed to work with the weighted Hodge Laplacian at one
 * dimension: the two coboundaries, the three weight diagonals, the up/down
 * parts, their sum L_n, and the symmetrized conjugate
 * S_n = W^{1/2} L_n W^{-1/2}.
 *
 *   up   = W_n^{-1} D_n^T W_{n+1} D_n
 *   down = D_{n-1} W_{n-1}^{-1} D_{n-1}^T W_n
 */
struct LaplacianBundle {
    int dim = 0;
    SparseReal d_here;   // D_n
    SparseReal d_below;  // D_{n-1}
    Eigen::VectorXd w_below, w_here, w_above;
    Eigen::MatrixXd up, down, full, symmetrized;
};

// dense_cap bounds the dense operator size (ErrorKind::Size above it).
LaplacianBundle laplacian(const ComplexIndex& complex, const WeightFunction& w, int n,
                          std::size_t dense_cap = 4096);

// Adjoint of the coboundary in the weighted inner product:
// W_n^{-1} D_n^T W_{n+1}, mapping C^{n+1} -> C^n.
Eigen::MatrixXd adjoint_matrix(const LaplacianBundle& bundle);

/**
 * Closed-form assembly of the sequence Laplacian from glue/remove/swap
 * bookkeeping, no matrix products.  Matches laplacian().full entrywise.
 */
Eigen::MatrixXd sequence_laplacian_direct(const ComplexIndex& complex, const WeightFunction& w, int n);

/**
 * Closed form under an independent sequence model: diagonal
 * (n+2) - sum_i w(sigma_i), off-diagonal -w(sigma_j) at each tau obtained by
 * replacing slot j of sigma.  Row sparsity 1 + (n+1)(m-1).
 */
Eigen::MatrixXd independent_sequence_laplacian_direct(const ComplexIndex& complex,
                                                      const IndependentModel& model, int n);

// Closed-form simplicial Laplacian via up/down face bookkeeping.
Eigen::MatrixXd simplicial_laplacian_direct(const ComplexIndex& complex, const WeightFunction& w, int n);

/**
 * Vertex-weighted graph Laplacian A^{-1}(Deg - Adj) where A holds the vertex
 * weights, Adj the edge weights, Deg the weighted degrees.  Defined for
 * complexes of dimension <= 1 and equal to the up Laplacian at dimension 0;
 * rows of isolated vertices are zero.
 */
Eigen::MatrixXd combinatorial_laplacian(const ComplexIndex& graph, const WeightFunction& w);

// <f, g>_w = sum_sigma w(sigma) f(sigma) g(sigma) and its norm.
double weighted_inner(const Eigen::VectorXd& w, const Eigen::VectorXd& f, const Eigen::VectorXd& g);
double weighted_norm(const Eigen::VectorXd& w, const Eigen::VectorXd& f);

} // namespace hodgeseq

#endif // HODGESEQ_LAPLACIAN_HPP
