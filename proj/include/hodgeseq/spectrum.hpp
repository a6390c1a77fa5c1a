#ifndef HODGESEQ_SPECTRUM_HPP
#define HODGESEQ_SPECTRUM_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgeseq/laplacian.hpp"

namespace hodgeseq {

// Where a positive eigenvalue lives: in the image of the adjoint (up), of the
// lower coboundary (down), or both when the two spectra share the value.
enum class ClusterSide { Up, Down, Both, Harmonic };

const char* to_string(ClusterSide side);

struct EigenCluster {
    double value = 0.0;     // mean of the clustered eigenvalues
    int multiplicity = 0;
    ClusterSide side = ClusterSide::Harmonic;
    int first_index = 0;    // position of the first member in ascending order
};

struct SpectrumReport {
    int dim = 0;
    Eigen::VectorXd eigenvalues;  // ascending
    // Columns are eigenvectors in the cell basis with unit weighted norm;
    // recovered from the symmetrized operator by W^{-1/2}.
    Eigen::MatrixXd eigenvectors;
    std::vector<EigenCluster> clusters;
    int betti = 0;                // multiplicity of the cluster at zero
};

/**
 * Dense eigendecomposition of the symmetrized Laplacian.  Consecutive
 * eigenvalues within cluster_tol * max(1, |value|) of each other form one
 * cluster; the cluster at zero is the harmonic space and its size the Betti
 * number.  Positive clusters are attributed by splitting each eigenvector
 * into its up/down components (L_up v / lambda and L_down v / lambda).
 */
SpectrumReport spectrum(const LaplacianBundle& bundle, double cluster_tol = 1e-8);

struct HodgeSplit {
    int dim = 0;
    Eigen::VectorXd input, harmonic, exact, coexact;
};

/**
 * Orthogonal (in the weighted inner product) decomposition of a cochain into
 * harmonic + exact (image of the lower coboundary) + coexact (image of the
 * adjoint).  Projections solve weighted least squares with rank revealed by
 * a pivoted factorization at relative threshold 1e-10.
 */
HodgeSplit hodge_decompose(const LaplacianBundle& bundle, const Eigen::VectorXd& cochain);

} // namespace hodgeseq

#endif // HODGESEQ_SPECTRUM_HPP
