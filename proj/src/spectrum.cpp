#include "hodgeseq/spectrum.hpp"

#include <cmath>

#include "hodgeseq/errors.hpp"

namespace hodgeseq {

namespace {

const char* kModule = "hodge-core";

// Fraction of an eigenvector that a positive eigenvalue owes to one side of
// the Laplacian; the up/down split of a lambda-eigenvector is exactly
// L_up v / lambda + L_down v / lambda.
double side_fraction(const Eigen::MatrixXd& part, const Eigen::VectorXd& weights,
                     const Eigen::VectorXd& v, double lambda) {
    Eigen::VectorXd image = part * v;
    return weighted_norm(weights, image) / (lambda * weighted_norm(weights, v));
}

} // namespace

const char* to_string(ClusterSide side) {
    switch (side) {
        case ClusterSide::Up: return "up";
        case ClusterSide::Down: return "down";
        case ClusterSide::Both: return "both";
        case ClusterSide::Harmonic: return "harmonic";
    }
    return "harmonic";
}

SpectrumReport spectrum(const LaplacianBundle& bundle, double cluster_tol) {
    if (!(cluster_tol > 0.0)) {
        throw HodgeseqError(ErrorKind::Input, kModule, "cluster tolerance must be positive");
    }
    SpectrumReport report;
    report.dim = bundle.dim;
    Eigen::Index size = bundle.full.rows();
    if (size == 0) return report;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(bundle.symmetrized);
    if (solver.info() != Eigen::Success) {
        throw HodgeseqError(ErrorKind::Numeric, kModule, "eigendecomposition did not converge");
    }
    report.eigenvalues = solver.eigenvalues();
    report.eigenvectors =
        bundle.w_here.cwiseSqrt().cwiseInverse().asDiagonal() * solver.eigenvectors();

    double scale = std::max(1.0, std::abs(report.eigenvalues(size - 1)));
    double zero_threshold = cluster_tol * scale;

    // Greedy clustering of the (ascending) eigenvalues by relative gap.
    int start = 0;
    for (int k = 1; k <= size; ++k) {
        bool extend = k < size && (report.eigenvalues(k) - report.eigenvalues(k - 1)) <=
                                      cluster_tol * std::max(1.0, std::abs(report.eigenvalues(k)));
        if (extend) continue;
        EigenCluster cluster;
        cluster.first_index = start;
        cluster.multiplicity = k - start;
        cluster.value = report.eigenvalues.segment(start, k - start).mean();
        if (std::abs(cluster.value) <= zero_threshold) {
            cluster.side = ClusterSide::Harmonic;
            report.betti += cluster.multiplicity;
        } else {
            const double attribution_floor = 1e-6;
            bool any_up = false, any_down = false;
            for (int member = start; member < k; ++member) {
                Eigen::VectorXd v = report.eigenvectors.col(member);
                double lambda = report.eigenvalues(member);
                if (side_fraction(bundle.up, bundle.w_here, v, lambda) >= attribution_floor)
                    any_up = true;
                if (side_fraction(bundle.down, bundle.w_here, v, lambda) >= attribution_floor)
                    any_down = true;
            }
            cluster.side = (any_up && any_down) ? ClusterSide::Both
                           : any_up             ? ClusterSide::Up
                                                : ClusterSide::Down;
        }
        report.clusters.push_back(cluster);
        start = k;
    }
    return report;
}

HodgeSplit hodge_decompose(const LaplacianBundle& bundle, const Eigen::VectorXd& cochain) {
    Eigen::Index size = bundle.full.rows();
    if (cochain.size() != size) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "cochain has " + std::to_string(cochain.size()) + " entries, expected " +
                                std::to_string(size));
    }
    HodgeSplit split;
    split.dim = bundle.dim;
    split.input = cochain;
    split.exact = Eigen::VectorXd::Zero(size);
    split.coexact = Eigen::VectorXd::Zero(size);

    Eigen::VectorXd sqrt_w = bundle.w_here.cwiseSqrt();
    Eigen::VectorXd target = sqrt_w.asDiagonal() * cochain;

    // Least-squares projection onto a span, orthogonal in the weighted inner
    // product once columns and target are scaled by W^{1/2}.
    auto project = [&](const Eigen::MatrixXd& columns) -> Eigen::VectorXd {
        if (columns.cols() == 0) return Eigen::VectorXd::Zero(size);
        Eigen::MatrixXd scaled = sqrt_w.asDiagonal() * columns;
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
        cod.setThreshold(1e-10);
        cod.compute(scaled);
        return columns * cod.solve(target);
    };

    split.exact = project(Eigen::MatrixXd(bundle.d_below));
    split.coexact = project(adjoint_matrix(bundle));
    split.harmonic = cochain - split.exact - split.coexact;
    return split;
}

} // namespace hodgeseq
