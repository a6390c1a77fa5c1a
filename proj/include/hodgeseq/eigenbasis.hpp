#ifndef HODGESEQ_EIGENBASIS_HPP
#define HODGESEQ_EIGENBASIS_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgeseq/spectrum.hpp"

namespace hodgeseq {

/**
 * Tensor product of cochains on a full sequence complex:
 * (u (x) v)(sigma) = u(first u_dim+1 slots) * v(remaining v_dim+1 slots),
 * a cochain of dimension u_dim + v_dim + 1.  With the digit-string
 * enumeration this is exactly the Kronecker product of the coefficients.
 */
Eigen::VectorXd tensor_product(const ComplexIndex& complex, const Eigen::VectorXd& u, int u_dim,
                               const Eigen::VectorXd& v, int v_dim);

struct LabeledEigenvector {
    Cell label;                 // the sequence eta generating the vector
    int base_count = 0;         // occurrences of the base vertex in eta
    double eigenvalue = 0.0;    // (dim + 2) - base_count
    Eigen::VectorXd coefficients;
};

/**
 * Explicit eigenbasis of the sequence Laplacian under an independent model:
 * f(eta) is the (dim+1)-fold tensor product of the one-vertex blocks
 *
 *   f0(a)(y) = 1     for every y, and for x != a
 *   f0(x)(y) = w(x)  if y = a
 *            = -w(a) if y = x
 *            = 0     otherwise
 *
 * relative to a chosen base vertex a, one factor per slot of eta.
 */
class EigenbasisGenerator {
public:
    EigenbasisGenerator(const ComplexIndex& complex, const IndependentModel& model,
                        VertexId base_vertex = 0);

    VertexId base_vertex() const { return base_vertex_; }
    Eigen::VectorXd f0(VertexId x) const;
    LabeledEigenvector f_eta(const Cell& eta) const;
    std::vector<LabeledEigenvector> basis(int n) const; // all eta of dimension n

private:
    int vertex_count_ = 0;
    VertexId base_vertex_ = 0;
    Eigen::VectorXd weights_;
    std::vector<Eigen::VectorXd> blocks_; // f0 per vertex
};

struct SpectrumLine {
    int eigenvalue = 0;
    long long multiplicity = 0;
};

// Predicted spectrum of the dimension-n sequence Laplacian on m vertices:
// eigenvalue k has multiplicity C(n+1, k-1) * (m-1)^(k-1), k = 1..n+2.
// Entries with zero multiplicity (m = 1) are omitted.
std::vector<SpectrumLine> predicted_spectrum(int n, int vertex_count);

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string details;
};

struct VerificationReport {
    bool pass = true;
    std::vector<CheckResult> checks;

    void add(CheckResult check);
};

/**
 * Checks the integer-spectrum theorem for the sequence Laplacian at
 * dimension n: (a) eigenvalue clusters land on 1..n+2 with the binomial
 * multiplicities, (b) every f(eta) has relative eigen-residual within tol,
 * (c) the Betti number vanishes, (d) the least eigenvalue is >= 1 - tol.
 * The model supplies the predictions; w is the weight function actually
 * driving the operator (pass a perturbed w to exercise the failure path).
 */
VerificationReport verify_sequence_theorem(const ComplexIndex& complex, const IndependentModel& model,
                                           const WeightFunction& w, int n, double tol = 1e-9,
                                           VertexId base_vertex = 0);
VerificationReport verify_sequence_theorem(const ComplexIndex& complex, const IndependentModel& model,
                                           int n, double tol = 1e-9, VertexId base_vertex = 0);

struct SimplicialTheoremOptions {
    double tol = 1e-11;
    // Constant predicted by the weight provenance, when known.
    std::optional<double> expected_constant;
};

/**
 * Checks the scaled-identity characterization on a full simplex: every L_n
 * equals alpha * I with alpha = sum of the singleton weights, which holds
 * exactly when the weight function factorizes over vertices.  The report
 * carries the per-dimension deviations and the factorization verdict.
 */
VerificationReport verify_simplicial_theorem(const ComplexIndex& complex, const WeightFunction& w,
                                             const SimplicialTheoremOptions& options = {});

enum class EmbedScaling { None, InverseSqrtEigenvalue };

/**
 * Spectral embedding: coordinates are the entries of the `components`
 * eigenvectors of smallest eigenvalue, skipping the bottom cluster when it
 * is the harmonic or constant one.  Deterministic sign: the first entry of
 * each eigenvector exceeding 1e-12 of its max magnitude is made positive.
 */
Eigen::MatrixXd spectral_embed(const LaplacianBundle& bundle, const SpectrumReport& report,
                               int components, EmbedScaling scaling = EmbedScaling::None);

} // namespace hodgeseq

#endif // HODGESEQ_EIGENBASIS_HPP
