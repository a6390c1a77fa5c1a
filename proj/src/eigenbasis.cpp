#include "hodgeseq/eigenbasis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hodgeseq/errors.hpp"

namespace hodgeseq {

namespace {

const char* kModule = "spectral-analysis";

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

std::string format_value(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

} // namespace

Eigen::VectorXd tensor_product(const ComplexIndex& complex, const Eigen::VectorXd& u, int u_dim,
                               const Eigen::VectorXd& v, int v_dim) {
    if (complex.kind() != ComplexKind::FullSequence) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "tensor products are defined on full sequence complexes");
    }
    if (u_dim < 0 || v_dim < 0) {
        throw HodgeseqError(ErrorKind::Input, kModule, "tensor factors must have dimension >= 0");
    }
    int out_dim = u_dim + v_dim + 1;
    if (out_dim > complex.top_dim()) {
        throw HodgeseqError(ErrorKind::Truncation, kModule,
                            "tensor product of dimension " + std::to_string(out_dim) +
                                " exceeds the stored top dimension");
    }
    if (static_cast<std::size_t>(u.size()) != complex.cell_count(u_dim) ||
        static_cast<std::size_t>(v.size()) != complex.cell_count(v_dim)) {
        throw HodgeseqError(ErrorKind::Input, kModule, "tensor factor sizes do not match their dimensions");
    }
    // Prefix slots are the most significant digits of a cell index, so the
    // tensor product is the Kronecker product of the coefficient vectors.
    Eigen::VectorXd out(u.size() * v.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        out.segment(i * v.size(), v.size()) = u(i) * v;
    }
    return out;
}

EigenbasisGenerator::EigenbasisGenerator(const ComplexIndex& complex, const IndependentModel& model,
                                         VertexId base_vertex)
    : vertex_count_(complex.vertex_count()), base_vertex_(base_vertex) {
    if (complex.kind() != ComplexKind::FullSequence) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "the explicit eigenbasis lives on full sequence complexes");
    }
    if (model.flavor != IndependentModel::Flavor::Sequence ||
        model.vertex_weights.size() != vertex_count_) {
        throw HodgeseqError(ErrorKind::Model, kModule, "mismatched independent sequence model");
    }
    if (base_vertex < 0 || base_vertex >= vertex_count_) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "base vertex " + std::to_string(base_vertex) + " out of range");
    }
    weights_ = model.vertex_weights;
    blocks_.resize(static_cast<std::size_t>(vertex_count_));
    for (VertexId x = 0; x < vertex_count_; ++x) {
        Eigen::VectorXd block = Eigen::VectorXd::Zero(vertex_count_);
        if (x == base_vertex_) {
            block.setOnes();
        } else {
            block(base_vertex_) = weights_(x);
            block(x) = -weights_(base_vertex_);
        }
        blocks_[static_cast<std::size_t>(x)] = std::move(block);
    }
}

Eigen::VectorXd EigenbasisGenerator::f0(VertexId x) const {
    if (x < 0 || x >= vertex_count_) {
        throw HodgeseqError(ErrorKind::Input, kModule, "vertex " + std::to_string(x) + " out of range");
    }
    return blocks_[static_cast<std::size_t>(x)];
}

LabeledEigenvector EigenbasisGenerator::f_eta(const Cell& eta) const {
    if (eta.kind() != CellKind::Sequence) {
        throw HodgeseqError(ErrorKind::Input, kModule, "eigenvector labels are nonempty sequences");
    }
    LabeledEigenvector out;
    out.label = eta;
    Eigen::VectorXd coeffs = f0(eta.vertices()[0]);
    for (std::size_t i = 1; i < eta.vertices().size(); ++i) {
        const Eigen::VectorXd& block = blocks_[static_cast<std::size_t>(eta.vertices()[i])];
        Eigen::VectorXd next(coeffs.size() * block.size());
        for (Eigen::Index r = 0; r < coeffs.size(); ++r) {
            next.segment(r * block.size(), block.size()) = coeffs(r) * block;
        }
        coeffs = std::move(next);
    }
    out.coefficients = std::move(coeffs);
    out.base_count = static_cast<int>(
        std::count(eta.vertices().begin(), eta.vertices().end(), base_vertex_));
    out.eigenvalue = static_cast<double>(eta.dim() + 2 - out.base_count);
    return out;
}

std::vector<LabeledEigenvector> EigenbasisGenerator::basis(int n) const {
    if (n < 0) {
        throw HodgeseqError(ErrorKind::Input, kModule, "the labeled basis needs dimension >= 0");
    }
    std::vector<LabeledEigenvector> result;
    std::size_t count = 1;
    for (int i = 0; i <= n; ++i) count *= static_cast<std::size_t>(vertex_count_);
    result.reserve(count);
    std::vector<VertexId> digits(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rest = idx;
        for (int slot = n; slot >= 0; --slot) {
            digits[static_cast<std::size_t>(slot)] =
                static_cast<VertexId>(rest % static_cast<std::size_t>(vertex_count_));
            rest /= static_cast<std::size_t>(vertex_count_);
        }
        result.push_back(f_eta(Cell::sequence(digits)));
    }
    return result;
}

std::vector<SpectrumLine> predicted_spectrum(int n, int vertex_count) {
    if (n < -1 || vertex_count < 1) {
        throw HodgeseqError(ErrorKind::Input, kModule, "predicted spectrum needs n >= -1, m >= 1");
    }
    std::vector<SpectrumLine> lines;
    for (int lambda = 1; lambda <= n + 2; ++lambda) {
        long long mult = binomial(n + 1, lambda - 1);
        for (int p = 0; p < lambda - 1; ++p) mult *= (vertex_count - 1);
        if (mult > 0) lines.push_back({lambda, mult});
    }
    return lines;
}

void VerificationReport::add(CheckResult check) {
    pass = pass && check.pass;
    checks.push_back(std::move(check));
}

VerificationReport verify_sequence_theorem(const ComplexIndex& complex, const IndependentModel& model,
                                           const WeightFunction& w, int n, double tol,
                                           VertexId base_vertex) {
    if (complex.kind() != ComplexKind::FullSequence || !complex.augmented()) {
        throw HodgeseqError(ErrorKind::Precondition, kModule,
                            "the integer-spectrum check runs on augmented full sequence complexes");
    }
    if (model.flavor != IndependentModel::Flavor::Sequence) {
        throw HodgeseqError(ErrorKind::Precondition, kModule,
                            "the integer-spectrum check needs an independent sequence model");
    }
    if (!(tol > 0.0)) {
        throw HodgeseqError(ErrorKind::Input, kModule, "tolerance must be positive");
    }
    VerificationReport report;
    LaplacianBundle bundle = laplacian(complex, w, n);
    SpectrumReport spec = spectrum(bundle);

    // (a) eigenvalue clusters land on 1..n+2 with the binomial multiplicities
    std::vector<SpectrumLine> predicted = predicted_spectrum(n, complex.vertex_count());
    CheckResult match;
    match.name = "spectrum-match";
    match.threshold = tol;
    match.pass = spec.clusters.size() == predicted.size();
    if (!match.pass) {
        match.details = "expected " + std::to_string(predicted.size()) + " clusters, found " +
                        std::to_string(spec.clusters.size());
        // witness: the eigenvalue farthest from any integer
        for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
            double v = spec.eigenvalues(k);
            match.measured = std::max(match.measured, std::abs(v - std::round(v)));
        }
    } else {
        for (std::size_t c = 0; c < predicted.size(); ++c) {
            double deviation = std::abs(spec.clusters[c].value - predicted[c].eigenvalue);
            match.measured = std::max(match.measured, deviation);
            bool mult_ok =
                spec.clusters[c].multiplicity == static_cast<int>(predicted[c].multiplicity);
            if (deviation > tol || !mult_ok) {
                match.pass = false;
                match.details = "cluster at " + format_value(spec.clusters[c].value) +
                                " (multiplicity " + std::to_string(spec.clusters[c].multiplicity) +
                                ") vs predicted " + std::to_string(predicted[c].eigenvalue) +
                                " (multiplicity " + std::to_string(predicted[c].multiplicity) + ")";
                break;
            }
        }
    }
    report.add(match);

    // (b) residuals of the labeled eigenbasis
    EigenbasisGenerator generator(complex, model, base_vertex);
    CheckResult residuals;
    residuals.name = "eigenbasis-residuals";
    residuals.threshold = tol;
    residuals.pass = true;
    if (n == -1) {
        // single label: the empty sequence maps to the constant 1 at eigenvalue 1
        Eigen::VectorXd f = Eigen::VectorXd::Ones(1);
        residuals.measured = (bundle.full * f - f).norm();
        residuals.pass = residuals.measured <= tol;
    } else {
        for (const LabeledEigenvector& labeled : generator.basis(n)) {
            Eigen::VectorXd residual =
                bundle.full * labeled.coefficients - labeled.eigenvalue * labeled.coefficients;
            double rel = weighted_norm(bundle.w_here, residual) /
                         weighted_norm(bundle.w_here, labeled.coefficients);
            if (rel > residuals.measured) residuals.measured = rel;
        }
        residuals.pass = residuals.measured <= tol;
    }
    report.add(residuals);

    // (c) trivial cohomology
    CheckResult betti;
    betti.name = "betti-zero";
    betti.measured = spec.betti;
    betti.threshold = 0.0;
    betti.pass = spec.betti == 0;
    report.add(betti);

    // (d) spectral gap: least eigenvalue at 1
    CheckResult least;
    least.name = "min-eigenvalue";
    least.measured = spec.eigenvalues.size() ? spec.eigenvalues(0) : 0.0;
    least.threshold = 1.0 - tol;
    least.pass = least.measured >= 1.0 - tol;
    report.add(least);
    return report;
}

VerificationReport verify_sequence_theorem(const ComplexIndex& complex, const IndependentModel& model,
                                           int n, double tol, VertexId base_vertex) {
    return verify_sequence_theorem(complex, model, independent_sequence_weights(complex, model), n,
                                   tol, base_vertex);
}

VerificationReport verify_simplicial_theorem(const ComplexIndex& complex, const WeightFunction& w,
                                             const SimplicialTheoremOptions& options) {
    if (!(options.tol > 0.0)) {
        throw HodgeseqError(ErrorKind::Input, kModule, "tolerance must be positive");
    }
    // factorization_test re-checks the full-simplex precondition and w(empty)=1
    FactorizationResult factorization = factorization_test(complex, w);

    VerificationReport report;
    double alpha = 0.0;
    for (std::size_t i = 0; i < complex.cell_count(0); ++i) alpha += w.value(0, i);

    double worst = 0.0;
    int worst_dim = complex.min_dim();
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        Eigen::MatrixXd L = laplacian(complex, w, n).full;
        Eigen::MatrixXd deviation =
            L - alpha * Eigen::MatrixXd::Identity(L.rows(), L.cols());
        double value = deviation.cwiseAbs().maxCoeff();
        if (value > worst) {
            worst = value;
            worst_dim = n;
        }
    }
    CheckResult identity;
    identity.name = "scaled-identity";
    identity.measured = worst;
    identity.threshold = options.tol;
    identity.pass = worst <= options.tol;
    identity.details = "alpha = " + format_value(alpha) + ", worst deviation at dimension " +
                       std::to_string(worst_dim);
    report.add(identity);

    CheckResult factor;
    factor.name = "vertex-factorization";
    factor.pass = factorization.independent;
    factor.measured = factorization.witness_deviation;
    factor.threshold = 0.0;
    if (factorization.witness) {
        std::ostringstream witness;
        witness << "first violating face {";
        const auto& verts = factorization.witness->vertices();
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (i) witness << ',';
            witness << verts[i];
        }
        witness << '}';
        factor.details = witness.str();
    }
    report.add(factor);

    if (options.expected_constant) {
        CheckResult constant;
        constant.name = "constant-prediction";
        constant.measured = std::abs(alpha - *options.expected_constant);
        constant.threshold = 1e-12 * std::max(1.0, std::abs(*options.expected_constant));
        constant.pass = constant.measured <= constant.threshold;
        constant.details = "alpha = " + format_value(alpha) + ", predicted " +
                           format_value(*options.expected_constant);
        report.add(constant);
    }
    return report;
}

Eigen::MatrixXd spectral_embed(const LaplacianBundle& bundle, const SpectrumReport& report,
                               int components, EmbedScaling scaling) {
    if (components < 0) {
        throw HodgeseqError(ErrorKind::Input, kModule, "component count must be nonnegative");
    }
    Eigen::Index size = bundle.full.rows();
    if (bundle.dim != report.dim || report.eigenvectors.rows() != size) {
        throw HodgeseqError(ErrorKind::Input, kModule, "spectrum report does not match the bundle");
    }
    // Skip the bottom cluster when it carries no geometry: the harmonic
    // space, or a one-dimensional constant eigenvector.
    Eigen::Index start = 0;
    if (!report.clusters.empty()) {
        const EigenCluster& bottom = report.clusters.front();
        bool skip = bottom.side == ClusterSide::Harmonic;
        if (!skip && bottom.multiplicity == 1) {
            Eigen::VectorXd v = report.eigenvectors.col(bottom.first_index);
            double peak = v.cwiseAbs().maxCoeff();
            double flatness = (v.array() - v.mean()).abs().maxCoeff();
            skip = peak > 0.0 && flatness <= 1e-9 * peak;
        }
        if (skip) start = bottom.multiplicity;
    }
    if (components > size - start) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "requested " + std::to_string(components) + " components, only " +
                                std::to_string(size - start) + " informative eigenvectors exist");
    }
    Eigen::MatrixXd out(size, components);
    for (int c = 0; c < components; ++c) {
        Eigen::VectorXd column = report.eigenvectors.col(start + c);
        double peak = column.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < column.size(); ++i) {
            if (std::abs(column(i)) > 1e-12 * peak) {
                if (column(i) < 0.0) column = -column;
                break;
            }
        }
        if (scaling == EmbedScaling::InverseSqrtEigenvalue) {
            double lambda = report.eigenvalues(start + c);
            if (!(lambda > 0.0)) {
                throw HodgeseqError(ErrorKind::Input, kModule,
                                    "cannot rescale a nonpositive eigenvalue column");
            }
            column /= std::sqrt(lambda);
        }
        out.col(c) = column;
    }
    return out;
}

} // namespace hodgeseq
