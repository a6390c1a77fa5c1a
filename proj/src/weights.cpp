#include "hodgeseq/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hodgeseq/errors.hpp"

namespace hodgeseq {

namespace {

const char* kModule = "weights";

std::string cell_debug(const Cell& c) {
    std::ostringstream out;
    out << (c.kind() == CellKind::Simplex ? '{' : '(');
    for (std::size_t i = 0; i < c.vertices().size(); ++i) {
        if (i) out << ',';
        out << c.vertices()[i];
    }
    out << (c.kind() == CellKind::Simplex ? '}' : ')');
    return out.str();
}

std::vector<Eigen::VectorXd> check_alignment(const ComplexIndex& complex,
                                             std::vector<Eigen::VectorXd> values,
                                             const char* what) {
    std::size_t dims = static_cast<std::size_t>(complex.top_dim() - complex.min_dim()) + 1;
    if (values.size() != dims) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            std::string(what) + ": expected " + std::to_string(dims) +
                                " dimension slices, got " + std::to_string(values.size()));
    }
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        const auto& v = values[static_cast<std::size_t>(n - complex.min_dim())];
        if (static_cast<std::size_t>(v.size()) != complex.cell_count(n)) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                std::string(what) + ": dimension " + std::to_string(n) + " has " +
                                    std::to_string(complex.cell_count(n)) + " cells but " +
                                    std::to_string(v.size()) + " values");
        }
    }
    return values;
}

// Bit masks of the full simplex cells, dimension by dimension, aligned with
// the canonical enumeration of ComplexIndex::full_simplex.
bool is_full_simplex(const ComplexIndex& complex) {
    if (complex.kind() != ComplexKind::Simplicial) return false;
    int m = complex.vertex_count();
    if (complex.top_dim() != m - 1) return false;
    std::size_t total = 0;
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) total += complex.cell_count(n);
    std::size_t expected = (std::size_t(1) << m) - (complex.augmented() ? 0 : 1);
    return total == expected;
}

std::uint64_t cell_mask(const Cell& c) {
    std::uint64_t mask = 0;
    for (VertexId v : c.vertices()) mask |= std::uint64_t(1) << v;
    return mask;
}

// Superset sums g[mask] = sum over supersets of mask of f[superset].
std::vector<double> superset_sums(std::vector<double> f, int m) {
    for (int b = 0; b < m; ++b) {
        std::uint64_t bit = std::uint64_t(1) << b;
        for (std::uint64_t mask = 0; mask < f.size(); ++mask) {
            if (!(mask & bit)) f[mask] += f[mask | bit];
        }
    }
    return f;
}

std::vector<double> distribution_by_mask(const ComplexIndex& full, const Distribution& p) {
    int m = full.vertex_count();
    if (m > 25) {
        throw HodgeseqError(ErrorKind::Size, kModule, "moment map limited to 25 vertices");
    }
    std::vector<double> mass(std::size_t(1) << m, 0.0);
    for (int n = full.min_dim(); n <= full.top_dim(); ++n) {
        for (std::size_t i = 0; i < full.cell_count(n); ++i) {
            mass[cell_mask(full.cell_at(n, i))] = p.mass(n, i);
        }
    }
    return mass;
}

} // namespace

Distribution::Distribution(const ComplexIndex& complex, std::vector<Eigen::VectorXd> mass_per_dim,
                           double sum_tol) {
    mass_ = check_alignment(complex, std::move(mass_per_dim), "distribution");
    min_dim_ = complex.min_dim();
    top_dim_ = complex.top_dim();
    double total = 0.0;
    for (int n = min_dim_; n <= top_dim_; ++n) {
        const auto& v = at(n);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (v(i) < 0.0 || !std::isfinite(v(i))) {
                throw HodgeseqError(ErrorKind::Input, kModule,
                                    "probability of cell " +
                                        cell_debug(complex.cell_at(n, static_cast<std::size_t>(i))) +
                                        " is negative or not finite");
            }
            total += v(i);
        }
    }
    if (std::abs(total - 1.0) > sum_tol * std::max(1.0, std::abs(total))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "probabilities sum to " << total << ", expected 1";
        throw HodgeseqError(ErrorKind::Model, kModule, msg.str());
    }
}

const Eigen::VectorXd& Distribution::at(int n) const {
    if (!has_dim(n)) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "distribution has no dimension " + std::to_string(n));
    }
    return mass_[static_cast<std::size_t>(n - min_dim_)];
}

const char* to_string(WeightProvenance provenance) {
    switch (provenance) {
        case WeightProvenance::Conditional: return "conditional";
        case WeightProvenance::Moment: return "moment";
        case WeightProvenance::EmptyNormalized: return "empty-normalized";
        case WeightProvenance::IndependentSequence: return "independent-sequence";
        case WeightProvenance::IndependentSimplicial: return "independent-simplicial";
        case WeightProvenance::Raw: return "raw";
    }
    return "raw";
}

WeightFunction::WeightFunction(const ComplexIndex& complex, std::vector<Eigen::VectorXd> values_per_dim,
                               WeightProvenance provenance)
    : provenance_(provenance) {
    values_ = check_alignment(complex, std::move(values_per_dim), "weights");
    min_dim_ = complex.min_dim();
    top_dim_ = complex.top_dim();
    for (int n = min_dim_; n <= top_dim_; ++n) {
        const auto& v = at(n);
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (!(v(i) > 0.0) || !std::isfinite(v(i))) {
                throw HodgeseqError(ErrorKind::Positivity, kModule,
                                    "weight of cell " +
                                        cell_debug(complex.cell_at(n, static_cast<std::size_t>(i))) +
                                        " must be strictly positive");
            }
        }
    }
}

const Eigen::VectorXd& WeightFunction::at(int n) const {
    if (!has_dim(n)) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "weight function has no dimension " + std::to_string(n));
    }
    return values_[static_cast<std::size_t>(n - min_dim_)];
}

IndependentModel IndependentModel::sequence(Eigen::VectorXd weights, double sum_tol) {
    if (weights.size() == 0) {
        throw HodgeseqError(ErrorKind::Model, kModule, "independent model needs at least one vertex");
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        if (!(weights(i) > 0.0) || weights(i) > 1.0) {
            throw HodgeseqError(ErrorKind::Model, kModule,
                                "sequence vertex weights must lie in (0, 1]");
        }
        total += weights(i);
    }
    if (std::abs(total - 1.0) > sum_tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "sequence vertex weights sum to " << total << ", expected 1";
        throw HodgeseqError(ErrorKind::Model, kModule, msg.str());
    }
    return IndependentModel{Flavor::Sequence, std::move(weights)};
}

IndependentModel IndependentModel::simplicial(Eigen::VectorXd weights) {
    if (weights.size() == 0) {
        throw HodgeseqError(ErrorKind::Model, kModule, "independent model needs at least one vertex");
    }
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        if (!(weights(i) > 0.0)) {
            throw HodgeseqError(ErrorKind::Model, kModule,
                                "simplicial vertex weights must be strictly positive");
        }
    }
    return IndependentModel{Flavor::Simplicial, std::move(weights)};
}

WeightFunction conditional_weights(const ComplexIndex& complex, const Distribution& p) {
    std::vector<Eigen::VectorXd> values;
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        const Eigen::VectorXd& slice = p.at(n);
        double slice_sum = slice.sum();
        if (!(slice_sum > 0.0)) {
            throw HodgeseqError(ErrorKind::DegenerateSlice, kModule,
                                "dimension " + std::to_string(n) + " carries no probability mass");
        }
        for (Eigen::Index i = 0; i < slice.size(); ++i) {
            if (!(slice(i) > 0.0)) {
                throw HodgeseqError(ErrorKind::Positivity, kModule,
                                    "cell " + cell_debug(complex.cell_at(n, static_cast<std::size_t>(i))) +
                                        " has zero probability");
            }
        }
        values.push_back(slice / slice_sum);
    }
    return WeightFunction(complex, std::move(values), WeightProvenance::Conditional);
}

WeightFunction moment_map(const ComplexIndex& complex, const Distribution& p_full_simplex) {
    if (complex.kind() != ComplexKind::Simplicial) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "moment map weights are defined on simplicial complexes");
    }
    int m = complex.vertex_count();
    ComplexIndex full = ComplexIndex::full_simplex(m);
    if (p_full_simplex.min_dim() != -1 || p_full_simplex.top_dim() != m - 1) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "moment map needs a distribution over the full simplex on " +
                                std::to_string(m) + " vertices");
    }
    for (int n = -1; n <= m - 1; ++n) {
        if (static_cast<std::size_t>(p_full_simplex.at(n).size()) != full.cell_count(n)) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                "moment map distribution misaligned at dimension " + std::to_string(n));
        }
    }
    std::vector<double> sums = superset_sums(distribution_by_mask(full, p_full_simplex), m);

    std::vector<Eigen::VectorXd> values;
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(complex.cell_count(n)));
        for (std::size_t i = 0; i < complex.cell_count(n); ++i) {
            Cell c = complex.cell_at(n, i);
            double moment = sums[cell_mask(c)];
            if (!(moment > 0.0)) {
                throw HodgeseqError(ErrorKind::Positivity, kModule,
                                    "moment of cell " + cell_debug(c) + " vanishes");
            }
            v(static_cast<Eigen::Index>(i)) = moment;
        }
        values.push_back(std::move(v));
    }
    WeightFunction w(complex, std::move(values), WeightProvenance::Moment);
    Eigen::VectorXd marginals(m);
    for (int i = 0; i < m; ++i) marginals(i) = sums[std::size_t(1) << i];
    w.set_predicted_identity_constant(marginals.sum());
    w.set_vertex_parameters(std::move(marginals));
    return w;
}

WeightFunction empty_normalized(const ComplexIndex& complex, const Distribution& p) {
    if (!complex.augmented()) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "empty-normalized weights need the empty cell");
    }
    double p_empty = p.mass(-1, 0);
    if (!(p_empty > 0.0)) {
        throw HodgeseqError(ErrorKind::Normalization, kModule, "probability of the empty cell vanishes");
    }
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        const Eigen::VectorXd& slice = p.at(n);
        for (Eigen::Index i = 0; i < slice.size(); ++i) {
            if (!(slice(i) > 0.0)) {
                throw HodgeseqError(ErrorKind::Positivity, kModule,
                                    "cell " + cell_debug(complex.cell_at(n, static_cast<std::size_t>(i))) +
                                        " has zero probability");
            }
        }
    }
    std::vector<Eigen::VectorXd> values;
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        values.push_back(p.at(n) / p_empty);
    }
    WeightFunction w(complex, std::move(values), WeightProvenance::EmptyNormalized);
    if (is_full_simplex(complex)) {
        ComplexIndex full = ComplexIndex::full_simplex(complex.vertex_count());
        std::vector<double> sums = superset_sums(distribution_by_mask(full, p), complex.vertex_count());
        Eigen::VectorXd marginals(complex.vertex_count());
        double constant = 0.0;
        bool usable = true;
        for (int i = 0; i < complex.vertex_count(); ++i) {
            marginals(i) = sums[std::size_t(1) << i];
            if (marginals(i) >= 1.0) usable = false;
            else constant += marginals(i) / (1.0 - marginals(i));
        }
        w.set_vertex_parameters(std::move(marginals));
        if (usable) w.set_predicted_identity_constant(constant);
    }
    return w;
}

WeightFunction independent_sequence_weights(const ComplexIndex& complex, const IndependentModel& model) {
    if (complex.kind() != ComplexKind::FullSequence) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "independent sequence weights need a full sequence complex");
    }
    if (model.flavor != IndependentModel::Flavor::Sequence) {
        throw HodgeseqError(ErrorKind::Model, kModule,
                            "model is not of the sequence flavor");
    }
    if (model.vertex_weights.size() != complex.vertex_count()) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "model has " + std::to_string(model.vertex_weights.size()) +
                                " vertex weights, complex has " +
                                std::to_string(complex.vertex_count()) + " vertices");
    }
    std::vector<Eigen::VectorXd> values;
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(complex.cell_count(n)));
        for (std::size_t i = 0; i < complex.cell_count(n); ++i) {
            Cell c = complex.cell_at(n, i);
            double prod = 1.0;
            for (VertexId x : c.vertices()) prod *= model.vertex_weights(x);
            v(static_cast<Eigen::Index>(i)) = prod;
        }
        values.push_back(std::move(v));
    }
    WeightFunction w(complex, std::move(values), WeightProvenance::IndependentSequence);
    w.set_vertex_parameters(model.vertex_weights);
    return w;
}

WeightFunction independent_simplicial_weights(const ComplexIndex& complex, const IndependentModel& model) {
    if (complex.kind() != ComplexKind::Simplicial) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "independent simplicial weights need a simplicial complex");
    }
    if (model.flavor != IndependentModel::Flavor::Simplicial) {
        throw HodgeseqError(ErrorKind::Model, kModule, "model is not of the simplicial flavor");
    }
    if (model.vertex_weights.size() != complex.vertex_count()) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "model has " + std::to_string(model.vertex_weights.size()) +
                                " vertex weights, complex has " +
                                std::to_string(complex.vertex_count()) + " vertices");
    }
    std::vector<Eigen::VectorXd> values;
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(complex.cell_count(n)));
        for (std::size_t i = 0; i < complex.cell_count(n); ++i) {
            Cell c = complex.cell_at(n, i);
            double prod = 1.0;
            for (VertexId x : c.vertices()) prod *= model.vertex_weights(x);
            v(static_cast<Eigen::Index>(i)) = prod;
        }
        values.push_back(std::move(v));
    }
    WeightFunction w(complex, std::move(values), WeightProvenance::IndependentSimplicial);
    w.set_vertex_parameters(model.vertex_weights);
    w.set_predicted_identity_constant(model.vertex_weights.sum());
    return w;
}

WeightFunction raw_weights(const ComplexIndex& complex, std::vector<Eigen::VectorXd> values_per_dim) {
    return WeightFunction(complex, std::move(values_per_dim), WeightProvenance::Raw);
}

WeightFunction scaled_weights(const ComplexIndex& complex, const WeightFunction& w, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw HodgeseqError(ErrorKind::Input, kModule, "scale factor must be positive");
    }
    std::vector<Eigen::VectorXd> values;
    for (int n = w.min_dim(); n <= w.top_dim(); ++n) values.push_back(alpha * w.at(n));
    return WeightFunction(complex, std::move(values), WeightProvenance::Raw);
}

FactorizationResult factorization_test(const ComplexIndex& full_simplex, const WeightFunction& w,
                                       double tol) {
    if (!is_full_simplex(full_simplex) || !full_simplex.augmented()) {
        throw HodgeseqError(ErrorKind::Precondition, kModule,
                            "factorization test runs on the augmented full simplex");
    }
    double w_empty = w.value(-1, 0);
    if (std::abs(w_empty - 1.0) > tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "w(empty) = " << w_empty << ", expected 1";
        throw HodgeseqError(ErrorKind::Precondition, kModule, msg.str());
    }
    int m = full_simplex.vertex_count();
    FactorizationResult result;
    result.recovered = Eigen::VectorXd(m);
    for (std::size_t i = 0; i < full_simplex.cell_count(0); ++i) {
        result.recovered(static_cast<Eigen::Index>(i)) = w.value(0, i);
    }
    for (int n = 1; n <= full_simplex.top_dim(); ++n) {
        for (std::size_t i = 0; i < full_simplex.cell_count(n); ++i) {
            Cell c = full_simplex.cell_at(n, i);
            double expected = 1.0;
            for (VertexId x : c.vertices()) expected *= result.recovered(x);
            double actual = w.value(n, i);
            double deviation = std::abs(actual - expected) / expected;
            if (deviation > tol) {
                result.independent = false;
                result.witness = c;
                result.witness_deviation = deviation;
                result.recovered.resize(0);
                return result;
            }
        }
    }
    result.independent = true;
    return result;
}

Distribution independent_subset_distribution(const ComplexIndex& full_simplex,
                                             const Eigen::VectorXd& bernoulli) {
    if (!is_full_simplex(full_simplex) || !full_simplex.augmented()) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "independent subset distribution lives on the augmented full simplex");
    }
    int m = full_simplex.vertex_count();
    if (bernoulli.size() != m) {
        throw HodgeseqError(ErrorKind::Input, kModule, "need one Bernoulli parameter per vertex");
    }
    for (int i = 0; i < m; ++i) {
        if (!(bernoulli(i) > 0.0) || !(bernoulli(i) < 1.0)) {
            throw HodgeseqError(ErrorKind::Model, kModule, "Bernoulli parameters must lie in (0, 1)");
        }
    }
    std::vector<Eigen::VectorXd> mass;
    for (int n = -1; n <= m - 1; ++n) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(full_simplex.cell_count(n)));
        for (std::size_t i = 0; i < full_simplex.cell_count(n); ++i) {
            std::uint64_t mask = cell_mask(full_simplex.cell_at(n, i));
            double prod = 1.0;
            for (int b = 0; b < m; ++b) {
                prod *= (mask & (std::uint64_t(1) << b)) ? bernoulli(b) : 1.0 - bernoulli(b);
            }
            v(static_cast<Eigen::Index>(i)) = prod;
        }
        mass.push_back(std::move(v));
    }
    return Distribution(full_simplex, std::move(mass), 1e-9);
}

Distribution empirical_distribution(const ComplexIndex& complex, const std::vector<Cell>& observations,
                                    double smoothing) {
    if (smoothing < 0.0 || !std::isfinite(smoothing)) {
        throw HodgeseqError(ErrorKind::Input, kModule, "smoothing must be nonnegative");
    }
    std::vector<Eigen::VectorXd> counts;
    std::size_t total_cells = 0;
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        counts.emplace_back(Eigen::VectorXd::Constant(
            static_cast<Eigen::Index>(complex.cell_count(n)), smoothing));
        total_cells += complex.cell_count(n);
    }
    for (const Cell& c : observations) {
        if (!complex.contains(c)) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                "observation " + cell_debug(c) + " is outside the complex");
        }
        counts[static_cast<std::size_t>(c.dim() - complex.min_dim())](
            static_cast<Eigen::Index>(complex.index_of(c))) += 1.0;
    }
    double total = static_cast<double>(observations.size()) +
                   smoothing * static_cast<double>(total_cells);
    if (!(total > 0.0)) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "no observations and no smoothing: nothing to normalize");
    }
    for (auto& v : counts) v /= total;
    return Distribution(complex, std::move(counts), 1e-9);
}

} // namespace hodgeseq
