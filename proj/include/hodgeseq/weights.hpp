#ifndef HODGESEQ_WEIGHTS_HPP
#define HODGESEQ_WEIGHTS_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hodgeseq/complex.hpp"

namespace hodgeseq {

/**
 * Probability distribution over the cells of a complex, stored per dimension
 * in index alignment with the complex enumeration.  Masses are nonnegative
 * and sum to 1 within `sum_tol` (relative).
 */
class Distribution {
public:
    Distribution(const ComplexIndex& complex, std::vector<Eigen::VectorXd> mass_per_dim,
                 double sum_tol = 1e-12);

    int min_dim() const { return min_dim_; }
    int top_dim() const { return top_dim_; }
    bool has_dim(int n) const { return n >= min_dim_ && n <= top_dim_; }
    const Eigen::VectorXd& at(int n) const;
    double mass(int n, std::size_t index) const { return at(n)(static_cast<Eigen::Index>(index)); }

private:
    int min_dim_ = 0;
    int top_dim_ = -1;
    std::vector<Eigen::VectorXd> mass_; // indexed by dim - min_dim
};

// How a weight function was produced; verification routines use this to pick
// the identities they are entitled to assume.
enum class WeightProvenance {
    Conditional,
    Moment,
    EmptyNormalized,
    IndependentSequence,
    IndependentSimplicial,
    Raw
};

const char* to_string(WeightProvenance provenance);

/**
 * Strictly positive weight function on the cells of a complex, stored per
 * dimension in index alignment with the complex enumeration.
 */
class WeightFunction {
public:
    WeightFunction(const ComplexIndex& complex, std::vector<Eigen::VectorXd> values_per_dim,
                   WeightProvenance provenance);

    WeightProvenance provenance() const { return provenance_; }
    int min_dim() const { return min_dim_; }
    int top_dim() const { return top_dim_; }
    bool has_dim(int n) const { return n >= min_dim_ && n <= top_dim_; }
    const Eigen::VectorXd& at(int n) const;
    double value(int n, std::size_t index) const { return at(n)(static_cast<Eigen::Index>(index)); }

    // Per-vertex parameters of the generating model, when one exists
    // (independent models and distribution marginals).
    const std::optional<Eigen::VectorXd>& vertex_parameters() const { return vertex_parameters_; }
    // Constant predicted for the scaled-identity check by the generating
    // model (moment: sum p_i; empty-normalized: sum p_i/(1-p_i)).
    const std::optional<double>& predicted_identity_constant() const { return predicted_constant_; }

    void set_vertex_parameters(Eigen::VectorXd p) { vertex_parameters_ = std::move(p); }
    void set_predicted_identity_constant(double c) { predicted_constant_ = c; }

private:
    WeightProvenance provenance_ = WeightProvenance::Raw;
    int min_dim_ = 0;
    int top_dim_ = -1;
    std::vector<Eigen::VectorXd> values_;
    std::optional<Eigen::VectorXd> vertex_parameters_;
    std::optional<double> predicted_constant_;
};

/**
 * Product model on vertices.  The sequence flavor requires the weights to be
 * a probability vector (each in (0,1], summing to 1 within sum_tol); the
 * simplicial flavor only requires strict positivity.
 */
struct IndependentModel {
    enum class Flavor { Sequence, Simplicial };

    Flavor flavor;
    Eigen::VectorXd vertex_weights;

    static IndependentModel sequence(Eigen::VectorXd weights, double sum_tol = 1e-12);
    static IndependentModel simplicial(Eigen::VectorXd weights);
};

// w_p(cell) = p(cell) / sum of p over cells of the same dimension.
WeightFunction conditional_weights(const ComplexIndex& complex, const Distribution& p);

// m_p(cell) = sum of p over supersets within 2^[m]; p must live on the full
// simplex over the same vertex count as the (simplicial) target complex.
WeightFunction moment_map(const ComplexIndex& complex, const Distribution& p_full_simplex);

// p_empty(cell) = p(cell) / p(empty); requires the empty cell and p > 0.
WeightFunction empty_normalized(const ComplexIndex& complex, const Distribution& p);

// w(sequence) = product of vertex weights along the sequence; w(empty) = 1.
WeightFunction independent_sequence_weights(const ComplexIndex& complex, const IndependentModel& model);

// w(subset) = product of vertex weights over the subset; w(empty) = 1.
WeightFunction independent_simplicial_weights(const ComplexIndex& complex, const IndependentModel& model);

// Caller-supplied positive values, one vector per stored dimension.
WeightFunction raw_weights(const ComplexIndex& complex, std::vector<Eigen::VectorXd> values_per_dim);

// Same values multiplied by alpha > 0 (provenance degrades to Raw).
WeightFunction scaled_weights(const ComplexIndex& complex, const WeightFunction& w, double alpha);

struct FactorizationResult {
    bool independent = false;
    Eigen::VectorXd recovered;          // vertex weights when independent
    std::optional<Cell> witness;        // first face violating the product rule
    double witness_deviation = 0.0;     // relative deviation at the witness
};

/**
 * Decides whether a weight function on the full simplex is a vertex-product
 * weight: requires w(empty) = 1 within tol, then checks
 * w(xi) = prod_{i in xi} w({i}) with relative tolerance tol on every face.
 * Returns the recovered vertex vector or the first violating face in
 * enumeration order.
 */
FactorizationResult factorization_test(const ComplexIndex& full_simplex, const WeightFunction& w,
                                       double tol = 1e-12);

// Product distribution on 2^[m]: p(xi) = prod_{i in xi} p_i * prod_{j not in xi} (1 - p_j).
Distribution independent_subset_distribution(const ComplexIndex& full_simplex,
                                             const Eigen::VectorXd& bernoulli);

// Relative frequencies of the observed cells with optional additive
// smoothing applied to every stored cell of the complex.
Distribution empirical_distribution(const ComplexIndex& complex, const std::vector<Cell>& observations,
                                    double smoothing = 0.0);

} // namespace hodgeseq

#endif // HODGESEQ_WEIGHTS_HPP
