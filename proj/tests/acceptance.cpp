// Acceptance checks for the weighted Hodge Laplacian library.  Each criterion
// prints one PASS/FAIL line; the exit status is 0 only when all ten pass.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hodgeseq/eigenbasis.hpp"
#include "hodgeseq/errors.hpp"
#include "hodgeseq/spectrum.hpp"

using namespace hodgeseq;

namespace {

int failures = 0;

void report(int number, bool pass, const std::string& label, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << label;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++failures;
}

std::string measured(double value) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(3) << value;
    return out.str();
}

WeightFunction random_weights(const ComplexIndex& cx, std::mt19937& rng) {
    std::uniform_real_distribution<double> uniform(0.1, 2.0);
    std::vector<Eigen::VectorXd> values;
    for (int n = cx.min_dim(); n <= cx.top_dim(); ++n) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(cx.cell_count(n)));
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = uniform(rng);
        values.push_back(std::move(v));
    }
    return raw_weights(cx, std::move(values));
}

Eigen::VectorXd random_probability(int m, std::mt19937& rng) {
    std::uniform_real_distribution<double> uniform(0.2, 1.0);
    Eigen::VectorXd p(m);
    for (int i = 0; i < m; ++i) p(i) = uniform(rng);
    p /= p.sum();
    return p;
}

Eigen::MatrixXd symmetrized_up(const LaplacianBundle& b) {
    Eigen::VectorXd inv_sqrt = b.w_here.cwiseInverse().cwiseSqrt();
    Eigen::MatrixXd d = Eigen::MatrixXd(b.d_here);
    Eigen::MatrixXd gram = d.transpose() * b.w_above.asDiagonal() * d;
    return inv_sqrt.asDiagonal() * gram * inv_sqrt.asDiagonal();
}

Eigen::MatrixXd symmetrized_down(const LaplacianBundle& b) {
    Eigen::VectorXd sqrt_w = b.w_here.cwiseSqrt();
    Eigen::MatrixXd d = Eigen::MatrixXd(b.d_below);
    Eigen::MatrixXd gram = d * b.w_below.cwiseInverse().asDiagonal() * d.transpose();
    return sqrt_w.asDiagonal() * gram * sqrt_w.asDiagonal();
}

std::vector<double> positive_spectrum(const Eigen::MatrixXd& symmetric, double cut = 1e-7) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        if (solver.eigenvalues()(i) > cut) out.push_back(solver.eigenvalues()(i));
    }
    return out;
}

bool same_multiset(std::vector<double> a, std::vector<double> b, double tol, double* worst) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    bool pass = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double deviation = std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i]));
        *worst = std::max(*worst, deviation);
        pass = pass && deviation <= tol;
    }
    return pass;
}

struct SpectrumTrial {
    int m, max_n;
};

const SpectrumTrial kSpectrumGrid[3] = {{2, 3}, {3, 2}, {4, 2}};

// Criterion 1: integer spectrum with binomial multiplicities, under 30 s.
void criterion_1() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(101);
    bool pass = true;
    double worst = 0.0;
    for (const SpectrumTrial& trial : kSpectrumGrid) {
        ComplexIndex cx = ComplexIndex::full_sequence(trial.m, trial.max_n);
        WeightFunction w =
            independent_sequence_weights(cx, IndependentModel::sequence(random_probability(trial.m, rng)));
        for (int n = 0; n <= trial.max_n; ++n) {
            SpectrumReport report = spectrum(laplacian(cx, w, n));
            std::vector<long long> census(static_cast<std::size_t>(n) + 3, 0);
            for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
                double lambda = report.eigenvalues(i);
                long long k = std::llround(lambda);
                double deviation = std::abs(lambda - static_cast<double>(k));
                worst = std::max(worst, deviation);
                if (k < 1 || k > n + 2 || deviation > 1e-9) {
                    pass = false;
                } else {
                    census[static_cast<std::size_t>(k)] += 1;
                }
            }
            for (const SpectrumLine& line : predicted_spectrum(n, trial.m)) {
                if (census[static_cast<std::size_t>(line.eigenvalue)] != line.multiplicity) {
                    pass = false;
                }
            }
        }
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    pass = pass && seconds < 30.0;
    report(1, pass, "integer spectra with binomial multiplicities",
           "worst integer deviation " + measured(worst) + ", " + measured(seconds) + " s");
}

// Criterion 2: explicit eigenvectors at (m=3, n=2), residuals and rank.
void criterion_2() {
    std::mt19937 rng(102);
    ComplexIndex cx = ComplexIndex::full_sequence(3, 2);
    IndependentModel model = IndependentModel::sequence(random_probability(3, rng));
    WeightFunction w = independent_sequence_weights(cx, model);
    EigenbasisGenerator gen(cx, model);
    LaplacianBundle bundle = laplacian(cx, w, 2);
    std::vector<LabeledEigenvector> basis = gen.basis(2);
    bool pass = basis.size() == 27;
    double worst = 0.0;
    Eigen::MatrixXd stacked(27, 27);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const LabeledEigenvector& lab = basis[k];
        Eigen::VectorXd residual = bundle.full * lab.coefficients - lab.eigenvalue * lab.coefficients;
        double rel = weighted_norm(bundle.w_here, residual) /
                     weighted_norm(bundle.w_here, lab.coefficients);
        worst = std::max(worst, rel);
        pass = pass && rel < 1e-10;
        stacked.col(static_cast<Eigen::Index>(k)) = lab.coefficients;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(stacked);
    pass = pass && lu.rank() == 27;
    report(2, pass, "labeled eigenvectors: residuals below 1e-10 and full rank 27",
           "worst residual " + measured(worst) + ", rank " + std::to_string(lu.rank()));
}

// Criterion 3: no harmonic space and least eigenvalue >= 1 on the whole grid.
void criterion_3() {
    std::mt19937 rng(103);
    bool pass = true;
    double least = 1e300;
    int betti_total = 0;
    for (const SpectrumTrial& trial : kSpectrumGrid) {
        ComplexIndex cx = ComplexIndex::full_sequence(trial.m, trial.max_n);
        WeightFunction w =
            independent_sequence_weights(cx, IndependentModel::sequence(random_probability(trial.m, rng)));
        for (int n = 0; n <= trial.max_n; ++n) {
            SpectrumReport report = spectrum(laplacian(cx, w, n));
            betti_total += report.betti;
            least = std::min(least, report.eigenvalues(0));
            pass = pass && report.betti == 0 && report.eigenvalues(0) >= 1.0 - 1e-9;
        }
    }
    report(3, pass, "independent sequence Laplacians have betti 0 and spectrum >= 1",
           "total betti " + std::to_string(betti_total) + ", least eigenvalue " + measured(least));
}

// Criterion 4: scaled identities on the full simplex, three weight routes.
void criterion_4() {
    std::mt19937 rng(104);
    std::uniform_real_distribution<double> positive(0.2, 1.5);
    std::uniform_real_distribution<double> inside(0.1, 0.9);
    bool pass = true;
    double worst = 0.0;
    for (int m : {2, 3, 4}) {
        ComplexIndex fs = ComplexIndex::full_simplex(m);

        Eigen::VectorXd v(m);
        for (int i = 0; i < m; ++i) v(i) = positive(rng);
        WeightFunction product = independent_simplicial_weights(fs, IndependentModel::simplicial(v));
        SimplicialTheoremOptions options;
        options.tol = 1e-11;
        options.expected_constant = v.sum();
        VerificationReport direct = verify_simplicial_theorem(fs, product, options);
        pass = pass && direct.pass;

        Eigen::VectorXd p(m);
        for (int i = 0; i < m; ++i) p(i) = inside(rng);
        Distribution subset = independent_subset_distribution(fs, p);

        WeightFunction moment = moment_map(fs, subset);
        SimplicialTheoremOptions moment_options;
        moment_options.tol = 1e-11;
        moment_options.expected_constant = p.sum();
        VerificationReport moment_report = verify_simplicial_theorem(fs, moment, moment_options);
        pass = pass && moment_report.pass;

        WeightFunction normalized = empty_normalized(fs, subset);
        double odds = 0.0;
        for (int i = 0; i < m; ++i) odds += p(i) / (1.0 - p(i));
        SimplicialTheoremOptions odds_options;
        odds_options.tol = 1e-11;
        odds_options.expected_constant = odds;
        VerificationReport odds_report = verify_simplicial_theorem(fs, normalized, odds_options);
        pass = pass && odds_report.pass;

        for (const VerificationReport* r : {&direct, &moment_report, &odds_report}) {
            for (const CheckResult& check : r->checks) {
                if (check.name == "scaled-identity") worst = std::max(worst, check.measured);
            }
        }
    }
    report(4, pass, "product, moment and empty-normalized weights all give alpha * identity",
           "worst identity deviation " + measured(worst));
}

// Criterion 5: perturbed non-product weights always fail, with a witness.
void criterion_5() {
    std::mt19937 rng(105);
    std::uniform_real_distribution<double> positive(0.2, 1.5);
    std::uniform_real_distribution<double> bump(0.01, 0.2);
    ComplexIndex fs = ComplexIndex::full_simplex(3);
    int false_passes = 0;
    int missing_witness = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd v(3);
        for (int i = 0; i < 3; ++i) v(i) = positive(rng);
        WeightFunction product = independent_simplicial_weights(fs, IndependentModel::simplicial(v));
        std::vector<Eigen::VectorXd> values;
        for (int n = fs.min_dim(); n <= fs.top_dim(); ++n) values.push_back(product.at(n));
        // pick a face of dimension >= 1 and move it by at least one percent
        int dim = 1 + static_cast<int>(rng() % 2);
        std::size_t index = rng() % fs.cell_count(dim);
        double factor = 1.0 + bump(rng) * (rng() % 2 ? 1.0 : -1.0);
        values[static_cast<std::size_t>(dim - fs.min_dim())](static_cast<Eigen::Index>(index)) *=
            factor;
        WeightFunction bent = raw_weights(fs, std::move(values));

        if (verify_simplicial_theorem(fs, bent).pass) ++false_passes;
        FactorizationResult fact = factorization_test(fs, bent);
        if (fact.independent || !fact.witness) ++missing_witness;
    }
    report(5, false_passes == 0 && missing_witness == 0,
           "50 perturbed weight functions all fail the identity with a witness",
           std::to_string(false_passes) + " false passes, " + std::to_string(missing_witness) +
               " missing witnesses");
}

// Criterion 6: closed forms match assembled operators entrywise.
void criterion_6() {
    std::mt19937 rng(106);
    bool pass = true;
    double worst = 0.0;
    auto track = [&](double deviation) {
        worst = std::max(worst, deviation);
        pass = pass && deviation <= 1e-12;
    };

    ComplexIndex cx2 = ComplexIndex::full_sequence(2, 2);
    ComplexIndex cx3 = ComplexIndex::full_sequence(3, 1);
    for (int trial = 0; trial < 20; ++trial) {
        WeightFunction w2 = random_weights(cx2, rng);
        for (int n = -1; n <= 2; ++n) {
            track((sequence_laplacian_direct(cx2, w2, n) - laplacian(cx2, w2, n).full)
                      .cwiseAbs()
                      .maxCoeff());
        }
        WeightFunction w3 = random_weights(cx3, rng);
        for (int n = -1; n <= 1; ++n) {
            track((sequence_laplacian_direct(cx3, w3, n) - laplacian(cx3, w3, n).full)
                      .cwiseAbs()
                      .maxCoeff());
        }
        IndependentModel model2 = IndependentModel::sequence(random_probability(2, rng));
        WeightFunction iw2 = independent_sequence_weights(cx2, model2);
        IndependentModel model3 = IndependentModel::sequence(random_probability(3, rng));
        WeightFunction iw3 = independent_sequence_weights(cx3, model3);
        for (int n = 0; n <= 2; ++n) {
            track((independent_sequence_laplacian_direct(cx2, model2, n) -
                   laplacian(cx2, iw2, n).full)
                      .cwiseAbs()
                      .maxCoeff());
        }
        for (int n = 0; n <= 1; ++n) {
            track((independent_sequence_laplacian_direct(cx3, model3, n) -
                   laplacian(cx3, iw3, n).full)
                      .cwiseAbs()
                      .maxCoeff());
        }
    }

    ComplexIndex fs = ComplexIndex::full_simplex(4);
    for (int trial = 0; trial < 20; ++trial) {
        WeightFunction w = random_weights(fs, rng);
        for (int n = fs.min_dim(); n <= fs.top_dim(); ++n) {
            track((simplicial_laplacian_direct(fs, w, n) - laplacian(fs, w, n).full)
                      .cwiseAbs()
                      .maxCoeff());
        }
    }
    report(6, pass, "entry formulas reproduce the assembled Laplacians to 1e-12",
           "worst deviation " + measured(worst));
}

// Criterion 7: delta-delta = 0 exactly; spectra split and transport.
void criterion_7() {
    std::mt19937 rng(107);
    bool pass = true;

    std::vector<ComplexIndex> complexes;
    complexes.push_back(ComplexIndex::full_sequence(2, 2));
    complexes.push_back(ComplexIndex::full_sequence(3, 1));
    complexes.push_back(ComplexIndex::full_simplex(4));
    complexes.push_back(ComplexIndex::simplicial(3, {{0, 1}, {1, 2}, {0, 2}}));
    for (const ComplexIndex& cx : complexes) {
        for (int n = cx.min_dim() + 1; n < cx.top_dim(); ++n) {
            SparseInt product = coboundary_matrix(cx, n) * coboundary_matrix(cx, n - 1);
            for (int k = 0; k < product.outerSize(); ++k) {
                for (SparseInt::InnerIterator it(product, k); it; ++it) {
                    if (it.value() != 0) pass = false;
                }
            }
        }
    }

    double worst = 0.0;
    std::vector<ComplexIndex> spectral;
    spectral.push_back(ComplexIndex::full_sequence(2, 2));
    spectral.push_back(ComplexIndex::simplicial(3, {{0, 1}, {1, 2}, {0, 2}}));
    for (const ComplexIndex& cx : spectral) {
        WeightFunction w = random_weights(cx, rng);
        int high = cx.kind() == ComplexKind::FullSequence ? cx.top_dim() - 1 : cx.top_dim();
        for (int n = cx.min_dim(); n <= high; ++n) {
            LaplacianBundle bundle = laplacian(cx, w, n);
            std::vector<double> up = positive_spectrum(symmetrized_up(bundle));
            std::vector<double> down = positive_spectrum(symmetrized_down(bundle));
            std::vector<double> merged = up;
            merged.insert(merged.end(), down.begin(), down.end());
            pass = same_multiset(positive_spectrum(bundle.symmetrized), merged, 1e-9, &worst) && pass;
            if (n + 1 <= high) {
                std::vector<double> next_down =
                    positive_spectrum(symmetrized_down(laplacian(cx, w, n + 1)));
                pass = same_multiset(up, next_down, 1e-9, &worst) && pass;
            }
        }
    }
    report(7, pass, "coboundaries square to zero; spectra split and transport across levels",
           "worst spectral deviation " + measured(worst));
}

// Criterion 8: Hodge decomposition invariants plus the triangle kernel.
void criterion_8() {
    std::mt19937 rng(108);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    bool pass = true;
    double worst = 0.0;

    ComplexIndex seq = ComplexIndex::full_sequence(2, 2);
    ComplexIndex tri = ComplexIndex::simplicial(3, {{0, 1}, {1, 2}, {0, 2}});
    WeightFunction seq_w = random_weights(seq, rng);
    WeightFunction tri_w = random_weights(tri, rng);
    struct Target {
        const ComplexIndex* cx;
        const WeightFunction* w;
        int dim;
    };
    const Target targets[3] = {{&seq, &seq_w, 0}, {&seq, &seq_w, 1}, {&tri, &tri_w, 1}};
    int trials_done = 0;
    for (const Target& target : targets) {
        LaplacianBundle bundle = laplacian(*target.cx, *target.w, target.dim);
        for (int t = 0; t < 34 && trials_done < 100; ++t, ++trials_done) {
            Eigen::VectorXd x(bundle.full.rows());
            for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = uniform(rng);
            HodgeSplit split = hodge_decompose(bundle, x);
            double scale = std::max(1.0, weighted_norm(bundle.w_here, x));
            double residual =
                weighted_norm(bundle.w_here, x - split.harmonic - split.exact - split.coexact) /
                scale;
            worst = std::max(worst, residual);
            const Eigen::VectorXd* parts[3] = {&split.harmonic, &split.exact, &split.coexact};
            for (int a = 0; a < 3; ++a) {
                for (int b = a + 1; b < 3; ++b) {
                    double overlap =
                        std::abs(weighted_inner(bundle.w_here, *parts[a], *parts[b])) /
                        std::max(1.0, weighted_norm(bundle.w_here, *parts[a]) *
                                          weighted_norm(bundle.w_here, *parts[b]));
                    worst = std::max(worst, overlap);
                }
            }
        }
    }
    pass = pass && worst <= 1e-10 && trials_done == 100;

    // unit-weight triangle boundary: one harmonic dimension holding the cycle
    std::vector<Eigen::VectorXd> unit;
    for (int n = tri.min_dim(); n <= tri.top_dim(); ++n) {
        unit.push_back(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(tri.cell_count(n))));
    }
    WeightFunction ones = raw_weights(tri, std::move(unit));
    LaplacianBundle bundle = laplacian(tri, ones, 1);
    SpectrumReport spec = spectrum(bundle);
    pass = pass && spec.betti == 1;
    Eigen::VectorXd cycle(3);
    cycle << 1.0, -1.0, 1.0; // edges {0,1}, {0,2}, {1,2}
    HodgeSplit split = hodge_decompose(bundle, cycle);
    double cycle_residual = (split.harmonic - cycle).cwiseAbs().maxCoeff();
    pass = pass && cycle_residual <= 1e-10;
    report(8, pass, "random cochains decompose orthogonally; the triangle cycle is harmonic",
           "worst invariant " + measured(worst) + ", betti " + std::to_string(spec.betti) +
               ", cycle residual " + measured(cycle_residual));
}

// Criterion 9: weight scaling cancels out of every Laplacian.
void criterion_9() {
    std::mt19937 rng(109);
    bool pass = true;
    double worst = 0.0;
    ComplexIndex seq = ComplexIndex::full_sequence(3, 1);
    ComplexIndex tri = ComplexIndex::simplicial(3, {{0, 1}, {1, 2}, {0, 2}});
    for (const ComplexIndex* cx : {&seq, &tri}) {
        WeightFunction w = random_weights(*cx, rng);
        int high = cx->kind() == ComplexKind::FullSequence ? cx->top_dim() - 1 : cx->top_dim();
        for (int n = cx->min_dim(); n <= high; ++n) {
            Eigen::MatrixXd base = laplacian(*cx, w, n).full;
            for (double alpha : {1e-3, 1.0, 1e3}) {
                WeightFunction scaled = scaled_weights(*cx, w, alpha);
                double deviation =
                    (laplacian(*cx, scaled, n).full - base).cwiseAbs().maxCoeff();
                worst = std::max(worst, deviation);
                pass = pass && deviation <= 1e-13;
            }
        }
    }
    report(9, pass, "rescaled weights leave every Laplacian unchanged to 1e-13",
           "worst deviation " + measured(worst));
}

// Criterion 10: the classical graph Laplacian is the dimension-0 up part.
void criterion_10() {
    std::mt19937 rng(110);
    std::uniform_int_distribution<int> coin(0, 1);
    bool pass = true;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        int m = 3 + static_cast<int>(rng() % 6);
        std::vector<std::vector<VertexId>> facets;
        for (VertexId v = 0; v < m; ++v) facets.push_back({v});
        for (VertexId i = 0; i < m; ++i) {
            for (VertexId j = i + 1; j < m; ++j) {
                if (coin(rng)) facets.push_back({i, j});
            }
        }
        ComplexIndex graph = ComplexIndex::simplicial(m, facets);
        WeightFunction w = random_weights(graph, rng);
        double deviation =
            (combinatorial_laplacian(graph, w) - laplacian(graph, w, 0).up).cwiseAbs().maxCoeff();
        worst = std::max(worst, deviation);
        pass = pass && deviation <= 1e-12;
    }
    report(10, pass, "ten random weighted graphs match the up Laplacian at dimension 0",
           "worst deviation " + measured(worst));
}

} // namespace

int main() {
    try {
        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7();
        criterion_8();
        criterion_9();
        criterion_10();
    } catch (const std::exception& e) {
        std::cout << "FAIL unexpected exception: " << e.what() << std::endl;
        return 1;
    }
    std::cout << "acceptance: " << (10 - failures) << "/10 criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
