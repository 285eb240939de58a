#pragma once

#include "braidflow/brooks.hpp"
#include "braidflow/estimate.hpp"
#include "braidflow/free_word.hpp"

#include "json.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace braidflow {

// rows: quasi-morphisms, columns: group elements, entries phi_i(g_j)
struct EvalMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> entries;

    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? 0 : entries.front().size(); }
};

// Output of the dual-basis induction: coefficients and column choices
// with (C * M) restricted to the chosen columns equal to the identity.
struct DualBasis {
    std::vector<std::vector<double>> coefficients; // rank x rows
    std::vector<int> columns;                      // rank chosen column indices
    int rank = 0;
    double residual = 0.0; // max |(C*M)|chosen - I|
};

// Column-pivoted elimination; achievable rank is reported when the rows
// do not span k dimensions on the given columns. With
// prefer_early_columns the pivot is the first column exceeding the
// tolerance (natural for exact integer evaluations where early columns
// are the cheapest group elements); otherwise the largest magnitude wins.
DualBasis dual_basis(const EvalMatrix& m, double tol = 1e-9,
                     bool prefer_early_columns = false);

struct DefectProbeOptions {
    long pairs = 2000;
    int max_length = 200;
    std::uint64_t seed = 1;
};

// max |q(gh) - q(g) - q(h)| over sampled pairs: a lower bound for the
// defect of q
double defect_probe(const std::function<double(const FreeWord&)>& q,
                    const DefectProbeOptions& opts);

struct Certificate {
    std::string kind;
    bool passed = false;
    std::uint64_t inputs_digest = 0;
    nlohmann::json content;
    std::vector<std::string> caveats;

    nlohmann::json to_json() const;
    std::string render_text() const;
};

// certified lower bound for the autonomous norm:
// max_i (|mean_i| - ci_i) / defect_i, conditional on the defect bounds
Certificate aut_lower_bound(const std::vector<Estimate>& phi_values,
                            const std::vector<double>& defect_bounds);

// Calabi based lower bound for the restricted norm: calabi / r
Certificate restricted_lower_bound(double calabi_value, double calabi_error, double r);

struct ZkCertificateInputs {
    int k = 0;
    std::vector<int> d;                  // exponent vector
    std::vector<Estimate> estimates;     // normalized dual estimates on f_d
    std::vector<double> defect_bounds;   // per dual quasi-morphism
    std::vector<int> factor_counts;      // autonomous factors per generator flow
    double tolerance = 0.1;
};

// checks |estimate_i - d_i| <= ci_i + tolerance for all i and derives the
// two-sided norm bounds for the embedded lattice element
Certificate zk_certificate(const ZkCertificateInputs& in);

struct IndependenceInputs {
    std::vector<std::vector<Estimate>> matrix; // N x N estimates
    std::array<double, 3> areas{};             // productive region areas
    bool full_area_regime = false;
};

// passes when the estimate matrix is nonsingular beyond noise (minimal
// singular value > 10x the propagated CI norm) and the first diagonal
// entry matches the 6 a1 a2 a3 prediction within CI
Certificate independence_certificate(const IndependenceInputs& in);

// singular values of a small dense matrix (descending)
std::vector<double> singular_values(const std::vector<std::vector<double>>& m);

// FNV-1a digest of a canonical JSON dump, used to tie certificates and
// results to their inputs
std::uint64_t digest_json(const nlohmann::json& j);

} // namespace braidflow
