#include "braidflow/qm_toolkit.hpp"

#include "braidflow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace braidflow {

namespace {

FreeWord random_reduced_word(Rng& rng, int length) {
    static const std::int8_t alphabet[4] = {+1, -1, +2, -2};
    FreeWord w;
    for (int i = 0; i < length; ++i) w.push(alphabet[rng.uniform_index(4)]);
    return w;
}

} // namespace

std::uint64_t digest_json(const nlohmann::json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

DualBasis dual_basis(const EvalMatrix& m, double tol, bool prefer_early_columns) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) throw std::invalid_argument("dual_basis: empty matrix");

    // working copy of M and the row-operation accumulator C (starts as I)
    std::vector<std::vector<double>> work = m.entries;
    std::vector<std::vector<double>> coeff(rows, std::vector<double>(rows, 0.0));
    for (std::size_t i = 0; i < rows; ++i) coeff[i][i] = 1.0;

    std::vector<int> chosen;
    std::vector<char> col_used(cols, 0);

    for (std::size_t step = 0; step < rows; ++step) {
        double best = tol;
        std::size_t pr = rows, pc = cols;
        if (prefer_early_columns) {
            // first unused column carrying any pivot above tolerance
            for (std::size_t c = 0; c < cols && pr == rows; ++c) {
                if (col_used[c]) continue;
                for (std::size_t r = step; r < rows; ++r) {
                    if (std::abs(work[r][c]) > best) {
                        best = std::abs(work[r][c]);
                        pr = r;
                        pc = c;
                    }
                }
                if (pr != rows) break;
            }
        } else {
            // largest magnitude entry over remaining rows x unused columns
            for (std::size_t r = step; r < rows; ++r) {
                for (std::size_t c = 0; c < cols; ++c) {
                    if (col_used[c]) continue;
                    if (std::abs(work[r][c]) > best) {
                        best = std::abs(work[r][c]);
                        pr = r;
                        pc = c;
                    }
                }
            }
        }
        if (pr == rows) break; // rank exhausted
        std::swap(work[step], work[pr]);
        std::swap(coeff[step], coeff[pr]);
        col_used[pc] = 1;
        chosen.push_back(static_cast<int>(pc));

        const double pivot = work[step][pc];
        for (auto& v : work[step]) v /= pivot;
        for (auto& v : coeff[step]) v /= pivot;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == step) continue;
            const double factor = work[r][pc];
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c < cols; ++c) work[r][c] -= factor * work[step][c];
            for (std::size_t c = 0; c < rows; ++c) coeff[r][c] -= factor * coeff[step][c];
        }
    }

    DualBasis out;
    out.rank = static_cast<int>(chosen.size());
    out.columns = chosen;
    out.coefficients.assign(coeff.begin(), coeff.begin() + out.rank);

    // self-verification: (C*M) on the chosen columns must be the identity
    double residual = 0.0;
    for (int i = 0; i < out.rank; ++i) {
        for (int j = 0; j < out.rank; ++j) {
            double v = 0.0;
            for (std::size_t r = 0; r < rows; ++r)
                v += out.coefficients[i][r] * m.entries[r][chosen[j]];
            residual = std::max(residual, std::abs(v - (i == j ? 1.0 : 0.0)));
        }
    }
    out.residual = residual;
    if (out.rank > 0 && residual > std::max(tol, 1e-9) * 100.0)
        throw std::runtime_error("dual_basis self-verification failed");
    return out;
}

double defect_probe(const std::function<double(const FreeWord&)>& q,
                    const DefectProbeOptions& opts) {
    double worst = 0.0;
    for (long i = 0; i < opts.pairs; ++i) {
        Rng rng(Rng::derive(opts.seed, static_cast<std::uint64_t>(i)));
        const int lg = 1 + static_cast<int>(rng.uniform_index(opts.max_length));
        const int lh = 1 + static_cast<int>(rng.uniform_index(opts.max_length));
        const FreeWord g = random_reduced_word(rng, lg);
        const FreeWord h = random_reduced_word(rng, lh);
        worst = std::max(worst, std::abs(q(g * h) - q(g) - q(h)));
    }
    return worst;
}

nlohmann::json Certificate::to_json() const {
    return {{"kind", kind},
            {"passed", passed},
            {"inputs_digest", inputs_digest},
            {"content", content},
            {"caveats", caveats}};
}

std::string Certificate::render_text() const {
    std::ostringstream os;
    os << "certificate " << kind << ": " << (passed ? "PASS" : "FAIL") << "\n";
    os << "  inputs digest: " << std::hex << inputs_digest << std::dec << "\n";
    os << "  content: " << content.dump() << "\n";
    for (const auto& c : caveats) os << "  caveat: " << c << "\n";
    return os.str();
}

Certificate aut_lower_bound(const std::vector<Estimate>& phi_values,
                            const std::vector<double>& defect_bounds) {
    if (phi_values.size() != defect_bounds.size() || phi_values.empty())
        throw std::invalid_argument("aut_lower_bound: need matching non-empty inputs");
    nlohmann::json inputs = nlohmann::json::array();
    double bound = 0.0;
    int best = -1;
    for (std::size_t i = 0; i < phi_values.size(); ++i) {
        if (defect_bounds[i] <= 0.0)
            throw std::invalid_argument("aut_lower_bound: defect bounds must be positive");
        inputs.push_back({{"estimate", phi_values[i].to_json()}, {"defect", defect_bounds[i]}});
        const double b =
            (std::abs(phi_values[i].mean) - phi_values[i].half_width) / defect_bounds[i];
        if (b > bound) {
            bound = b;
            best = static_cast<int>(i);
        }
    }
    Certificate cert;
    cert.kind = "aut_lower_bound";
    cert.inputs_digest = digest_json(inputs);
    cert.passed = bound > 0.0;
    cert.content = {{"bound", std::max(0.0, bound)}, {"witness_index", best}};
    cert.caveats = {"conditional on empirically probed defect bounds"};
    return cert;
}

Certificate restricted_lower_bound(double calabi_value, double calabi_error, double r) {
    if (r <= 0.0) throw std::invalid_argument("restricted_lower_bound: r must be positive");
    const double bound = (std::abs(calabi_value) - std::abs(calabi_error)) / r;
    Certificate cert;
    cert.kind = "restricted_bound";
    cert.inputs_digest =
        digest_json({{"calabi", calabi_value}, {"error", calabi_error}, {"r", r}});
    cert.passed = true; // unconditional arithmetic bound
    cert.content = {{"bound", std::max(0.0, bound)},
                    {"calabi", calabi_value},
                    {"calabi_error", calabi_error},
                    {"r", r}};
    return cert;
}

Certificate zk_certificate(const ZkCertificateInputs& in) {
    const std::size_t k = static_cast<std::size_t>(in.k);
    if (in.d.size() != k || in.estimates.size() != k || in.defect_bounds.size() != k ||
        in.factor_counts.size() != k)
        throw std::invalid_argument("zk_certificate: inconsistent input sizes");

    nlohmann::json rows = nlohmann::json::array();
    bool delta_ok = true;
    for (std::size_t i = 0; i < k; ++i) {
        const double err = std::abs(in.estimates[i].mean - in.d[i]);
        const bool ok = err <= in.estimates[i].half_width + in.tolerance;
        delta_ok = delta_ok && ok;
        rows.push_back({{"target", in.d[i]},
                        {"estimate", in.estimates[i].to_json()},
                        {"abs_error", err},
                        {"ok", ok}});
    }

    double l1 = 0.0;
    for (int di : in.d) l1 += std::abs(di);
    double max_defect = 0.0;
    for (double df : in.defect_bounds) max_defect = std::max(max_defect, df);
    const double lower = max_defect > 0.0 ? l1 / (k * max_defect) : 0.0;

    double upper = 0.0;
    for (std::size_t i = 0; i < k; ++i) upper += std::abs(in.d[i]) * in.factor_counts[i];

    const bool bounds_ok = (l1 == 0.0) || (lower <= upper + 1e-12);

    Certificate cert;
    cert.kind = "zk_embedding";
    cert.inputs_digest = digest_json(
        {{"k", in.k}, {"d", in.d}, {"rows", rows}, {"defects", in.defect_bounds}});
    cert.passed = delta_ok && bounds_ok;
    cert.content = {{"rows", rows},
                    {"lower_bound", lower},
                    {"upper_bound", upper},
                    {"l1", l1},
                    {"tolerance", in.tolerance}};
    cert.caveats = {"lower bound conditional on empirically probed defect bounds",
                    "upper bound uses the construction's autonomous factor count"};
    return cert;
}

std::vector<double> singular_values(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("singular_values: square matrices only");
    if (n == 0) return {};

    // Jacobi eigenvalue iteration on M^T M (small n)
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r) a[i][j] += m[r][i] * m[r][j];

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                // A <- J^T A J with the (p,q) rotation annihilating a[p][q]
                const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[p][p] - a[q][q]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip + s * aiq;
                    a[i][q] = -s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api + s * aqi;
                    a[q][i] = -s * api + c * aqi;
                }
            }
        }
    }
    std::vector<double> sv(n);
    for (std::size_t i = 0; i < n; ++i) sv[i] = std::sqrt(std::max(0.0, a[i][i]));
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

Certificate independence_certificate(const IndependenceInputs& in) {
    const std::size_t n = in.matrix.size();
    if (n == 0) throw std::invalid_argument("independence_certificate: empty matrix");
    std::vector<std::vector<double>> values(n, std::vector<double>(n));
    double ci_frobenius2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (in.matrix[i].size() != n)
            throw std::invalid_argument("independence_certificate: square matrices only");
        for (std::size_t j = 0; j < n; ++j) {
            values[i][j] = in.matrix[i][j].mean;
            ci_frobenius2 += in.matrix[i][j].half_width * in.matrix[i][j].half_width;
        }
    }
    const double ci_norm = std::sqrt(ci_frobenius2);
    const auto sv = singular_values(values);
    const double sigma_min = sv.back();

    const double prediction = in.areas[0] > 0.0 ? 6.0 * in.areas[0] * in.areas[1] * in.areas[2]
                                                : 0.0;
    const double diag_err = std::abs(values[0][0] - prediction);
    const bool diag_ok = diag_err <= in.matrix[0][0].half_width;
    const bool nonsingular = sigma_min > 10.0 * ci_norm;

    Certificate cert;
    cert.kind = "independence";
    nlohmann::json mat = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(in.matrix[i][j].to_json());
        mat.push_back(row);
    }
    cert.inputs_digest = digest_json({{"matrix", mat}, {"areas", in.areas}});
    cert.passed = diag_ok && nonsingular;
    cert.content = {{"singular_values", sv},
                    {"min_singular", sigma_min},
                    {"ci_norm", ci_norm},
                    {"diagonal_prediction", prediction},
                    {"diagonal_error", diag_err},
                    {"areas", in.areas},
                    {"full_area_regime", in.full_area_regime},
                    {"matrix", mat}};
    if (!in.full_area_regime)
        cert.caveats.push_back(
            "layout below the full-area regime: off-diagonal suppression is only asymptotic");
    return cert;
}

} // namespace braidflow
