#include "braidflow/zk_system.hpp"

#include "braidflow/qm_toolkit.hpp"

#include <cmath>
#include <stdexcept>

namespace braidflow {

namespace {

struct Placement {
    std::vector<Vec2> mains;
    double main_radius;
    std::vector<Vec2> correctors;
    double corrector_radius;
};

// main discs sit on the horizontal diameter, correctors off-axis;
// all 2k discs pairwise disjoint and inside the unit disc
Placement placement_for(int k) {
    switch (k) {
        case 1:
            return {{{0.0, 0.0}}, 0.45, {{0.0, -0.75}}, 0.12};
        case 2:
            return {{{-0.52, 0.0}, {0.52, 0.0}}, 0.42, {{0.0, -0.75}, {0.0, 0.75}}, 0.12};
        case 3:
            return {{{-0.64, 0.0}, {0.0, 0.0}, {0.64, 0.0}},
                    0.26,
                    {{-0.32, -0.74}, {0.32, -0.74}, {0.0, 0.74}},
                    0.10};
        case 4:
            return {{{-0.72, 0.0}, {-0.24, 0.0}, {0.24, 0.0}, {0.72, 0.0}},
                    0.19,
                    {{-0.48, -0.72}, {0.48, -0.72}, {-0.48, 0.72}, {0.48, 0.72}},
                    0.08};
        default:
            throw std::invalid_argument(
                "build_zk_system: disjoint placement is implemented for k <= 4");
    }
}

void check_placement(const Placement& p) {
    std::vector<Disc> discs;
    for (const auto& c : p.mains) discs.push_back({c, p.main_radius});
    for (const auto& c : p.correctors) discs.push_back({c, p.corrector_radius});
    for (std::size_t i = 0; i < discs.size(); ++i) {
        if (!discs[i].inside_unit_disc())
            throw std::invalid_argument("zk placement leaves the unit disc");
        for (std::size_t j = i + 1; j < discs.size(); ++j)
            if (!discs[i].disjoint_from(discs[j]))
                throw std::invalid_argument("zk placement discs overlap");
    }
}

// Brooks pattern pool used for dual extraction; the first two patterns
// are exact duals of xy and xY already
std::vector<BrooksQM> pattern_pool(int k) {
    static const char* names[] = {"xy", "xY", "xxy", "xyy", "xxY", "xYY"};
    if (k > 6) throw std::invalid_argument("pattern pool supports k <= 6");
    std::vector<BrooksQM> out;
    for (int i = 0; i < std::max(k, 2); ++i) out.push_back(BrooksQM::from_string(names[i]));
    return out;
}

} // namespace

std::vector<FreeWord> candidate_words(int max_length) {
    std::vector<FreeWord> out;
    std::vector<std::vector<std::int8_t>> frontier{{}};
    static const std::int8_t alphabet[4] = {+1, -1, +2, -2};
    for (int len = 1; len <= max_length; ++len) {
        std::vector<std::vector<std::int8_t>> next;
        for (const auto& word : frontier) {
            for (std::int8_t l : alphabet) {
                if (!word.empty() && word.back() == -l) continue; // stay reduced
                auto grown = word;
                grown.push_back(l);
                next.push_back(grown);
            }
        }
        for (const auto& word : next) out.emplace_back(word);
        frontier = std::move(next);
    }
    return out;
}

FlowSpec ZkSystem::compose(const std::vector<int>& d) const {
    if (static_cast<int>(d.size()) != k)
        throw std::invalid_argument("ZkSystem::compose: exponent vector size mismatch");
    FlowSpec out;
    for (int i = 0; i < k; ++i) {
        if (d[i] == 0) continue;
        out.append(flows[i].power(d[i]));
    }
    if (out.segments.empty()) {
        // identity element: realize as a zero field so downstream code has a spec
        out = FlowSpec::single(std::make_shared<RadialBumpField>(Vec2{0.0, 0.0}, 0.1, 0.0));
    }
    return out;
}

ZkSystem build_zk_system(int k) {
    if (k < 1) throw std::invalid_argument("build_zk_system: k must be >= 1");
    const Placement placement = placement_for(k);
    check_placement(placement);

    // exact dual basis on integer braid evaluations over candidate words
    const auto pool = pattern_pool(k);
    const auto candidates = candidate_words(6);
    EvalMatrix m;
    for (const auto& q : pool) m.row_labels.push_back(q.pattern().str());
    m.entries.assign(pool.size(), {});
    m.col_labels.reserve(candidates.size());
    for (const auto& w : candidates) m.col_labels.push_back(w.str());
    for (std::size_t r = 0; r < pool.size(); ++r) {
        m.entries[r].reserve(candidates.size());
        for (const auto& w : candidates)
            m.entries[r].push_back(static_cast<double>(brooks_hom(pool[r], w)));
    }
    const DualBasis basis = dual_basis(m, 1e-9);
    if (basis.rank < k)
        throw std::runtime_error("build_zk_system: dual basis rank deficient for requested k");

    ZkSystem sys;
    sys.k = k;
    const TwistLayout standard = TwistLayout::standard();
    for (int i = 0; i < k; ++i) {
        BraidQM dual;
        for (std::size_t r = 0; r < pool.size(); ++r) {
            const double c = basis.coefficients[i][r];
            if (c != 0.0) dual.add_term(c, pool[r]);
        }
        sys.duals.push_back(std::move(dual));
        sys.betas.push_back(candidates[basis.columns[i]]);
    }

    for (int i = 0; i < k; ++i) {
        const TwistLayout layout =
            standard.scaled_into(placement.mains[i], placement.main_radius);
        const FlowSpec word_flow = realize_word(layout, sys.betas[i]);

        // corrector: radial bump in the companion disc matching the word's
        // Calabi invariant, run backwards
        const double word_calabi = calabi(word_flow);
        const Disc corr{placement.correctors[i], placement.corrector_radius};
        const double margin = 0.9; // keep the bump strictly inside the disc
        const double rho = corr.radius * margin;
        const double amplitude = 4.0 * word_calabi / (M_PI * rho * rho);
        FlowSpec corrector = FlowSpec::single(
            std::make_shared<RadialBumpField>(corr.center, rho, amplitude));

        FlowSpec f = word_flow * corrector.inverse();
        sys.flows.push_back(std::move(f));
        sys.layouts.push_back(layout);
        sys.corrector_discs.push_back(corr);
        sys.factor_counts.push_back(static_cast<int>(sys.betas[i].size()) + 1);
    }
    sys.kappa_prediction = sys.layouts.front().diagonal_prediction();
    return sys;
}

} // namespace braidflow
