#pragma once

#include "braidflow/brooks.hpp"
#include "braidflow/flow.hpp"
#include "braidflow/free_word.hpp"
#include "braidflow/twist_system.hpp"

#include <vector>

namespace braidflow {

// k commuting flows with pairwise disjoint supports, each a twist-word
// realization of a braid beta_i paired with an oppositely-signed radial
// corrector in a companion disc so that every flow has Calabi zero, plus
// the exact dual quasi-morphisms with qm(q_i, beta_j) = delta_ij.
struct ZkSystem {
    int k = 0;
    std::vector<FlowSpec> flows;
    std::vector<BraidQM> duals;
    std::vector<FreeWord> betas;
    std::vector<TwistLayout> layouts;   // scaled twist layouts, one per flow
    std::vector<Disc> corrector_discs;
    std::vector<int> factor_counts;     // autonomous factors per flow
    double kappa_prediction = 0.0;      // 6 a1 a2 a3 of the scaled layout

    // f_1^{d_1} o ... o f_k^{d_k}; zero entries are skipped
    FlowSpec compose(const std::vector<int>& d) const;
};

// pool of Brooks patterns and candidate words used for the dual basis
std::vector<FreeWord> candidate_words(int max_length);

// exact dual pairs qm(q_i, beta_j) = delta_ij from integer braid
// evaluations over words in x = sigma_1^2, y = sigma_2^2
struct DualPairs {
    std::vector<BraidQM> duals;
    std::vector<FreeWord> betas;
};
DualPairs exact_dual_pairs(int k, int max_candidate_length = 6);

ZkSystem build_zk_system(int k);

} // namespace braidflow
