#pragma once

#include "braidflow/brooks.hpp"
#include "braidflow/estimate.hpp"
#include "braidflow/field.hpp"
#include "braidflow/flow.hpp"
#include "braidflow/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace braidflow {

enum class ExecPolicy { Serial, Parallel };

// per-sample quasi-morphism evaluation: Brooks combination on the
// extracted 3-braid, or the linking (winding) homomorphism for n = 2
class SampleQM {
public:
    static SampleQM brooks(BraidQM qm);
    static SampleQM linking();

    int n() const { return n_; }
    // value on one traced sample; for n = 2 bypasses braid extraction and
    // uses the pairwise winding number directly
    double eval(const FlowSpec& spec, const Configuration& x, const Configuration& z, int power,
                Engine engine, const TraceOptions& opts, Rng* rng) const;
    std::string describe() const;

private:
    int n_ = 3;
    std::optional<BraidQM> qm_;
};

struct EstimatorOptions {
    long samples = 10000;
    std::uint64_t seed = 1;
    Schedule schedule{};
    Engine engine = Engine::Exact;
    ExecPolicy exec = ExecPolicy::Parallel;
    TraceOptions trace{};
    std::optional<Configuration> basepoints; // defaults to diameter points
    double max_degenerate_fraction = 0.01;
    int max_attempts_per_sample = 64;
};

// raised when more than the configured fraction of samples stay degenerate
class EstimatorAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Monte Carlo average of the quasi-morphism over uniform configurations,
// scaled by vol(D^2)^n = pi^n: one point of the configuration-space
// integral for the given power of the flow.
Estimate phi_n(const FlowSpec& spec, const SampleQM& qm, const EstimatorOptions& opts,
               int power = 1);

struct HomogenizeResult {
    Estimate final;                              // largest-power estimate / p
    std::vector<std::pair<int, Estimate>> curve; // per-power phi(g^p)/p
};

// phi(g^p)/p along the schedule with a Cauchy convergence diagnostic on
// the last two points (flag "non_converged" when they disagree beyond CI)
HomogenizeResult phi_n_bar(const FlowSpec& spec, const SampleQM& qm,
                           const EstimatorOptions& opts);

struct CalabiRatioRow {
    Estimate phi2_bar;
    double calabi = 0.0;
    double ratio = 0.0;
};

struct CalabiRatioReport {
    std::vector<CalabiRatioRow> rows;
    bool constant = false;  // all ratios within the relative tolerance
    double max_rel_spread = 0.0;
};

// homogenized winding average over pairs versus the Calabi invariant;
// the ratio must not depend on the flow
CalabiRatioReport calabi_ratio(const std::vector<FlowSpec>& specs, const EstimatorOptions& opts,
                               double rel_tol = 0.05, double min_calabi = 1e-9);

struct VanishingRow {
    std::string label;
    std::string pattern;
    Estimate estimate;
    std::vector<std::pair<double, Estimate>> perturbed; // (delta, estimate)
};

struct VanishingReport {
    std::vector<VanishingRow> rows;
};

// homogenized averages for autonomous fields (expected zero for
// Morse-type Hamiltonians) with optional perturbation columns
VanishingReport vanishing_report(const std::vector<std::pair<std::string, FieldPtr>>& fields,
                                 const std::vector<BrooksQM>& patterns,
                                 const std::vector<double>& perturbation_deltas,
                                 const FieldPtr& perturbation_bump,
                                 const EstimatorOptions& opts);

} // namespace braidflow
