#include "braidflow/estimator.hpp"

#include "braidflow/flow_metrics.hpp"
#include "braidflow/sl2.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

namespace braidflow {

SampleQM SampleQM::brooks(BraidQM qm) {
    SampleQM out;
    out.n_ = 3;
    out.qm_ = std::move(qm);
    return out;
}

SampleQM SampleQM::linking() {
    SampleQM out;
    out.n_ = 2;
    return out;
}

double SampleQM::eval(const FlowSpec& spec, const Configuration& x, const Configuration& z,
                      int power, Engine engine, const TraceOptions& opts, Rng* rng) const {
    if (n_ == 2) {
        // the winding homomorphism on P_2 needs no generator bookkeeping
        TraceOptions local = opts;
        for (int refine = 0;; ++refine) {
            try {
                const StrandBundle b = make_loop(spec, x, z, power, engine, local);
                return static_cast<double>(pairwise_winding(b)[0][1]);
            } catch (const TraceCoarse&) {
                if (refine >= local.density_refinements)
                    throw TraceDegenerate("winding stayed under-resolved");
                local.samples_per_unit_time *= 2.0;
                local.leg_samples *= 2;
            }
        }
    }
    const BraidWord braid = trace_braid(spec, x, z, power, engine, opts, rng);
    return qm_->eval_braid(braid);
}

std::string SampleQM::describe() const {
    return n_ == 2 ? "linking" : qm_->describe();
}

namespace {

struct SampleStats {
    long degenerate_gave_up = 0;
    long resamples = 0;
};

Configuration draw_configuration(Rng& rng, int n, double separation_floor) {
    for (;;) {
        Configuration x;
        x.points.reserve(n);
        for (int i = 0; i < n; ++i) x.points.push_back(rng.point_in_unit_disc());
        if (x.min_separation() >= separation_floor) return x;
    }
}

std::vector<double> sample_values(const FlowSpec& spec, const SampleQM& qm,
                                  const EstimatorOptions& opts, int power,
                                  SampleStats& stats) {
    const int n = qm.n();
    const Configuration z = opts.basepoints ? *opts.basepoints : default_basepoints(n);
    z.validate(opts.trace.separation_floor);

    std::vector<double> values(static_cast<std::size_t>(opts.samples), 0.0);
    std::atomic<long> gave_up{0};
    std::atomic<long> resamples{0};

    const bool parallel = opts.exec == ExecPolicy::Parallel;
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
    for (long i = 0; i < opts.samples; ++i) {
        Rng rng(Rng::derive(opts.seed, static_cast<std::uint64_t>(i)));
        bool done = false;
        for (int attempt = 0; attempt < opts.max_attempts_per_sample && !done; ++attempt) {
            const Configuration x = draw_configuration(rng, n, opts.trace.separation_floor);
            try {
                values[static_cast<std::size_t>(i)] =
                    qm.eval(spec, x, z, power, opts.engine, opts.trace, &rng);
                done = true;
            } catch (const TraceDegenerate&) {
                resamples.fetch_add(1, std::memory_order_relaxed);
            }
        }
        if (!done) gave_up.fetch_add(1, std::memory_order_relaxed);
    }

    stats.degenerate_gave_up = gave_up.load();
    stats.resamples = resamples.load();
    return values;
}

Estimate reduce_values(const std::vector<double>& values, const EstimatorOptions& opts, int n,
                       const SampleStats& stats) {
    const double count = static_cast<double>(values.size());
    const double scale = std::pow(M_PI, n); // vol(D^2)^n
    const double mean_raw = pairwise_sum_fixed_order(values) / count;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean_raw;
        sq[i] = d * d;
    }
    const double var = values.size() > 1 ? pairwise_sum_fixed_order(sq) / (count - 1.0) : 0.0;

    Estimate est;
    est.mean = scale * mean_raw;
    est.half_width = scale * 1.96 * std::sqrt(var / count);
    est.samples = static_cast<long>(values.size());
    est.seed = opts.seed;
    if (stats.resamples > 0) est.flags.push_back("resampled:" + std::to_string(stats.resamples));
    return est;
}

} // namespace

Estimate phi_n(const FlowSpec& spec, const SampleQM& qm, const EstimatorOptions& opts,
               int power) {
    if (opts.samples < 1) throw std::invalid_argument("phi_n needs at least one sample");
    SampleStats stats;
    const std::vector<double> values = sample_values(spec, qm, opts, power, stats);
    if (stats.degenerate_gave_up >
        opts.max_degenerate_fraction * static_cast<double>(opts.samples)) {
        std::ostringstream os;
        os << "degenerate sampling: " << stats.degenerate_gave_up << " of " << opts.samples
           << " samples failed after " << opts.max_attempts_per_sample
           << " attempts (separation floor " << opts.trace.separation_floor << ")";
        throw EstimatorAbort(os.str());
    }
    return reduce_values(values, opts, qm.n(), stats);
}

void Schedule::validate() const {
    if (powers.empty()) throw std::invalid_argument("schedule must not be empty");
    int last = 0;
    for (int p : powers) {
        if (p <= last) throw std::invalid_argument("schedule powers must be strictly increasing");
        last = p;
    }
}

HomogenizeResult phi_n_bar(const FlowSpec& spec, const SampleQM& qm,
                           const EstimatorOptions& opts) {
    opts.schedule.validate();
    HomogenizeResult out;
    for (int p : opts.schedule.powers) {
        Estimate est = phi_n(spec, qm, opts, p);
        est.mean /= p;
        est.half_width /= p;
        est.p_schedule = opts.schedule.powers;
        out.curve.emplace_back(p, est);
    }
    out.final = out.curve.back().second;
    if (out.curve.size() >= 2) {
        const Estimate& prev = out.curve[out.curve.size() - 2].second;
        const double dev = std::abs(out.final.mean - prev.mean);
        if (dev > out.final.half_width + prev.half_width)
            out.final.flags.push_back("non_converged");
    }
    return out;
}

CalabiRatioReport calabi_ratio(const std::vector<FlowSpec>& specs, const EstimatorOptions& opts,
                               double rel_tol, double min_calabi) {
    CalabiRatioReport report;
    const SampleQM qm = SampleQM::linking();
    for (const auto& spec : specs) {
        CalabiRatioRow row;
        row.calabi = calabi(spec);
        if (std::abs(row.calabi) <= min_calabi)
            throw std::invalid_argument("calabi_ratio: flow with near-zero Calabi excluded");
        row.phi2_bar = phi_n_bar(spec, qm, opts).final; // common random numbers across specs
        row.ratio = row.phi2_bar.mean / row.calabi;
        report.rows.push_back(std::move(row));
    }
    double lo = report.rows.front().ratio, hi = lo;
    for (const auto& row : report.rows) {
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
    }
    const double mid = 0.5 * (lo + hi);
    report.max_rel_spread = mid != 0.0 ? (hi - lo) / std::abs(mid) : 0.0;
    report.constant = report.max_rel_spread <= rel_tol;
    return report;
}

VanishingReport vanishing_report(const std::vector<std::pair<std::string, FieldPtr>>& fields,
                                 const std::vector<BrooksQM>& patterns,
                                 const std::vector<double>& perturbation_deltas,
                                 const FieldPtr& perturbation_bump,
                                 const EstimatorOptions& opts) {
    VanishingReport report;
    for (const auto& [label, field] : fields) {
        for (const auto& pattern : patterns) {
            VanishingRow row;
            row.label = label;
            row.pattern = pattern.pattern().str();
            const SampleQM qm = SampleQM::brooks(BraidQM(1.0, pattern));
            row.estimate = phi_n_bar(FlowSpec::single(field), qm, opts).final;
            for (double delta : perturbation_deltas) {
                std::vector<FieldPtr> parts{field, scaled(perturbation_bump, delta)};
                FlowSpec perturbed = FlowSpec::single(std::make_shared<SumField>(parts));
                row.perturbed.emplace_back(delta, phi_n_bar(perturbed, qm, opts).final);
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

} // namespace braidflow
