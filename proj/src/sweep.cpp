#include "scpoly/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "scpoly/errors.hpp"
#include "scpoly/random.hpp"

namespace scpoly {

namespace {

struct SampleOutcome {
    enum class Kind { simple, nonsimple, failure } kind = Kind::failure;
    NonsimpleInstance instance;
};

SampleOutcome run_sample(const SweepConfig& config, std::uint64_t index) {
    SampleOutcome out;
    ChartPoint pt = sweep_sample(config, index);
    try {
        const auto [z, alpha] = moduli_unchart(pt);
        const LabelledPolygon poly = forward(z, alpha, config.tol);
        if (is_simple(poly)) {
            out.kind = SampleOutcome::Kind::simple;
            return out;
        }
        out.kind = SampleOutcome::Kind::nonsimple;
        out.instance.index = index;
        out.instance.witness =
            find_multiwound_witness(poly, config.budget, derive_subseed(config.seed ^ 0x77, index));
        if (out.instance.witness) out.instance.winding = winding_number(poly, *out.instance.witness);
        out.instance.chart = std::move(pt);
    } catch (const Error&) {
        out.kind = SampleOutcome::Kind::failure;
    }
    return out;
}

}  // namespace

void SweepConfig::validate() const {
    if (n < 3) fail(ErrorKind::InvalidArgument, "sweep needs n >= 3");
    if (samples == 0) fail(ErrorKind::InvalidArgument, "sweep needs at least one sample");
    if (!(chart_box > 0.0) || !std::isfinite(chart_box)) {
        fail(ErrorKind::InvalidArgument, "chart_box must be positive and finite");
    }
    if (budget < 1) fail(ErrorKind::InvalidArgument, "witness budget must be positive");
    if (!(tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (threads == 0) fail(ErrorKind::InvalidArgument, "threads must be positive");
}

ChartPoint sweep_sample(const SweepConfig& config, std::uint64_t index) {
    SplitMix64 rng(derive_subseed(config.seed, index));
    ChartPoint pt;
    pt.n = config.n;
    for (int k = 0; k < config.n - 3; ++k) pt.z.push_back(rng.uniform(-config.chart_box, config.chart_box));
    for (int k = 0; k < config.n - 1; ++k) pt.a.push_back(rng.uniform(-config.chart_box, config.chart_box));
    return pt;
}

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    std::vector<SampleOutcome> outcomes(config.samples);
    const auto workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(config.threads, config.samples));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < config.samples; ++i) outcomes[i] = run_sample(config, i);
    } else {
        std::vector<std::jthread> pool;
        for (std::uint64_t t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                for (std::uint64_t i = t; i < config.samples; i += workers) outcomes[i] = run_sample(config, i);
            });
        }
    }

    SweepResult result;
    for (auto& o : outcomes) {
        ++result.tested;
        switch (o.kind) {
            case SampleOutcome::Kind::simple: ++result.simple_count; break;
            case SampleOutcome::Kind::nonsimple: result.nonsimple_instances.push_back(std::move(o.instance)); break;
            case SampleOutcome::Kind::failure: ++result.failures; break;
        }
    }
    return result;
}

}  // namespace scpoly
