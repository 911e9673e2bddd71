#include "meterdelta/sweep.hpp"

#include "meterdelta/error.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace meterdelta {

namespace {

struct SweepPlan {
	SweepResult result;
	std::vector<Strategy> strategies; // time-based first, then event grid
};

SweepPlan plan_sweep(const PowerTrace &trace, const std::vector<Segment> &segments, const SweepConfig &config,
                     std::string trace_id) {
	if (config.dt_list.empty())
		throw Error(ErrorCode::InvalidArgument, "dt list must be non-empty");
	if (segments.empty())
		throw Error(ErrorCode::InvalidArgument, "no segments to evaluate");
	for (Timestamp dt : config.dt_list)
		if (dt < 1)
			throw Error(ErrorCode::InvalidArgument, "dt values must be >= 1");

	SweepPlan plan;
	SweepResult &r = plan.result;
	r.trace_id = std::move(trace_id);
	r.stats = trace_stats(trace);
	r.segment_count = segments.size();
	for (const Segment &seg : segments)
		r.reference_count += time_based_message_count(seg, config.reference_dt);

	const auto cells = threshold_grid(r.stats, config.p_list, config.e_list, config.spec);

	for (Timestamp dt : config.dt_list) {
		Strategy s;
		s.kind = Strategy::Kind::TimeBased;
		s.delta_t = dt;
		plan.strategies.push_back(s);
	}
	for (const ThresholdCell &cell : cells) {
		Strategy s;
		s.kind = Strategy::Kind::EventBased;
		s.thresholds = cell.thresholds;
		plan.strategies.push_back(s);

		EvalResult e;
		e.p_percent = cell.p_percent;
		e.e_percent = cell.e_percent;
		r.event_based.push_back(e);
	}
	r.time_based.resize(config.dt_list.size());
	return plan;
}

void store(SweepResult &r, std::size_t index, EvalResult value) {
	if (index < r.time_based.size()) {
		r.time_based[index] = std::move(value);
	} else {
		EvalResult &slot = r.event_based[index - r.time_based.size()];
		value.p_percent = slot.p_percent;
		value.e_percent = slot.e_percent;
		slot = std::move(value);
	}
}

} // namespace

const std::vector<Timestamp> &default_dt_grid() {
	static const std::vector<Timestamp> grid{10, 30, 60, 300, 600, 900, 1800, 3600, 7200};
	return grid;
}

SweepConfig default_sweep_config() {
	SweepConfig c;
	c.dt_list = default_dt_grid();
	c.p_list = default_percent_grid();
	c.e_list = default_percent_grid();
	return c;
}

EvalResult evaluate_strategy(const std::vector<Segment> &segments, const Strategy &strategy,
                             std::size_t reference_count) {
	ErrorSums sums;
	std::size_t count = 0;
	for (const Segment &seg : segments) {
		if (seg.empty())
			continue;
		const ReadingStream stream = strategy.kind == Strategy::Kind::TimeBased
		                                 ? sample_time_based(seg, strategy.delta_t)
		                                 : sample_event_based(seg, strategy.thresholds);
		sums += stream_error_sums(stream, seg);
		count += message_count(stream);
	}

	EvalResult r;
	r.strategy = strategy;
	r.nmae = sums.nmae();
	r.rmse = sums.rmse();
	r.message_count = count;
	r.compression_vs_reference = compression_ratio(reference_count, count);
	return r;
}

SweepResult run_sweep_serial(const PowerTrace &trace, const std::vector<Segment> &segments,
                             const SweepConfig &config, std::string trace_id) {
	SweepPlan plan = plan_sweep(trace, segments, config, std::move(trace_id));
	for (std::size_t i = 0; i < plan.strategies.size(); ++i)
		store(plan.result, i, evaluate_strategy(segments, plan.strategies[i], plan.result.reference_count));
	return std::move(plan.result);
}

SweepResult run_sweep(const PowerTrace &trace, const std::vector<Segment> &segments, const SweepConfig &config,
                      std::string trace_id) {
	SweepPlan plan = plan_sweep(trace, segments, config, std::move(trace_id));
	const auto n = static_cast<std::ptrdiff_t>(plan.strategies.size());
	std::vector<EvalResult> results(plan.strategies.size());
	std::vector<std::exception_ptr> errors(plan.strategies.size());

#pragma omp parallel for schedule(dynamic, 1)
	for (std::ptrdiff_t i = 0; i < n; ++i) {
		try {
			results[i] = evaluate_strategy(segments, plan.strategies[i], plan.result.reference_count);
		} catch (...) {
			errors[i] = std::current_exception();
		}
	}

	for (std::size_t i = 0; i < results.size(); ++i) {
		if (errors[i])
			std::rethrow_exception(errors[i]);
		store(plan.result, i, std::move(results[i]));
	}
	return std::move(plan.result);
}

int sweep_threads() noexcept {
#ifdef _OPENMP
	return omp_get_max_threads();
#else
	return 1;
#endif
}

} // namespace meterdelta
