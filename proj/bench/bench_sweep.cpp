#include "meterdelta/evaluate.hpp"
#include "meterdelta/sweep.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace meterdelta;

namespace {

// One week at 1 Hz: base load, a fridge duty cycle and random appliance runs.
const PowerTrace &week_trace() {
	static const PowerTrace trace = [] {
		constexpr Timestamp length = 7 * 86400;
		std::mt19937_64 rng(42);
		std::vector<double> p(length, 80.0);
		for (Timestamp t = 0; t < length; ++t)
			if (t % 2400 < 900)
				p[t] += 120.0;
		std::uniform_int_distribution<Timestamp> start(0, length - 1);
		std::uniform_int_distribution<Timestamp> run(30, 3600);
		std::uniform_real_distribution<double> watts(200.0, 2500.0);
		for (int i = 0; i < 150; ++i) {
			const Timestamp s = start(rng);
			const double w = watts(rng);
			for (Timestamp t = s; t < std::min(length, s + run(rng)); ++t)
				p[t] += w;
		}
		std::normal_distribution<double> noise(0.0, 0.5);
		std::bernoulli_distribution missing(0.01);
		RawSamples raw;
		for (Timestamp t = 0; t < length; ++t)
			if (!missing(rng))
				raw.push_back({1303132930 + t, std::max(0.0, p[t] + noise(rng))});
		return validate_trace(raw);
	}();
	return trace;
}

void BM_SweepSerial(benchmark::State &state) {
	const auto &trace = week_trace();
	const auto segments = segment_trace(trace, 60);
	const SweepConfig config = default_sweep_config();
	for (auto _ : state)
		benchmark::DoNotOptimize(run_sweep_serial(trace, segments, config));
}

void BM_SweepParallel(benchmark::State &state) {
	const auto &trace = week_trace();
	const auto segments = segment_trace(trace, 60);
	const SweepConfig config = default_sweep_config();
	state.counters["threads"] = sweep_threads();
	for (auto _ : state)
		benchmark::DoNotOptimize(run_sweep(trace, segments, config));
}

void BM_EventSampling(benchmark::State &state) {
	const auto &trace = week_trace();
	ThresholdSpec spec;
	const Thresholds th = derive_thresholds(trace_stats(trace), spec);
	for (auto _ : state)
		benchmark::DoNotOptimize(sample_event_based(whole(trace), th));
	state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(trace.size()));
}

void BM_NmaeViaReconstruction(benchmark::State &state) {
	const auto &trace = week_trace();
	const Segment seg = whole(trace);
	const auto stream = sample_time_based(seg, 60);
	for (auto _ : state)
		benchmark::DoNotOptimize(nmae(seg, reconstruct(stream, seg)));
}

void BM_NmaeStreaming(benchmark::State &state) {
	const auto &trace = week_trace();
	const Segment seg = whole(trace);
	const auto stream = sample_time_based(seg, 60);
	for (auto _ : state)
		benchmark::DoNotOptimize(stream_error_sums(stream, seg).nmae());
}

} // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EventSampling)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NmaeViaReconstruction)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NmaeStreaming)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
