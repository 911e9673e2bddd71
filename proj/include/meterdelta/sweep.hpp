#pragma once

#include "meterdelta/evaluate.hpp"
#include "meterdelta/sampler.hpp"
#include "meterdelta/thresholds.hpp"
#include "meterdelta/trace.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace meterdelta {

struct SweepConfig {
	std::vector<Timestamp> dt_list;
	std::vector<double> p_list;
	std::vector<double> e_list;
	ThresholdSpec spec;
	/// Periodic strategy the compression ratio is measured against.
	Timestamp reference_dt = 10;
};

/// (10, 30, 60, 300, 600, 900, 1800, 3600, 7200) s
const std::vector<Timestamp> &default_dt_grid();

/// dt grid above with both percentage lists at (1, 2, 5, 10, 20, 50, 100).
SweepConfig default_sweep_config();

struct EvalResult {
	Strategy strategy;
	double p_percent = 0.0; // event-based only
	double e_percent = 0.0; // event-based only
	double nmae = 0.0;
	double rmse = 0.0;
	std::size_t message_count = 0;
	double compression_vs_reference = 0.0;
};

struct SweepResult {
	std::string trace_id;
	TraceStats stats;
	std::size_t segment_count = 0;
	std::size_t reference_count = 0;
	std::vector<EvalResult> time_based;  // dt_list order
	std::vector<EvalResult> event_based; // p-major grid order
};

/// Scores one strategy over every segment, summing error numerators,
/// denominators and message counts before the final division.
EvalResult evaluate_strategy(const std::vector<Segment> &segments, const Strategy &strategy,
                             std::size_t reference_count);

/// Thresholds come from whole-trace statistics; each grid point is then
/// evaluated over all segments. Grid points run in parallel (OpenMP) and
/// are collected in grid order, so the result matches run_sweep_serial
/// bit for bit.
SweepResult run_sweep(const PowerTrace &trace, const std::vector<Segment> &segments, const SweepConfig &config,
                      std::string trace_id = {});

/// Single-threaded reference for run_sweep.
SweepResult run_sweep_serial(const PowerTrace &trace, const std::vector<Segment> &segments,
                             const SweepConfig &config, std::string trace_id = {});

/// Worker threads available to run_sweep (1 without OpenMP).
int sweep_threads() noexcept;

} // namespace meterdelta
