#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace meterdelta {

/// Seconds since the Unix epoch.
using Timestamp = std::int64_t;

/// One instantaneous power measurement. Under the left-hold convention the
/// power is constant over [timestamp, timestamp + 1).
struct Sample {
	Timestamp timestamp = 0;
	double power = 0.0; // W

	friend bool operator==(const Sample &, const Sample &) = default;
};

using RawSamples = std::vector<Sample>;

struct ValidationReport {
	std::size_t duplicates_collapsed = 0;
	bool reordered = false;
};

class PowerTrace;

/// Sorts by timestamp and collapses duplicate timestamps keeping the value
/// that came last in `raw`. Throws EmptyInput, NegativePower, NonFinite.
PowerTrace validate_trace(const RawSamples &raw, ValidationReport *report = nullptr);

/// A validated 1 Hz power trace: strictly increasing timestamps, finite
/// non-negative powers. Immutable once built; obtain one via validate_trace.
class PowerTrace {
public:
	std::span<const Sample> samples() const noexcept { return samples_; }
	std::size_t size() const noexcept { return samples_.size(); }
	const Sample &operator[](std::size_t i) const { return samples_[i]; }

	Timestamp start() const noexcept { return samples_.front().timestamp; }
	/// One past the last covered second.
	Timestamp end() const noexcept { return samples_.back().timestamp + 1; }

	static constexpr Timestamp nominal_resolution = 1;

private:
	friend PowerTrace validate_trace(const RawSamples &, ValidationReport *);
	explicit PowerTrace(std::vector<Sample> samples) : samples_(std::move(samples)) {}

	std::vector<Sample> samples_;
};

/// Contiguous run of trace samples in which consecutive timestamps differ
/// by at most the max_gap used to cut it. A view: it must not outlive the
/// PowerTrace it was taken from.
struct Segment {
	std::span<const Sample> samples;

	Timestamp start() const noexcept { return samples.front().timestamp; }
	Timestamp end() const noexcept { return samples.back().timestamp + 1; }
	Timestamp length() const noexcept { return end() - start(); }
	bool empty() const noexcept { return samples.empty(); }
};

struct TraceStats {
	double peak_power = 0.0;         // W
	double peak_variation = 0.0;     // W, max |ΔP| over 1 s-adjacent pairs
	double total_energy = 0.0;       // Wh
	double mean_daily_energy = 0.0;  // Wh/day
	double coverage = 0.0;           // samples / duration
	Timestamp duration = 0;          // s, end - start
	std::size_t gap_count = 0;       // adjacent pairs more than 1 s apart
	std::size_t sample_count = 0;
};

/// Point on the sorted first-difference curve.
struct DiffPoint {
	double rank_fraction = 0.0;     // (position + 1) / count
	double normalized_delta = 0.0;  // |ΔP| / max |ΔP|
};

/// Whole-trace view as a single segment.
Segment whole(const PowerTrace &trace) noexcept;

TraceStats trace_stats(const PowerTrace &trace);
TraceStats segment_stats(const Segment &segment);

/// Energy of a segment in watt-seconds (Σ power · 1 s).
double energy_ws(const Segment &segment) noexcept;

/// Splits wherever consecutive timestamps differ by more than `max_gap`.
/// Throws InvalidArgument if max_gap < 1.
std::vector<Segment> segment_trace(const PowerTrace &trace, Timestamp max_gap);

/// |ΔP| of every pair of samples exactly one second apart, in time order.
std::vector<double> first_differences(const PowerTrace &trace);

/// Sorted (descending), max-normalized curve of |ΔP|. Zero differences are
/// kept; an all-zero curve is reported as zeros. Throws DegenerateTrace if
/// no 1 s-adjacent pair exists.
std::vector<DiffPoint> first_difference_distribution(const PowerTrace &trace);

} // namespace meterdelta
