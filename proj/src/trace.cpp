#include "meterdelta/trace.hpp"

#include "meterdelta/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace meterdelta {

namespace {

constexpr double seconds_per_hour = 3600.0;
constexpr double seconds_per_day = 86400.0;

TraceStats stats_of(std::span<const Sample> samples) {
	TraceStats s;
	if (samples.empty())
		return s;

	double energy = 0.0;
	for (std::size_t i = 0; i < samples.size(); ++i) {
		const Sample &cur = samples[i];
		s.peak_power = std::max(s.peak_power, cur.power);
		energy += cur.power;
		if (i == 0)
			continue;
		const Timestamp step = cur.timestamp - samples[i - 1].timestamp;
		if (step == 1)
			s.peak_variation = std::max(s.peak_variation, std::abs(cur.power - samples[i - 1].power));
		else
			++s.gap_count;
	}

	s.sample_count = samples.size();
	s.duration = samples.back().timestamp + 1 - samples.front().timestamp;
	s.total_energy = energy / seconds_per_hour;
	s.coverage = static_cast<double>(s.sample_count) / static_cast<double>(s.duration);
	s.mean_daily_energy = s.total_energy / (static_cast<double>(s.duration) / seconds_per_day);
	return s;
}

} // namespace

PowerTrace validate_trace(const RawSamples &raw, ValidationReport *report) {
	if (raw.empty())
		throw Error(ErrorCode::EmptyInput, "trace has no samples");

	for (const Sample &s : raw) {
		if (!std::isfinite(s.power))
			throw Error(ErrorCode::NonFinite, "non-finite power at t=" + std::to_string(s.timestamp));
		if (s.power < 0.0)
			throw Error(ErrorCode::NegativePower, "negative power at t=" + std::to_string(s.timestamp));
	}

	ValidationReport local;
	std::vector<Sample> sorted(raw);
	local.reordered = !std::is_sorted(sorted.begin(), sorted.end(),
	                                  [](const Sample &a, const Sample &b) { return a.timestamp < b.timestamp; });
	std::stable_sort(sorted.begin(), sorted.end(),
	                 [](const Sample &a, const Sample &b) { return a.timestamp < b.timestamp; });

	// stable sort keeps input order among equal timestamps, so the last of each run wins
	std::vector<Sample> out;
	out.reserve(sorted.size());
	for (const Sample &s : sorted) {
		if (!out.empty() && out.back().timestamp == s.timestamp) {
			out.back() = s;
			++local.duplicates_collapsed;
		} else {
			out.push_back(s);
		}
	}

	if (report)
		*report = local;
	return PowerTrace(std::move(out));
}

Segment whole(const PowerTrace &trace) noexcept { return Segment{trace.samples()}; }

TraceStats trace_stats(const PowerTrace &trace) { return stats_of(trace.samples()); }

TraceStats segment_stats(const Segment &segment) { return stats_of(segment.samples); }

double energy_ws(const Segment &segment) noexcept {
	double e = 0.0;
	for (const Sample &s : segment.samples)
		e += s.power;
	return e;
}

std::vector<Segment> segment_trace(const PowerTrace &trace, Timestamp max_gap) {
	if (max_gap < 1)
		throw Error(ErrorCode::InvalidArgument, "max_gap must be >= 1, got " + std::to_string(max_gap));

	const auto all = trace.samples();
	std::vector<Segment> segments;
	std::size_t first = 0;
	for (std::size_t i = 1; i < all.size(); ++i) {
		if (all[i].timestamp - all[i - 1].timestamp > max_gap) {
			segments.push_back(Segment{all.subspan(first, i - first)});
			first = i;
		}
	}
	segments.push_back(Segment{all.subspan(first)});
	return segments;
}

std::vector<double> first_differences(const PowerTrace &trace) {
	const auto s = trace.samples();
	std::vector<double> diffs;
	diffs.reserve(s.size());
	for (std::size_t i = 1; i < s.size(); ++i)
		if (s[i].timestamp - s[i - 1].timestamp == 1)
			diffs.push_back(std::abs(s[i].power - s[i - 1].power));
	return diffs;
}

std::vector<DiffPoint> first_difference_distribution(const PowerTrace &trace) {
	std::vector<double> diffs = first_differences(trace);
	if (diffs.empty())
		throw Error(ErrorCode::DegenerateTrace, "no pair of samples one second apart");

	std::sort(diffs.begin(), diffs.end(), std::greater<>());
	const double peak = diffs.front();
	const double count = static_cast<double>(diffs.size());

	std::vector<DiffPoint> curve(diffs.size());
	for (std::size_t i = 0; i < diffs.size(); ++i) {
		curve[i].rank_fraction = static_cast<double>(i + 1) / count;
		curve[i].normalized_delta = peak > 0.0 ? diffs[i] / peak : 0.0;
	}
	return curve;
}

} // namespace meterdelta
