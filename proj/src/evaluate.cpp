#include "meterdelta/evaluate.hpp"

#include "meterdelta/error.hpp"

#include <cmath>
#include <string>

namespace meterdelta {

namespace {

void check_stream(const ReadingStream &stream, const Segment &segment) {
	const auto &r = stream.readings;
	if (segment.empty() || r.size() < 2)
		throw Error(ErrorCode::MismatchedSegment, "stream needs at least two readings on a non-empty segment");
	if (r.front().timestamp != segment.start() || r.back().timestamp != segment.end())
		throw Error(ErrorCode::MismatchedSegment,
		            "stream spans [" + std::to_string(r.front().timestamp) + ", " + std::to_string(r.back().timestamp) +
		                "], segment spans [" + std::to_string(segment.start()) + ", " +
		                std::to_string(segment.end()) + "]");
	for (std::size_t i = 1; i < r.size(); ++i)
		if (r[i].timestamp <= r[i - 1].timestamp)
			throw Error(ErrorCode::MismatchedSegment, "stream timestamps not strictly increasing");
}

inline double interval_power(const MeterReading &prev, const MeterReading &cur) {
	return cur.energy_ws / static_cast<double>(cur.timestamp - prev.timestamp);
}

inline void accumulate(ErrorSums &sums, double original, double measured) {
	const double d = original - measured;
	sums.abs_error += std::abs(d);
	sums.squared_error += d * d;
	sums.reference += original;
	++sums.count;
}

} // namespace

ReconstructedTrace reconstruct(const ReadingStream &stream, const Segment &segment) {
	check_stream(stream, segment);
	const auto &r = stream.readings;

	ReconstructedTrace out;
	out.start = segment.start();
	out.power.reserve(static_cast<std::size_t>(segment.length()));
	for (std::size_t i = 1; i < r.size(); ++i) {
		const double value = interval_power(r[i - 1], r[i]);
		for (Timestamp t = r[i - 1].timestamp; t < r[i].timestamp; ++t)
			out.power.push_back(value);
	}
	return out;
}

ErrorSums &ErrorSums::operator+=(const ErrorSums &other) noexcept {
	abs_error += other.abs_error;
	reference += other.reference;
	squared_error += other.squared_error;
	count += other.count;
	return *this;
}

double ErrorSums::nmae() const {
	if (!(reference > 0.0))
		throw Error(ErrorCode::ZeroEnergySegment, "original signal has zero energy");
	return abs_error / reference;
}

double ErrorSums::rmse() const {
	return count == 0 ? 0.0 : std::sqrt(squared_error / static_cast<double>(count));
}

ErrorSums error_sums(const Segment &original, const ReconstructedTrace &reconstructed) {
	if (!original.empty() && (original.start() < reconstructed.start || original.end() > reconstructed.end()))
		throw Error(ErrorCode::MismatchedSegment, "reconstruction does not cover the segment");
	ErrorSums sums;
	for (const Sample &s : original.samples)
		accumulate(sums, s.power, reconstructed.at(s.timestamp));
	return sums;
}

ErrorSums stream_error_sums(const ReadingStream &stream, const Segment &segment) {
	check_stream(stream, segment);
	const auto &r = stream.readings;

	ErrorSums sums;
	std::size_t k = 1;
	double value = interval_power(r[0], r[1]);
	for (const Sample &s : segment.samples) {
		while (s.timestamp >= r[k].timestamp) {
			++k;
			value = interval_power(r[k - 1], r[k]);
		}
		accumulate(sums, s.power, value);
	}
	return sums;
}

double nmae(const Segment &original, const ReconstructedTrace &reconstructed) {
	return error_sums(original, reconstructed).nmae();
}

double rmse(const Segment &original, const ReconstructedTrace &reconstructed) {
	return error_sums(original, reconstructed).rmse();
}

double compression_ratio(std::size_t reference_count, std::size_t candidate_count) {
	if (candidate_count == 0)
		throw Error(ErrorCode::ZeroCandidate, "candidate strategy sent no messages");
	return static_cast<double>(reference_count) / static_cast<double>(candidate_count);
}

} // namespace meterdelta
