#include "meterdelta/sampler.hpp"

#include "meterdelta/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace meterdelta {

std::string_view to_string(Trigger trigger) noexcept {
	switch (trigger) {
	case Trigger::Initial: return "initial";
	case Trigger::PowerDelta: return "power_delta";
	case Trigger::Energy: return "energy";
	case Trigger::Silence: return "silence";
	case Trigger::Window: return "window";
	case Trigger::Final: return "final";
	}
	return "unknown";
}

ReadingStream sample_time_based(const Segment &segment, Timestamp delta_t) {
	if (delta_t < 1)
		throw Error(ErrorCode::InvalidArgument, "delta_t must be >= 1, got " + std::to_string(delta_t));

	ReadingStream stream;
	stream.strategy.kind = Strategy::Kind::TimeBased;
	stream.strategy.delta_t = delta_t;
	if (segment.empty())
		return stream;

	stream.segment_start = segment.start();
	stream.segment_end = segment.end();
	const auto &samples = segment.samples;
	const auto windows = static_cast<std::size_t>((segment.length() + delta_t - 1) / delta_t);
	stream.readings.reserve(windows + 1);
	stream.readings.push_back({segment.start(), 0.0, samples.front().power, Trigger::Initial});

	Timestamp window_end = segment.start() + delta_t;
	double acc = 0.0;
	double last_power = samples.front().power;
	for (const Sample &s : samples) {
		while (s.timestamp >= window_end) {
			stream.readings.push_back({window_end, acc, last_power, Trigger::Window});
			acc = 0.0;
			window_end += delta_t;
		}
		acc += s.power;
		last_power = s.power;
	}
	if (window_end == segment.end())
		stream.readings.push_back({window_end, acc, last_power, Trigger::Window});
	else
		stream.readings.push_back({segment.end(), acc, last_power, Trigger::Final});
	return stream;
}

ReadingStream sample_event_based(const Segment &segment, const Thresholds &thresholds) {
	thresholds.validate();

	ReadingStream stream;
	stream.strategy.kind = Strategy::Kind::EventBased;
	stream.strategy.thresholds = thresholds;
	if (segment.empty())
		return stream;

	stream.segment_start = segment.start();
	stream.segment_end = segment.end();
	const auto &samples = segment.samples;
	const double energy_limit_ws = thresholds.energy * 3600.0;

	stream.readings.push_back({segment.start(), 0.0, samples.front().power, Trigger::Initial});
	Timestamp last_sent = segment.start();
	double reference = samples.front().power;
	double acc = 0.0;

	for (std::size_t i = 1; i < samples.size(); ++i) {
		acc += samples[i - 1].power;
		const Sample &s = samples[i];

		std::optional<Trigger> fired;
		if (std::abs(s.power - reference) >= thresholds.delta_p)
			fired = Trigger::PowerDelta;
		else if (acc >= energy_limit_ws)
			fired = Trigger::Energy;
		else if (thresholds.max_silence && s.timestamp - last_sent >= *thresholds.max_silence)
			fired = Trigger::Silence;

		if (fired) {
			stream.readings.push_back({s.timestamp, acc, s.power, *fired});
			last_sent = s.timestamp;
			reference = s.power;
			acc = 0.0;
		}
	}
	acc += samples.back().power;
	stream.readings.push_back({segment.end(), acc, samples.back().power, Trigger::Final});
	return stream;
}

std::size_t message_count(const ReadingStream &stream) noexcept {
	return static_cast<std::size_t>(std::count_if(stream.readings.begin(), stream.readings.end(),
	                                              [](const MeterReading &r) { return r.trigger != Trigger::Initial; }));
}

std::size_t time_based_message_count(const Segment &segment, Timestamp delta_t) {
	if (delta_t < 1)
		throw Error(ErrorCode::InvalidArgument, "delta_t must be >= 1");
	if (segment.empty())
		return 0;
	return static_cast<std::size_t>((segment.length() + delta_t - 1) / delta_t);
}

} // namespace meterdelta
