#pragma once

#include "meterdelta/thresholds.hpp"
#include "meterdelta/trace.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace meterdelta {

enum class Trigger { Initial, PowerDelta, Energy, Silence, Window, Final };

std::string_view to_string(Trigger trigger) noexcept;

/// One transmitted message. `energy_ws` is the energy accumulated over
/// [previous reading, timestamp) in watt-seconds; it is kept in Ws so that
/// integer-watt traces reconstruct without rounding.
struct MeterReading {
	Timestamp timestamp = 0;
	double energy_ws = 0.0;
	double power = 0.0; // W, latest instantaneous power known at `timestamp`
	Trigger trigger = Trigger::Initial;

	double energy_wh() const noexcept { return energy_ws / 3600.0; }

	friend bool operator==(const MeterReading &, const MeterReading &) = default;
};

struct Strategy {
	enum class Kind { TimeBased, EventBased };
	Kind kind = Kind::TimeBased;
	Timestamp delta_t = 0;   // time-based only
	Thresholds thresholds;   // event-based only
};

struct ReadingStream {
	std::vector<MeterReading> readings;
	Strategy strategy;
	Timestamp segment_start = 0;
	Timestamp segment_end = 0;
};

/// Averages over windows of `delta_t` seconds tiled from the segment start.
/// A trailing partial window is flushed by a Final reading at segment end.
/// Throws InvalidArgument if delta_t < 1.
ReadingStream sample_time_based(const Segment &segment, Timestamp delta_t);

/// Send-on-delta scan. At every sample time after the last reading, once
/// the energy before that second has been accumulated, a reading is sent
/// if |P - P_last_sent| >= delta_p, else if accumulated energy >= energy,
/// else if the silence limit has elapsed. Each reading resets the power
/// reference and the accumulator. Initial reading at segment start (zero
/// energy), Final reading at segment end. Throws InvalidThresholds.
ReadingStream sample_event_based(const Segment &segment, const Thresholds &thresholds);

/// Transmitted readings: everything except the Initial baseline.
std::size_t message_count(const ReadingStream &stream) noexcept;

/// message_count of sample_time_based(segment, delta_t) without sampling.
std::size_t time_based_message_count(const Segment &segment, Timestamp delta_t);

} // namespace meterdelta
