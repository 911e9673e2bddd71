#pragma once

#include "meterdelta/trace.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace meterdelta {

inline constexpr double unbounded = std::numeric_limits<double>::infinity();

/// Event-trigger parameters of one meter configuration.
struct Thresholds {
	double delta_p = unbounded;            // W, deviation from last sent power
	double energy = unbounded;             // Wh accumulated since last reading
	std::optional<Timestamp> max_silence;  // s; nullopt disables the trigger

	/// Throws InvalidThresholds unless both values are positive (or
	/// unbounded) and at least one trigger can ever fire.
	void validate() const;
};

enum class PowerBase { PeakVariation, PeakPower };
enum class Rounding { CeilKiloUnits, None };

struct ThresholdSpec {
	double p_percent = 1.0;
	double e_percent = 1.0;
	PowerBase power_base = PowerBase::PeakVariation;
	Rounding rounding = Rounding::CeilKiloUnits;
};

/// Power threshold = p% of the power base, energy threshold = e% of the
/// mean daily energy. With CeilKiloUnits each base is first rounded up to
/// a whole kW / kWh. Throws DegenerateStats on a zero base and
/// InvalidArgument on a non-positive percentage.
Thresholds derive_thresholds(const TraceStats &stats, const ThresholdSpec &spec);

struct ThresholdCell {
	double p_percent = 0.0;
	double e_percent = 0.0;
	Thresholds thresholds;
};

/// Cartesian product p_list × e_list (p-major). Duplicate percentages are
/// dropped, first occurrence kept. spec.p_percent / e_percent are ignored.
std::vector<ThresholdCell> threshold_grid(const TraceStats &stats, const std::vector<double> &p_list,
                                          const std::vector<double> &e_list, const ThresholdSpec &spec);

/// (1, 2, 5, 10, 20, 50, 100) %
const std::vector<double> &default_percent_grid();

} // namespace meterdelta
