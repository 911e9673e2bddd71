#include "meterdelta/thresholds.hpp"

#include "meterdelta/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace meterdelta {

namespace {

bool positive_or_unbounded(double v) { return v > 0.0 && !std::isnan(v); }

double rounded_base(double base, Rounding rounding) {
	if (rounding == Rounding::None)
		return base;
	return std::ceil(base / 1000.0) * 1000.0;
}

std::vector<double> unique_in_order(const std::vector<double> &values) {
	std::vector<double> out;
	for (double v : values)
		if (std::find(out.begin(), out.end(), v) == out.end())
			out.push_back(v);
	return out;
}

} // namespace

void Thresholds::validate() const {
	if (!positive_or_unbounded(delta_p))
		throw Error(ErrorCode::InvalidThresholds, "delta_p must be > 0");
	if (!positive_or_unbounded(energy))
		throw Error(ErrorCode::InvalidThresholds, "energy must be > 0");
	if (max_silence && *max_silence < 1)
		throw Error(ErrorCode::InvalidThresholds, "max_silence must be >= 1 s");
	if (std::isinf(delta_p) && std::isinf(energy) && !max_silence)
		throw Error(ErrorCode::InvalidThresholds, "no trigger can fire: delta_p and energy both unbounded");
}

Thresholds derive_thresholds(const TraceStats &stats, const ThresholdSpec &spec) {
	if (!(spec.p_percent > 0.0) || !(spec.e_percent > 0.0))
		throw Error(ErrorCode::InvalidArgument, "percentages must be positive");

	const double power_base = spec.power_base == PowerBase::PeakVariation ? stats.peak_variation : stats.peak_power;
	if (!(power_base > 0.0))
		throw Error(ErrorCode::DegenerateStats, "power base is zero");
	if (!(stats.mean_daily_energy > 0.0))
		throw Error(ErrorCode::DegenerateStats, "mean daily energy is zero");

	Thresholds th;
	th.delta_p = spec.p_percent / 100.0 * rounded_base(power_base, spec.rounding);
	th.energy = spec.e_percent / 100.0 * rounded_base(stats.mean_daily_energy, spec.rounding);
	return th;
}

std::vector<ThresholdCell> threshold_grid(const TraceStats &stats, const std::vector<double> &p_list,
                                          const std::vector<double> &e_list, const ThresholdSpec &spec) {
	if (p_list.empty() || e_list.empty())
		throw Error(ErrorCode::InvalidArgument, "percentage lists must be non-empty");

	std::vector<ThresholdCell> cells;
	for (double p : unique_in_order(p_list)) {
		for (double e : unique_in_order(e_list)) {
			ThresholdSpec cell_spec = spec;
			cell_spec.p_percent = p;
			cell_spec.e_percent = e;
			cells.push_back({p, e, derive_thresholds(stats, cell_spec)});
		}
	}
	return cells;
}

const std::vector<double> &default_percent_grid() {
	static const std::vector<double> grid{1, 2, 5, 10, 20, 50, 100};
	return grid;
}

} // namespace meterdelta
