#include "cli.hpp"

#include "meterdelta/error.hpp"
#include "meterdelta/evaluate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace meterdelta::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int nmae_places = 6;
constexpr int watt_places = 2;
constexpr int energy_places = 6; // readings only
constexpr int ratio_places = 4;
constexpr int fraction_places = 6;

double rounded(double value, int places) {
	const double scale = std::pow(10.0, places);
	return std::round(value * scale) / scale;
}

json number_or_null(double value, int places) {
	if (!std::isfinite(value))
		return nullptr;
	return rounded(value, places);
}

int exit_code_for(const Error &e) {
	switch (e.code()) {
	case ErrorCode::InvalidArgument:
	case ErrorCode::InvalidThresholds:
		return ConfigError;
	default:
		return InputError;
	}
}

std::ofstream open_output(const fs::path &dir, const std::string &name) {
	fs::create_directories(dir);
	std::ofstream out(dir / name, std::ios::binary);
	if (!out)
		throw Error(ErrorCode::IoFailure, "cannot write " + (dir / name).string());
	return out;
}

template <typename Fn>
int guarded(std::ostream &err, Fn &&fn) {
	try {
		return fn();
	} catch (const Error &e) {
		err << "error: " << e.what() << '\n';
		return exit_code_for(e);
	} catch (const fs::filesystem_error &e) {
		err << "error: " << e.what() << '\n';
		return InputError;
	}
}

std::vector<LoadedTrace> load_all(const RunConfig &config, std::ostream &err) {
	config.validate();
	std::vector<LoadedTrace> traces;
	for (const auto &path : config.inputs) {
		LoadedTrace t = load_input(path, config);
		if (t.report.duplicates_collapsed > 0)
			err << "warning: " << t.id << ": " << t.report.duplicates_collapsed
			    << " duplicate timestamps collapsed (last value kept)\n";
		if (t.rejected_lines > 0)
			err << "warning: " << t.id << ": " << t.rejected_lines << " malformed lines skipped\n";
		traces.push_back(std::move(t));
	}
	return traces;
}

json stats_json(const TraceStats &s) {
	json j;
	j["samples"] = s.sample_count;
	j["duration_s"] = s.duration;
	j["coverage"] = rounded(s.coverage, fraction_places);
	j["gap_count"] = s.gap_count;
	j["peak_power_w"] = rounded(s.peak_power, watt_places);
	j["peak_variation_w"] = rounded(s.peak_variation, watt_places);
	j["total_energy_wh"] = rounded(s.total_energy, watt_places);
	j["mean_daily_energy_wh"] = rounded(s.mean_daily_energy, watt_places);
	return j;
}

} // namespace

void RunConfig::validate() const {
	if (inputs.empty())
		throw Error(ErrorCode::InvalidArgument, "at least one --input is required");
	if (max_gap < 1)
		throw Error(ErrorCode::InvalidArgument, "--max-gap must be >= 1");
	if (sweep.dt_list.empty() || sweep.p_list.empty() || sweep.e_list.empty())
		throw Error(ErrorCode::InvalidArgument, "grids must be non-empty");
	for (Timestamp dt : sweep.dt_list)
		if (dt < 1)
			throw Error(ErrorCode::InvalidArgument, "--dt values must be >= 1");
	for (const auto *list : {&sweep.p_list, &sweep.e_list})
		for (double p : *list)
			if (!(p > 0.0))
				throw Error(ErrorCode::InvalidArgument, "percentages must be positive");
}

LoadedTrace load_input(const fs::path &path, const RunConfig &config) {
	std::string id = path.stem().string();
	std::size_t rejected = 0;
	RawSamples raw;
	if (config.format == InputFormat::Csv) {
		CsvOptions opts = config.csv;
		opts.mode = config.parse;
		LoadResult r = load_csv(path, opts);
		raw = std::move(r.samples);
		rejected = r.rejected.size();
	} else if (fs::is_directory(path)) {
		raw = load_redd_house(path, config.mains, config.parse, &rejected);
		fs::path dir = path.lexically_normal();
		if (!dir.has_filename())
			dir = dir.parent_path();
		id = dir.filename().string();
	} else {
		LoadResult r = load_redd_channel(path, config.parse);
		raw = std::move(r.samples);
		rejected = r.rejected.size();
	}
	if (raw.empty())
		throw Error(ErrorCode::EmptyInput, "no samples common to all mains channels in " + path.string());

	ValidationReport report;
	PowerTrace trace = validate_trace(raw, &report);
	return LoadedTrace{std::move(id), std::move(trace), report, rejected};
}

std::string fixed(double value, int places) {
	if (std::isinf(value))
		return value > 0 ? "inf" : "-inf";
	if (std::isnan(value))
		return "nan";
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.*f", places, value);
	std::string s(buf);
	// avoid "-0.00"
	if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos)
		s.erase(0, 1);
	return s;
}

void write_stats_csv(std::ostream &out, const std::vector<std::pair<std::string, TraceStats>> &rows) {
	out << "trace_id,samples,duration_s,coverage,gap_count,peak_power_w,peak_variation_w,total_energy_wh,"
	       "mean_daily_energy_wh\n";
	for (const auto &[id, s] : rows)
		out << id << ',' << s.sample_count << ',' << s.duration << ',' << fixed(s.coverage, fraction_places) << ','
		    << s.gap_count << ',' << fixed(s.peak_power, watt_places) << ',' << fixed(s.peak_variation, watt_places)
		    << ',' << fixed(s.total_energy, watt_places) << ',' << fixed(s.mean_daily_energy, watt_places) << '\n';
}

void write_stats_json(std::ostream &out, const std::vector<std::pair<std::string, TraceStats>> &rows) {
	json arr = json::array();
	for (const auto &[id, s] : rows) {
		json j;
		j["trace_id"] = id;
		j["stats"] = stats_json(s);
		arr.push_back(std::move(j));
	}
	out << arr.dump(2) << '\n';
}

void write_diffdist_csv(std::ostream &out, const std::vector<DiffPoint> &curve) {
	out << "rank_percent,normalized_delta\n";
	for (const DiffPoint &p : curve)
		out << fixed(p.rank_fraction * 100.0, fraction_places) << ',' << fixed(p.normalized_delta, fraction_places)
		    << '\n';
}

void write_readings_csv(std::ostream &out, const std::vector<MeterReading> &readings) {
	out << "timestamp,trigger,energy_wh,power_w\n";
	for (const MeterReading &r : readings)
		out << r.timestamp << ',' << to_string(r.trigger) << ',' << fixed(r.energy_wh(), energy_places) << ','
		    << fixed(r.power, watt_places) << '\n';
}

void write_sweep_json(std::ostream &out, const SweepResult &result) {
	json j;
	j["trace_id"] = result.trace_id;
	j["stats"] = stats_json(result.stats);
	j["segments"] = result.segment_count;
	j["reference_count"] = result.reference_count;

	json time_based = json::array();
	for (const EvalResult &r : result.time_based) {
		json row;
		row["dt"] = r.strategy.delta_t;
		row["nmae"] = rounded(r.nmae, nmae_places);
		row["count"] = r.message_count;
		time_based.push_back(std::move(row));
	}
	j["time_based"] = std::move(time_based);

	json event_based = json::array();
	for (const EvalResult &r : result.event_based) {
		json row;
		row["p_percent"] = r.p_percent;
		row["e_percent"] = r.e_percent;
		row["delta_p_w"] = number_or_null(r.strategy.thresholds.delta_p, watt_places);
		row["energy_wh"] = number_or_null(r.strategy.thresholds.energy, watt_places);
		row["nmae"] = rounded(r.nmae, nmae_places);
		row["count"] = r.message_count;
		row["compression_vs_10s"] = rounded(r.compression_vs_reference, ratio_places);
		event_based.push_back(std::move(row));
	}
	j["event_based"] = std::move(event_based);
	out << j.dump(2) << '\n';
}

void write_sweep_csv(std::ostream &out, const SweepResult &result) {
	out << "trace_id,strategy,dt,p_percent,e_percent,delta_p_w,energy_wh,nmae,count,compression_vs_10s\n";
	for (const EvalResult &r : result.time_based)
		out << result.trace_id << ",time," << r.strategy.delta_t << ",,,,," << fixed(r.nmae, nmae_places) << ','
		    << r.message_count << ",\n";
	for (const EvalResult &r : result.event_based)
		out << result.trace_id << ",event,," << fixed(r.p_percent, watt_places) << ','
		    << fixed(r.e_percent, watt_places) << ',' << fixed(r.strategy.thresholds.delta_p, watt_places) << ','
		    << fixed(r.strategy.thresholds.energy, watt_places) << ',' << fixed(r.nmae, nmae_places) << ','
		    << r.message_count << ',' << fixed(r.compression_vs_reference, ratio_places) << '\n';
}

int cmd_stats(const RunConfig &config, std::ostream &out, std::ostream &err) {
	return guarded(err, [&] {
		std::vector<std::pair<std::string, TraceStats>> rows;
		for (const LoadedTrace &t : load_all(config, err))
			rows.emplace_back(t.id, trace_stats(t.trace));

		if (config.out_dir.empty()) {
			if (config.emit == Emit::Json)
				write_stats_json(out, rows);
			else
				write_stats_csv(out, rows);
			return int(Success);
		}
		if (config.emit != Emit::Json) {
			auto f = open_output(config.out_dir, "stats.csv");
			write_stats_csv(f, rows);
		}
		if (config.emit != Emit::Csv) {
			auto f = open_output(config.out_dir, "stats.json");
			write_stats_json(f, rows);
		}
		write_stats_csv(out, rows);
		return int(Success);
	});
}

int cmd_diffdist(const RunConfig &config, std::ostream &out, std::ostream &err) {
	return guarded(err, [&] {
		for (const LoadedTrace &t : load_all(config, err)) {
			const auto curve = first_difference_distribution(t.trace);
			if (config.out_dir.empty()) {
				write_diffdist_csv(out, curve);
			} else {
				auto f = open_output(config.out_dir, t.id + "_diffdist.csv");
				write_diffdist_csv(f, curve);
			}
		}
		return int(Success);
	});
}

int cmd_sample(const RunConfig &config, std::ostream &out, std::ostream &err) {
	return guarded(err, [&] {
		const auto traces = load_all(config, err);
		for (const LoadedTrace &t : traces) {
			const auto segments = segment_trace(t.trace, config.max_gap);

			Thresholds th;
			if (config.sample_kind == SampleKind::Event) {
				ThresholdSpec spec = config.sweep.spec;
				spec.p_percent = config.sweep.p_list.front();
				spec.e_percent = config.sweep.e_list.front();
				if (!config.delta_p_w || !config.energy_wh)
					th = derive_thresholds(trace_stats(t.trace), spec);
				if (config.delta_p_w)
					th.delta_p = *config.delta_p_w;
				if (config.energy_wh)
					th.energy = *config.energy_wh;
				th.max_silence = config.max_silence;
				th.validate();
				err << t.id << ": delta_p=" << fixed(th.delta_p, watt_places)
				    << " W, energy=" << fixed(th.energy, watt_places) << " Wh\n";
			}

			std::vector<MeterReading> readings;
			for (const Segment &seg : segments) {
				const ReadingStream s = config.sample_kind == SampleKind::Time
				                            ? sample_time_based(seg, config.sweep.dt_list.front())
				                            : sample_event_based(seg, th);
				readings.insert(readings.end(), s.readings.begin(), s.readings.end());
			}

			if (config.out_dir.empty()) {
				write_readings_csv(out, readings);
			} else {
				auto f = open_output(config.out_dir, t.id + "_readings.csv");
				write_readings_csv(f, readings);
			}
		}
		return int(Success);
	});
}

int cmd_sweep(const RunConfig &config, std::ostream &out, std::ostream &err) {
	return guarded(err, [&] {
		for (const LoadedTrace &t : load_all(config, err)) {
			const auto segments = segment_trace(t.trace, config.max_gap);
			const SweepResult result = run_sweep(t.trace, segments, config.sweep, t.id);

			if (config.out_dir.empty()) {
				if (config.emit == Emit::Csv)
					write_sweep_csv(out, result);
				else
					write_sweep_json(out, result);
				continue;
			}
			if (config.emit != Emit::Csv) {
				auto f = open_output(config.out_dir, t.id + "_sweep.json");
				write_sweep_json(f, result);
			}
			if (config.emit != Emit::Json) {
				auto f = open_output(config.out_dir, t.id + "_sweep.csv");
				write_sweep_csv(f, result);
			}
			out << t.id << ": " << result.time_based.size() << " time-based + " << result.event_based.size()
			    << " event-based points over " << result.segment_count << " segment(s)\n";
		}
		return int(Success);
	});
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
	CLI::App app{"Event-based (send-on-delta) electricity metering versus periodic metering"};
	app.require_subcommand(1);

	RunConfig config;
	std::vector<std::string> inputs;

	const std::map<std::string, InputFormat> formats{{"redd", InputFormat::Redd}, {"csv", InputFormat::Csv}};
	const std::map<std::string, MainsMode> mains{
	    {"sum", MainsMode::Sum}, {"first", MainsMode::First}, {"second", MainsMode::Second}};
	const std::map<std::string, PowerBase> bases{{"variation", PowerBase::PeakVariation},
	                                             {"peak", PowerBase::PeakPower}};
	const std::map<std::string, Rounding> roundings{{"ceil", Rounding::CeilKiloUnits}, {"none", Rounding::None}};
	const std::map<std::string, Emit> emits{{"json", Emit::Json}, {"csv", Emit::Csv}, {"both", Emit::Both}};
	const std::map<std::string, SampleKind> kinds{{"time", SampleKind::Time}, {"event", SampleKind::Event}};

	std::string out_dir;
	bool tolerant = false;
	std::string delimiter = ",";

	auto add_common = [&](CLI::App *sub) {
		sub->add_option("--input,-i", inputs, "Trace file, or REDD house directory")->required();
		sub->add_option("--format", config.format, "Input format")
		    ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
		sub->add_option("--mains", config.mains, "REDD mains combination")
		    ->transform(CLI::CheckedTransformer(mains, CLI::ignore_case));
		sub->add_option("--max-gap", config.max_gap, "Split segments at gaps longer than this (s)")
		    ->check(CLI::PositiveNumber);
		sub->add_option("--dt", config.sweep.dt_list, "Time-based window lengths (s)")->delimiter(',');
		sub->add_option("--p-percent", config.sweep.p_list, "Power threshold percentages")->delimiter(',');
		sub->add_option("--e-percent", config.sweep.e_list, "Energy threshold percentages")->delimiter(',');
		sub->add_option("--power-base", config.sweep.spec.power_base, "Base of the power threshold")
		    ->transform(CLI::CheckedTransformer(bases, CLI::ignore_case));
		sub->add_option("--rounding", config.sweep.spec.rounding, "Round bases up to whole kW / kWh")
		    ->transform(CLI::CheckedTransformer(roundings, CLI::ignore_case));
		sub->add_option("--out", out_dir, "Output directory (default: standard output)");
		sub->add_option("--emit", config.emit, "Output format")
		    ->transform(CLI::CheckedTransformer(emits, CLI::ignore_case));
		sub->add_flag("--tolerant", tolerant, "Skip malformed lines instead of failing");
		sub->add_option("--ts-col", config.csv.timestamp_column, "CSV timestamp column");
		sub->add_option("--power-col", config.csv.power_column, "CSV power column");
		sub->add_option("--delimiter", delimiter, "CSV delimiter (single character)");
	};

	auto *stats = app.add_subcommand("stats", "Peak power, peak variation, energy and coverage per trace");
	auto *diffdist = app.add_subcommand("diffdist", "Sorted normalised first-difference curve");
	auto *sample = app.add_subcommand("sample", "Emit the meter readings of one strategy");
	auto *sweep = app.add_subcommand("sweep", "NMAE and message counts over the strategy grids");
	for (auto *sub : {stats, diffdist, sample, sweep})
		add_common(sub);

	sample->add_option("--strategy", config.sample_kind, "time or event")
	    ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
	sample->add_option("--delta-p-w", config.delta_p_w, "Explicit power threshold (W)");
	sample->add_option("--energy-wh", config.energy_wh, "Explicit energy threshold (Wh)");
	sample->add_option("--max-silence", config.max_silence, "Silence trigger (s); disabled by default");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		const int rc = app.exit(e, out, err);
		return rc == 0 ? int(Success) : int(ConfigError);
	}

	if (delimiter.size() != 1) {
		err << "error: --delimiter must be a single character\n";
		return ConfigError;
	}
	config.csv.delimiter = delimiter.front();
	config.parse = tolerant ? ParseMode::Tolerant : ParseMode::Strict;
	config.out_dir = out_dir;
	for (const auto &in : inputs)
		config.inputs.emplace_back(in);

	if (*stats)
		return cmd_stats(config, out, err);
	if (*diffdist)
		return cmd_diffdist(config, out, err);
	if (*sample)
		return cmd_sample(config, out, err);
	return cmd_sweep(config, out, err);
}

} // namespace meterdelta::cli
