#pragma once

#include "meterdelta/ingest.hpp"
#include "meterdelta/sampler.hpp"
#include "meterdelta/sweep.hpp"
#include "meterdelta/thresholds.hpp"
#include "meterdelta/trace.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace meterdelta::cli {

enum ExitCode : int { Success = 0, InputError = 1, ConfigError = 2 };

enum class InputFormat { Redd, Csv };
enum class Emit { Json, Csv, Both };
enum class SampleKind { Time, Event };

struct RunConfig {
	std::vector<std::filesystem::path> inputs;
	InputFormat format = InputFormat::Redd;
	MainsMode mains = MainsMode::Sum;
	ParseMode parse = ParseMode::Strict;
	CsvOptions csv;
	Timestamp max_gap = 60;
	SweepConfig sweep = default_sweep_config();
	std::filesystem::path out_dir; // empty: write to the output stream
	Emit emit = Emit::Both;

	// sample subcommand
	SampleKind sample_kind = SampleKind::Event;
	std::optional<double> delta_p_w;   // overrides the derived power threshold
	std::optional<double> energy_wh;   // overrides the derived energy threshold
	std::optional<Timestamp> max_silence;

	/// Throws Error(InvalidArgument) on an unusable configuration.
	void validate() const;
};

struct LoadedTrace {
	std::string id;
	PowerTrace trace;
	ValidationReport report;
	std::size_t rejected_lines = 0;
};

/// Loads one input per `config.format`. A REDD directory is read as a
/// house (mains channels combined per `config.mains`); a REDD file as a
/// single channel.
LoadedTrace load_input(const std::filesystem::path &path, const RunConfig &config);

// Serialisation of the plot-ready tables.
std::string fixed(double value, int places);
void write_stats_csv(std::ostream &out, const std::vector<std::pair<std::string, TraceStats>> &rows);
void write_stats_json(std::ostream &out, const std::vector<std::pair<std::string, TraceStats>> &rows);
void write_diffdist_csv(std::ostream &out, const std::vector<DiffPoint> &curve);
void write_readings_csv(std::ostream &out, const std::vector<MeterReading> &readings);
void write_sweep_json(std::ostream &out, const SweepResult &result);
void write_sweep_csv(std::ostream &out, const SweepResult &result);

// Subcommands. Each returns an ExitCode; diagnostics go to `err`.
int cmd_stats(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_diffdist(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_sample(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_sweep(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Full command line entry point (argv[0] is the program name).
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace meterdelta::cli
