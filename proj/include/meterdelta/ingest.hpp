#pragma once

#include "meterdelta/trace.hpp"

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace meterdelta {

enum class ParseMode { Strict, Tolerant };

struct RejectedLine {
	std::size_t line = 0; // 1-based
	std::string reason;
};

struct LoadResult {
	RawSamples samples;            // file order
	std::vector<RejectedLine> rejected; // only populated in tolerant mode
};

/// REDD low-frequency channel file: "<epoch seconds> <watts>" per line,
/// LF or CRLF. Blank lines are ignored. Strict mode throws
/// ParseError(line) on the first bad line; tolerant mode skips and records
/// it. Throws EmptyInput when no sample survives.
LoadResult load_redd_channel(std::istream &in, ParseMode mode = ParseMode::Strict);
LoadResult load_redd_channel(const std::filesystem::path &path, ParseMode mode = ParseMode::Strict);

struct CsvOptions {
	std::string timestamp_column = "timestamp";
	std::string power_column = "power";
	char delimiter = ',';
	ParseMode mode = ParseMode::Strict;
};

/// Header-first CSV with quoted-field support. Fractional timestamps are
/// truncated toward zero. Columns beyond the header are ignored. Throws
/// MissingColumn, ParseError, IoFailure, EmptyInput.
LoadResult load_csv(std::istream &in, const CsvOptions &options);
LoadResult load_csv(const std::filesystem::path &path, const CsvOptions &options);

/// Splits one CSV record into fields (RFC-4180 quoting, "" escapes a quote).
std::vector<std::string> split_csv_record(const std::string &line, char delimiter);

/// Per-timestamp sum over channels, keeping only timestamps present in all
/// of them. Within a channel a repeated timestamp keeps its last value.
RawSamples combine_mains(const std::vector<RawSamples> &channels);

/// Inverse of load_redd_channel: "<t> <p>" lines with shortest round-trip
/// formatting for the power.
void write_redd_channel(std::ostream &out, const RawSamples &samples);

enum class MainsMode { Sum, First, Second };

/// Mains channel files of a REDD house directory (house_N/). Uses
/// labels.dat when present, else channel_1.dat and channel_2.dat.
std::vector<std::filesystem::path> redd_mains_channels(const std::filesystem::path &house_dir);

/// Loads a REDD house directory and combines its mains per `mode`.
RawSamples load_redd_house(const std::filesystem::path &house_dir, MainsMode mode,
                           ParseMode parse = ParseMode::Strict, std::size_t *rejected = nullptr);

} // namespace meterdelta
