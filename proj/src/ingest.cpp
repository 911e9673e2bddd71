#include "meterdelta/ingest.hpp"

#include "meterdelta/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

namespace meterdelta {

namespace {

bool parse_int(std::string_view tok, Timestamp &out) {
	const char *end = tok.data() + tok.size();
	auto [ptr, ec] = std::from_chars(tok.data(), end, out);
	return ec == std::errc() && ptr == end;
}

bool parse_double(std::string_view tok, double &out) {
	if (!tok.empty() && tok.front() == '+')
		tok.remove_prefix(1);
	const char *end = tok.data() + tok.size();
	auto [ptr, ec] = std::from_chars(tok.data(), end, out, std::chars_format::general);
	return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::string_view trim(std::string_view s) {
	const auto ws = " \t\r\n";
	const auto b = s.find_first_not_of(ws);
	if (b == std::string_view::npos)
		return {};
	const auto e = s.find_last_not_of(ws);
	return s.substr(b, e - b + 1);
}

std::ifstream open_or_throw(const std::filesystem::path &path) {
	std::ifstream in(path);
	if (!in)
		throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
	return in;
}

void reject(LoadResult &result, ParseMode mode, std::size_t line, std::string reason) {
	if (mode == ParseMode::Strict)
		throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason, line);
	result.rejected.push_back({line, std::move(reason)});
}

void require_samples(const LoadResult &result) {
	if (result.samples.empty())
		throw Error(ErrorCode::EmptyInput, "no samples in input");
}

} // namespace

LoadResult load_redd_channel(std::istream &in, ParseMode mode) {
	LoadResult result;
	std::string line;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		const std::string_view body = trim(line);
		if (body.empty())
			continue;

		std::array<std::string_view, 2> tokens;
		std::size_t n = 0;
		std::size_t pos = 0;
		while (pos < body.size()) {
			const auto b = body.find_first_not_of(" \t", pos);
			if (b == std::string_view::npos)
				break;
			auto e = body.find_first_of(" \t", b);
			if (e == std::string_view::npos)
				e = body.size();
			if (n < tokens.size())
				tokens[n] = body.substr(b, e - b);
			++n;
			pos = e;
		}
		if (n != 2) {
			reject(result, mode, line_no, "expected 2 fields, found " + std::to_string(n));
			continue;
		}

		Sample s;
		if (!parse_int(tokens[0], s.timestamp)) {
			reject(result, mode, line_no, "non-integer timestamp");
			continue;
		}
		if (!parse_double(tokens[1], s.power)) {
			reject(result, mode, line_no, "non-numeric power");
			continue;
		}
		result.samples.push_back(s);
	}
	if (in.bad())
		throw Error(ErrorCode::IoFailure, "read error");
	require_samples(result);
	return result;
}

LoadResult load_redd_channel(const std::filesystem::path &path, ParseMode mode) {
	auto in = open_or_throw(path);
	return load_redd_channel(in, mode);
}

std::vector<std::string> split_csv_record(const std::string &line, char delimiter) {
	std::vector<std::string> fields;
	std::string field;
	bool quoted = false;
	bool was_quoted = false;
	for (std::size_t i = 0; i < line.size(); ++i) {
		const char c = line[i];
		if (quoted) {
			if (c == '"') {
				if (i + 1 < line.size() && line[i + 1] == '"') {
					field += '"';
					++i;
				} else {
					quoted = false;
				}
			} else {
				field += c;
			}
		} else if (c == '"' && field.empty() && !was_quoted) {
			quoted = true;
			was_quoted = true;
		} else if (c == delimiter) {
			fields.push_back(std::move(field));
			field.clear();
			was_quoted = false;
		} else if (c != '\r' || i + 1 != line.size()) {
			field += c;
		}
	}
	if (quoted)
		throw Error(ErrorCode::ParseError, "unterminated quoted field");
	fields.push_back(std::move(field));
	return fields;
}

LoadResult load_csv(std::istream &in, const CsvOptions &options) {
	LoadResult result;
	std::string line;
	std::size_t line_no = 0;

	std::vector<std::string> header;
	while (header.empty() && std::getline(in, line)) {
		++line_no;
		if (!trim(line).empty())
			header = split_csv_record(line, options.delimiter);
	}
	if (header.empty())
		throw Error(ErrorCode::EmptyInput, "missing CSV header");

	auto column = [&](const std::string &name) {
		for (std::size_t i = 0; i < header.size(); ++i)
			if (trim(header[i]) == name)
				return i;
		throw Error(ErrorCode::MissingColumn, name);
	};
	const std::size_t tcol = column(options.timestamp_column);
	const std::size_t pcol = column(options.power_column);

	while (std::getline(in, line)) {
		++line_no;
		if (trim(line).empty())
			continue;

		std::vector<std::string> fields;
		try {
			fields = split_csv_record(line, options.delimiter);
		} catch (const Error &e) {
			reject(result, options.mode, line_no, "unterminated quoted field");
			continue;
		}
		if (fields.size() <= std::max(tcol, pcol)) {
			reject(result, options.mode, line_no, "row has " + std::to_string(fields.size()) + " fields");
			continue;
		}

		Sample s;
		const std::string_view ttok = trim(fields[tcol]);
		if (!parse_int(ttok, s.timestamp)) {
			double t = 0.0;
			if (!parse_double(ttok, t) || std::abs(t) > 9.0e18) {
				reject(result, options.mode, line_no, "non-numeric timestamp");
				continue;
			}
			s.timestamp = static_cast<Timestamp>(std::trunc(t));
		}
		if (!parse_double(trim(fields[pcol]), s.power)) {
			reject(result, options.mode, line_no, "non-numeric power");
			continue;
		}
		result.samples.push_back(s);
	}
	if (in.bad())
		throw Error(ErrorCode::IoFailure, "read error");
	require_samples(result);
	return result;
}

LoadResult load_csv(const std::filesystem::path &path, const CsvOptions &options) {
	auto in = open_or_throw(path);
	return load_csv(in, options);
}

RawSamples combine_mains(const std::vector<RawSamples> &channels) {
	if (channels.empty())
		return {};
	if (channels.size() == 1)
		return channels.front();

	std::map<Timestamp, std::vector<double>> by_time;
	for (std::size_t c = 0; c < channels.size(); ++c) {
		std::map<Timestamp, double> last;
		for (const Sample &s : channels[c])
			last[s.timestamp] = s.power;
		for (const auto &[t, p] : last) {
			auto &v = by_time[t];
			if (v.size() == c)
				v.push_back(p);
		}
	}

	RawSamples out;
	for (auto &[t, powers] : by_time) {
		if (powers.size() != channels.size())
			continue;
		// fixed summation order keeps the result independent of channel order
		std::sort(powers.begin(), powers.end());
		double sum = 0.0;
		for (double p : powers)
			sum += p;
		out.push_back({t, sum});
	}
	return out;
}

void write_redd_channel(std::ostream &out, const RawSamples &samples) {
	std::array<char, 64> buf;
	for (const Sample &s : samples) {
		auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), s.power);
		out << s.timestamp << ' ' << std::string_view(buf.data(), ptr - buf.data()) << '\n';
	}
}

std::vector<std::filesystem::path> redd_mains_channels(const std::filesystem::path &house_dir) {
	namespace fs = std::filesystem;
	if (!fs::is_directory(house_dir))
		throw Error(ErrorCode::IoFailure, "not a directory: " + house_dir.string());

	std::vector<fs::path> channels;
	std::ifstream labels(house_dir / "labels.dat");
	if (labels) {
		std::string line;
		while (std::getline(labels, line)) {
			std::istringstream ls(line);
			int id = 0;
			std::string label;
			if (ls >> id >> label && label == "mains")
				channels.push_back(house_dir / ("channel_" + std::to_string(id) + ".dat"));
		}
	}
	if (channels.empty())
		channels = {house_dir / "channel_1.dat", house_dir / "channel_2.dat"};
	return channels;
}

RawSamples load_redd_house(const std::filesystem::path &house_dir, MainsMode mode, ParseMode parse,
                           std::size_t *rejected) {
	const auto paths = redd_mains_channels(house_dir);
	std::vector<RawSamples> channels;
	std::size_t bad = 0;
	auto load = [&](const std::filesystem::path &p) {
		LoadResult r = load_redd_channel(p, parse);
		bad += r.rejected.size();
		channels.push_back(std::move(r.samples));
	};

	switch (mode) {
	case MainsMode::Sum:
		for (const auto &p : paths)
			load(p);
		break;
	case MainsMode::First:
		load(paths.at(0));
		break;
	case MainsMode::Second:
		if (paths.size() < 2)
			throw Error(ErrorCode::IoFailure, "house has a single mains channel: " + house_dir.string());
		load(paths[1]);
		break;
	}
	if (rejected)
		*rejected = bad;
	return combine_mains(channels);
}

} // namespace meterdelta
