// Acceptance suite: one line per criterion, non-zero exit if any fails.
// Criteria 8-11 need the REDD low-frequency data; point METERDELTA_REDD_DIR
// at the directory holding house_1 ... house_6.

#include "oracle.hpp"

#include "cli.hpp"
#include "meterdelta/error.hpp"
#include "meterdelta/evaluate.hpp"
#include "meterdelta/sampler.hpp"
#include "meterdelta/sweep.hpp"
#include "meterdelta/thresholds.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace meterdelta;
namespace fs = std::filesystem;

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Verdict {
	Outcome outcome;
	std::string detail;
};

int failures = 0;

void report(int id, const std::string &name, const std::function<Verdict()> &body) {
	const auto t0 = std::chrono::steady_clock::now();
	Verdict v;
	try {
		v = body();
	} catch (const std::exception &e) {
		v = {Outcome::Fail, std::string("exception: ") + e.what()};
	}
	const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	const char *tag = v.outcome == Outcome::Pass ? "PASS" : v.outcome == Outcome::Fail ? "FAIL" : "SKIP";
	if (v.outcome == Outcome::Fail)
		++failures;
	std::printf("%s  [%2d] %-44s %s (%.2fs)\n", tag, id, name.c_str(), v.detail.c_str(), secs);
	std::fflush(stdout);
}

Verdict verdict(bool ok, std::string detail) { return {ok ? Outcome::Pass : Outcome::Fail, std::move(detail)}; }

std::vector<std::vector<Sample>> fixtures() {
	std::vector<std::vector<Sample>> out{oracle::trace_a(), {{0, 100}, {1, 100}, {2, 200}, {3, 200}}};
	std::mt19937_64 rng(1);
	for (int i = 0; i < 5; ++i)
		out.push_back(oracle::random_step_trace(rng, 3000, 5000, 120));
	auto gappy = oracle::random_step_trace(rng, 3000, 5000, 120);
	gappy.erase(gappy.begin() + 1000, gappy.begin() + 1040);
	out.push_back(gappy);
	auto fractional = oracle::random_step_trace(rng, 3000, 5000, 120);
	std::uniform_real_distribution<double> noise(0.0, 1.0);
	for (Sample &s : fractional)
		s.power = s.power * 1.037 + noise(rng);
	out.push_back(fractional);
	return out;
}

// ---- property suite --------------------------------------------------------

Verdict oracle_equivalence() {
	std::mt19937_64 rng(20180603);
	const auto &grid = default_percent_grid();
	std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
	int matched = 0;
	for (int i = 0; i < 100; ++i) {
		const auto raw = oracle::random_step_trace(rng, 1000, 5000, 60);
		const auto trace = validate_trace(raw);
		ThresholdSpec spec;
		spec.p_percent = grid[pick(rng)];
		spec.e_percent = grid[pick(rng)];
		// one-second-resolution energy limits so the energy trigger fires on these short traces
		Thresholds th = derive_thresholds(trace_stats(trace), spec);
		th.energy /= 100.0;
		if (i % 4 == 0)
			th.max_silence = 45;
		const auto got = sample_event_based(whole(trace), th);
		const auto want = oracle::event_readings(raw, th.delta_p, th.energy, th.max_silence);
		matched += got.readings == want;
	}
	return verdict(matched == 100, std::to_string(matched) + "/100 traces matched reading-for-reading");
}

Verdict energy_conservation() {
	double worst = 0.0;
	std::size_t combos = 0;
	for (const auto &raw : fixtures()) {
		const auto trace = validate_trace(raw);
		const TraceStats stats = trace_stats(trace);
		for (const Segment &seg : segment_trace(trace, 60)) {
			const double expected = energy_ws(seg);
			auto check = [&](const ReadingStream &s) {
				double sum = 0.0;
				for (const auto &r : s.readings)
					sum += r.energy_ws;
				worst = std::max(worst, std::abs(sum - expected) / expected);
				++combos;
			};
			for (Timestamp dt : default_dt_grid())
				check(sample_time_based(seg, dt));
			check(sample_time_based(seg, 1));
			for (const auto &cell : threshold_grid(stats, default_percent_grid(), default_percent_grid(), {}))
				check(sample_event_based(seg, cell.thresholds));
		}
	}
	char buf[96];
	std::snprintf(buf, sizeof buf, "%zu streams, worst relative error %.2e (tol 1e-9)", combos, worst);
	return verdict(worst <= 1e-9, buf);
}

Verdict perfect_capture() {
	std::mt19937_64 rng(33);
	std::uniform_int_distribution<int> level(0, 5000);
	std::uniform_int_distribution<int> hold(1, 90);
	int exact = 0;
	int total = 0;

	auto run = [&](const std::vector<Sample> &raw, double delta_p) {
		const auto trace = validate_trace(raw);
		const Segment seg = whole(trace);
		const auto s = sample_event_based(seg, Thresholds{delta_p, unbounded, std::nullopt});
		exact += nmae(seg, reconstruct(s, seg)) == 0.0;
		++total;
	};

	run(oracle::trace_a(), 300);
	run(oracle::trace_a(), 400);
	for (int i = 0; i < 100; ++i) {
		const double delta_p = 50.0 * (1 + i % 20);
		std::vector<Sample> raw;
		int p = level(rng);
		for (Timestamp t = 0; t < 1000;) {
			for (int h = hold(rng); h > 0 && t < 1000; --h, ++t)
				raw.push_back({t, double(p)});
			int next;
			do
				next = level(rng);
			while (std::abs(next - p) < delta_p);
			p = next;
		}
		run(raw, delta_p);
	}
	return verdict(exact == total, std::to_string(exact) + "/" + std::to_string(total) + " reconstructions exact");
}

Verdict identity_baseline() {
	int zero = 0;
	int total = 0;
	for (const auto &raw : fixtures()) {
		const auto trace = validate_trace(raw);
		for (const Segment &seg : segment_trace(trace, 60)) {
			zero += nmae(seg, reconstruct(sample_time_based(seg, 1), seg)) == 0.0;
			++total;
		}
	}
	return verdict(zero == total, std::to_string(zero) + "/" + std::to_string(total) + " segments with NMAE = 0");
}

Verdict nmae_hand_check() {
	const auto trace = validate_trace({{0, 100}, {1, 100}, {2, 200}, {3, 200}});
	const double v = nmae(whole(trace), ReconstructedTrace{0, {150, 150, 150, 150}});
	char buf[64];
	std::snprintf(buf, sizeof buf, "NMAE = %.15f", v);
	return verdict(std::abs(v - 1.0 / 3.0) <= 1e-12, buf);
}

Verdict monotonicity_and_limits() {
	const auto &grid = default_percent_grid();
	std::mt19937_64 rng(6);
	int violations = 0;
	for (const auto &raw : fixtures()) {
		const TraceStats stats = trace_stats(validate_trace(raw));
		for (Rounding r : {Rounding::CeilKiloUnits, Rounding::None}) {
			for (std::size_t i = 1; i < grid.size(); ++i) {
				ThresholdSpec lo{grid[i - 1], grid[i - 1], PowerBase::PeakVariation, r};
				ThresholdSpec hi{grid[i], grid[i], PowerBase::PeakVariation, r};
				const Thresholds a = derive_thresholds(stats, lo);
				const Thresholds b = derive_thresholds(stats, hi);
				violations += !(b.delta_p > a.delta_p) + !(b.energy > a.energy);
			}
		}
	}
	for (int i = 0; i < 50; ++i) {
		const auto trace = validate_trace(oracle::random_step_trace(rng, 2000));
		const Segment seg = whole(trace);
		for (const auto &r : sample_event_based(seg, Thresholds{unbounded, 20.0, std::nullopt}).readings)
			violations += r.trigger == Trigger::PowerDelta;
		for (const auto &r : sample_event_based(seg, Thresholds{100.0, unbounded, std::nullopt}).readings)
			violations += r.trigger == Trigger::Energy;
	}
	return verdict(violations == 0, std::to_string(violations) + " violations");
}

std::string slurp(const fs::path &p) {
	std::ifstream in(p, std::ios::binary);
	return {std::istreambuf_iterator<char>(in), {}};
}

Verdict deterministic_sweep() {
	const fs::path dir = fs::temp_directory_path() / ("meterdelta_acceptance_" + std::to_string(std::random_device{}()));
	fs::create_directories(dir);
	const fs::path input = dir / "fixture.dat";
	{
		std::mt19937_64 rng(7);
		std::ofstream out(input);
		write_redd_channel(out, oracle::random_step_trace(rng, 86400, 5000, 300));
	}

	auto sweep = [&](const std::string &sub) {
		const std::string in = input.string();
		const std::string out = (dir / sub).string();
		const char *argv[] = {"meterdelta", "sweep", "--input", in.c_str(), "--out", out.c_str()};
		std::ostringstream o, e;
		return cli::run(6, argv, o, e);
	};
	const int rc1 = sweep("a");
	const int rc2 = sweep("b");
	const bool same = rc1 == 0 && rc2 == 0 && !slurp(dir / "a" / "fixture_sweep.json").empty() &&
	                  slurp(dir / "a" / "fixture_sweep.json") == slurp(dir / "b" / "fixture_sweep.json") &&
	                  slurp(dir / "a" / "fixture_sweep.csv") == slurp(dir / "b" / "fixture_sweep.csv");
	fs::remove_all(dir);
	return verdict(same, same ? "JSON and CSV byte-identical across runs" : "outputs differ or run failed");
}

// ---- dataset suite ---------------------------------------------------------

struct TableRow {
	int house;
	double peak_power;
	double peak_variation;
};

constexpr TableRow table_one[] = {
    {1, 7629.07, 5962.49}, {2, 3253.07, 2331.04}, {3, 8059.92, 5640.39},
    {4, 4105.19, 2908.52}, {5, 4901.68, 3062.39}, {6, 7686.62, 7328.30},
};

const char *redd_root() {
	const char *dir = std::getenv("METERDELTA_REDD_DIR");
	return dir && *dir ? dir : nullptr;
}

fs::path house_dir(int house) { return fs::path(redd_root()) / ("house_" + std::to_string(house)); }

cli::LoadedTrace load_house(int house, MainsMode mains = MainsMode::Sum) {
	cli::RunConfig config;
	config.mains = mains;
	return cli::load_input(house_dir(house), config);
}

const Verdict skipped{Outcome::Skip, "METERDELTA_REDD_DIR not set"};

Verdict table_one_reproduction() {
	if (!redd_root())
		return skipped;
	std::ostringstream detail;
	bool ok = true;
	int checked = 0;
	for (const TableRow &row : table_one) {
		if (!fs::exists(house_dir(row.house)))
			continue;
		++checked;
		const TraceStats s = trace_stats(load_house(row.house).trace);
		const bool match = std::abs(s.peak_power - row.peak_power) <= 0.01 &&
		                   std::abs(s.peak_variation - row.peak_variation) <= 0.01;
		if (match)
			continue;
		ok = false;
		detail << "house " << row.house << " sum: " << cli::fixed(s.peak_power, 2) << "/"
		       << cli::fixed(s.peak_variation, 2);
		for (MainsMode alt : {MainsMode::First, MainsMode::Second}) {
			const TraceStats a = trace_stats(load_house(row.house, alt).trace);
			detail << (alt == MainsMode::First ? " first: " : " second: ") << cli::fixed(a.peak_power, 2) << "/"
			       << cli::fixed(a.peak_variation, 2);
		}
		detail << " (table " << row.peak_power << "/" << row.peak_variation << "); ";
	}
	if (checked == 0)
		return {Outcome::Fail, "no house_N directories found"};
	if (ok)
		detail << checked << " houses match within 0.01 W";
	return verdict(ok, detail.str());
}

SweepResult sweep_house(const PowerTrace &trace, std::vector<double> p, std::vector<double> e,
                        std::vector<Timestamp> dt) {
	SweepConfig c;
	c.dt_list = std::move(dt);
	c.p_list = std::move(p);
	c.e_list = std::move(e);
	return run_sweep(trace, segment_trace(trace, cli::RunConfig{}.max_gap), c);
}

Verdict compression_claim() {
	if (!redd_root())
		return skipped;
	std::ostringstream detail;
	bool ok = true;
	for (int house = 1; house <= 4; ++house) {
		const auto t0 = std::chrono::steady_clock::now();
		const auto loaded = load_house(house);
		const SweepResult r = sweep_house(loaded.trace, {1}, {1, 2, 5}, {10});
		const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
		detail << "h" << house << ":";
		for (const EvalResult &e : r.event_based) {
			const double c = e.compression_vs_reference;
			ok &= c >= 10.0 && c <= 30.0;
			detail << ' ' << cli::fixed(c, 1);
		}
		ok &= secs <= 300.0;
		detail << " (" << cli::fixed(secs, 0) << "s); ";
	}
	detail << "band [10, 30]";
	return verdict(ok, detail.str());
}

Verdict house_one_headline() {
	if (!redd_root())
		return skipped;
	const auto loaded = load_house(1);
	const SweepResult r = sweep_house(loaded.trace, {10}, {1}, {60, 300});
	const EvalResult &event = r.event_based.front();
	const EvalResult &dt60 = r.time_based[0];
	const EvalResult &dt300 = r.time_based[1];
	const bool ok = event.nmae <= 1.1 * dt60.nmae && event.message_count < dt300.message_count;
	std::ostringstream detail;
	detail << "NMAE " << cli::fixed(event.nmae, 4) << " vs 1.1*" << cli::fixed(dt60.nmae, 4) << ", count "
	       << event.message_count << " vs " << dt300.message_count;
	return verdict(ok, detail.str());
}

Verdict first_difference_shape() {
	if (!redd_root())
		return skipped;
	std::ostringstream detail;
	bool ok = true;
	for (int house = 1; house <= 4; ++house) {
		const auto curve = first_difference_distribution(load_house(house).trace);
		std::size_t below = 0;
		for (const DiffPoint &p : curve)
			below += p.normalized_delta < 0.01;
		const double frac = double(below) / double(curve.size());
		ok &= frac >= 0.90;
		detail << "h" << house << " " << cli::fixed(100.0 * frac, 1) << "% ";
	}
	detail << "(need >= 90% below 0.01)";
	return verdict(ok, detail.str());
}

} // namespace

int main() {
	const auto t0 = std::chrono::steady_clock::now();
	std::printf("Property suite (sweep threads: %d)\n", sweep_threads());
	report(1, "Oracle equivalence", oracle_equivalence);
	report(2, "Energy conservation", energy_conservation);
	report(3, "Perfect capture", perfect_capture);
	report(4, "Identity baseline (dt = 1 s)", identity_baseline);
	report(5, "NMAE hand-check", nmae_hand_check);
	report(6, "Threshold monotonicity and degenerate limits", monotonicity_and_limits);
	report(7, "Deterministic sweep", deterministic_sweep);
	const double property_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	std::printf("Property suite time %.2fs (limit 60s)\n", property_secs);
	if (property_secs >= 60.0) {
		std::printf("FAIL  property suite exceeded 60s\n");
		++failures;
	}

	std::printf("Dataset suite (METERDELTA_REDD_DIR=%s)\n", redd_root() ? redd_root() : "<unset>");
	report(8, "Table I reproduction", table_one_reproduction);
	report(9, "Compression vs 10 s at dP = 1%", compression_claim);
	report(10, "House 1 headline point (P 10%, E 1%)", house_one_headline);
	report(11, "First-difference distribution shape", first_difference_shape);

	std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "OK", failures);
	return failures ? 1 : 0;
}
