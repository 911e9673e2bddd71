#pragma once

#include "meterdelta/sampler.hpp"
#include "meterdelta/trace.hpp"

#include <cstddef>
#include <vector>

namespace meterdelta {

/// Average-power signal on the 1 s grid [start, start + power.size()).
/// Every second of an inter-reading interval carries that interval's
/// energy divided by its length, including seconds with no source sample.
struct ReconstructedTrace {
	Timestamp start = 0;
	std::vector<double> power;

	Timestamp end() const noexcept { return start + static_cast<Timestamp>(power.size()); }
	double at(Timestamp t) const { return power.at(static_cast<std::size_t>(t - start)); }
};

/// Throws MismatchedSegment unless the stream starts at the segment start,
/// ends at the segment end and is strictly increasing in time.
ReconstructedTrace reconstruct(const ReadingStream &stream, const Segment &segment);

/// Running sums of the error formulas; summing these across segments
/// before dividing gives the single-sum NMAE over all present seconds.
struct ErrorSums {
	double abs_error = 0.0;     // Σ |P_o - P_m|
	double reference = 0.0;     // Σ P_o
	double squared_error = 0.0; // Σ (P_o - P_m)^2
	std::size_t count = 0;

	ErrorSums &operator+=(const ErrorSums &other) noexcept;

	/// Throws ZeroEnergySegment when Σ P_o = 0.
	double nmae() const;
	double rmse() const;
};

/// Sums over the segment's present samples only.
ErrorSums error_sums(const Segment &original, const ReconstructedTrace &reconstructed);

/// Same sums as error_sums(segment, reconstruct(stream, segment)) computed
/// in one pass without materialising the reconstruction.
ErrorSums stream_error_sums(const ReadingStream &stream, const Segment &segment);

/// Σ|P_o - P_m| / Σ P_o. Throws ZeroEnergySegment.
double nmae(const Segment &original, const ReconstructedTrace &reconstructed);

/// Secondary metric, not used for acceptance.
double rmse(const Segment &original, const ReconstructedTrace &reconstructed);

/// reference / candidate. Throws ZeroCandidate when candidate == 0.
double compression_ratio(std::size_t reference_count, std::size_t candidate_count);

} // namespace meterdelta
