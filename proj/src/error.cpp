#include "meterdelta/error.hpp"

namespace meterdelta {

const char *to_string(ErrorCode code) noexcept {
	switch (code) {
	case ErrorCode::EmptyInput: return "EmptyInput";
	case ErrorCode::NegativePower: return "NegativePower";
	case ErrorCode::NonFinite: return "NonFinite";
	case ErrorCode::DegenerateTrace: return "DegenerateTrace";
	case ErrorCode::IoFailure: return "IoFailure";
	case ErrorCode::ParseError: return "ParseError";
	case ErrorCode::MissingColumn: return "MissingColumn";
	case ErrorCode::DegenerateStats: return "DegenerateStats";
	case ErrorCode::InvalidThresholds: return "InvalidThresholds";
	case ErrorCode::InvalidArgument: return "InvalidArgument";
	case ErrorCode::MismatchedSegment: return "MismatchedSegment";
	case ErrorCode::ZeroEnergySegment: return "ZeroEnergySegment";
	case ErrorCode::ZeroCandidate: return "ZeroCandidate";
	}
	return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message, std::size_t line)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), line_(line) {}

} // namespace meterdelta
