#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meterdelta {

enum class ErrorCode {
	EmptyInput,
	NegativePower,
	NonFinite,
	DegenerateTrace,
	IoFailure,
	ParseError,
	MissingColumn,
	DegenerateStats,
	InvalidThresholds,
	InvalidArgument,
	MismatchedSegment,
	ZeroEnergySegment,
	ZeroCandidate,
};

const char *to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` identifies the failure kind;
/// `line()` is set for ParseError (1-based) and zero otherwise.
class Error : public std::runtime_error {
public:
	Error(ErrorCode code, const std::string &message, std::size_t line = 0);

	ErrorCode code() const noexcept { return code_; }
	std::size_t line() const noexcept { return line_; }

private:
	ErrorCode code_;
	std::size_t line_;
};

} // namespace meterdelta
