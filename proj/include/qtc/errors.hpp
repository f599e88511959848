#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QTC_DEFINE_ERROR(Name)                                                \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}  \
    }

QTC_DEFINE_ERROR(UnsupportedField);
QTC_DEFINE_ERROR(DivisionByZero);
QTC_DEFINE_ERROR(FieldMismatch);
QTC_DEFINE_ERROR(InvalidShiftConstant);
QTC_DEFINE_ERROR(NotADivisor);
QTC_DEFINE_ERROR(NotMonic);
QTC_DEFINE_ERROR(EmptyBlock);
QTC_DEFINE_ERROR(MixedInput);
QTC_DEFINE_ERROR(OracleScaleExceeded);
QTC_DEFINE_ERROR(PreconditionFailed);
QTC_DEFINE_ERROR(InvalidIndex);
QTC_DEFINE_ERROR(ZeroCode);
QTC_DEFINE_ERROR(NotACodeword);
QTC_DEFINE_ERROR(TargetTableError);
QTC_DEFINE_ERROR(FormatError);
QTC_DEFINE_ERROR(ConfigError);

#undef QTC_DEFINE_ERROR

/// Parse failure; `position` is the 0-based offset of the offending character.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error("ParseError at " + std::to_string(position) + ": " + what), position_(position) {}
    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// The assembled generator matrix has smaller rank than the construction promises.
class DimensionDefect : public Error {
public:
    DimensionDefect(std::size_t expected, std::size_t actual)
        : Error("DimensionDefect: expected rank " + std::to_string(expected) + ", got " +
                std::to_string(actual)),
          expected_(expected),
          actual_(actual) {}
    [[nodiscard]] std::size_t expected_rank() const noexcept { return expected_; }
    [[nodiscard]] std::size_t actual_rank() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

}  // namespace qtc
