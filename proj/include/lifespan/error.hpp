#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lifespan {

enum class Errc {
    InvalidDate,
    NegativeLifespan,
    Io,
    SpecMismatch,
    MalformedRow,
    DuplicateId,
    InsufficientData,
    DegenerateAbscissa,
    EmptySeries,
    NonpositiveExponent,
    NegativeOffset,
    EmptyAfterWindow,
    MismatchedSeries,
    NoGrowth,
    InvalidArgument,
};

constexpr std::string_view to_string(Errc e) noexcept {
    switch (e) {
    case Errc::InvalidDate: return "InvalidDate";
    case Errc::NegativeLifespan: return "NegativeLifespan";
    case Errc::Io: return "IoError";
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::DegenerateAbscissa: return "DegenerateAbscissa";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::NonpositiveExponent: return "NonpositiveExponent";
    case Errc::NegativeOffset: return "NegativeOffset";
    case Errc::EmptyAfterWindow: return "EmptyAfterWindow";
    case Errc::MismatchedSeries: return "MismatchedSeries";
    case Errc::NoGrowth: return "NoGrowth";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a stable exit status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace lifespan
