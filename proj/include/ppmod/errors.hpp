#pragma once

#include <stdexcept>
#include <string>

namespace ppmod {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct AmbientMismatch : Error { using Error::Error; };
struct RingMismatch : Error { using Error::Error; };
struct ModuleMismatch : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct NotContained : Error { using Error::Error; };
struct BadIndex : Error { using Error::Error; };
struct NotInjective : Error { using Error::Error; };
struct StageOutOfRange : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct RingNotFinite : Error { using Error::Error; };
struct BadRing : Error { using Error::Error; };

// Chain construction/analysis failures carry the offending stage index.
struct NotDescending : Error {
    int index;
    explicit NotDescending(int i, const std::string& detail = "")
        : Error("chain not descending at step " + std::to_string(i) +
                (detail.empty() ? "" : ": " + detail)),
          index(i) {}
};

struct NotDescendingIdeals : Error {
    int index;
    explicit NotDescendingIdeals(int i)
        : Error("ideal chain not descending at step " + std::to_string(i)), index(i) {}
};

struct Stabilized : Error {
    int index;
    explicit Stabilized(int i)
        : Error("chain stabilizes at stage " + std::to_string(i)), index(i) {}
};

struct ChainStabilized : Error {
    int index;
    explicit ChainStabilized(int i)
        : Error("chain stabilizes at stage " + std::to_string(i) +
                "; no Mittag-Leffler failure evidence exists"),
          index(i) {}
};

struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

}  // namespace ppmod
