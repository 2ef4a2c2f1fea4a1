#ifndef PARACYC_ERRORS_HPP
#define PARACYC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace paracyc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error { using Error::Error; };
struct ShiftMismatch : Error { using Error::Error; };
struct WindowExhausted : Error { using Error::Error; };
struct NotQuasi : Error { using Error::Error; };
struct HomotopyNotContracting : Error { using Error::Error; };
struct MissingHomotopy : Error { using Error::Error; };
struct HypothesisFailed : Error { using Error::Error; };
struct SeriesDiverges : Error { using Error::Error; };
struct NotParachain : Error { using Error::Error; };
struct DescentObstruction : Error { using Error::Error; };
struct NotAChainMap : Error { using Error::Error; };
struct NotACocycle : Error { using Error::Error; };
struct NotACycleModTau : Error { using Error::Error; };
struct DegreeTooLow : Error { using Error::Error; };
struct UnknownExample : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace paracyc

#endif
