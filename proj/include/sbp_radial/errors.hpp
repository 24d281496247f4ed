#ifndef SBP_RADIAL_ERRORS_HPP
#define SBP_RADIAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sbpr {

/// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridTooSmall : Error { using Error::Error; };
struct OddPOnCentredGrid : Error { using Error::Error; };
struct PrecisionExhausted : Error { using Error::Error; };
struct BelowTailThreshold : Error { using Error::Error; };
struct TableMismatch : Error { using Error::Error; };
struct IllPosedSigns : Error { using Error::Error; };
struct DegenerateS : Error { using Error::Error; };
struct SingularNormal : Error { using Error::Error; };
struct SupportTouchesBoundary : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };
struct MisalignedGrids : Error { using Error::Error; };
struct UnknownKey : Error { using Error::Error; };
struct InconsistentCombination : Error { using Error::Error; };

}  // namespace sbpr

#endif
