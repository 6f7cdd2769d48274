#pragma once

#include <stdexcept>
#include <string>

namespace bqscat {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix was numerically singular where an inverse was required.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// A scalar argument was zero where the symbols are undefined.
class ZeroArgument : public Error {
public:
    using Error::Error;
};

/// The spectral parameter is too close to a degenerate point of the symbol matrix.
class NearSingularPoint : public Error {
public:
    using Error::Error;
};

/// An exponent magnitude exceeded the configured cap.
class OverflowRisk : public Error {
public:
    using Error::Error;
};

/// An evaluation was requested outside the boundedness domain of the quantity.
class DomainViolation : public Error {
public:
    using Error::Error;
};

/// A numerical integration step failed to reach the requested accuracy.
class StepFailure : public Error {
public:
    using Error::Error;
};

/// A fixed-point iteration did not converge within its iteration budget.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// A denominator that genericity assumptions require to be nonzero vanished.
class AssumptionViolation : public Error {
public:
    using Error::Error;
};

/// A coefficient was requested outside the set where it is defined.
class CoefficientUnavailable : public Error {
public:
    using Error::Error;
};

/// A least-squares asymptotic fit was too ill-conditioned to trust.
class FitUnstable : public Error {
public:
    using Error::Error;
};

/// Exclusion zones consumed the whole contour piece.
class EmptyPiece : public Error {
public:
    using Error::Error;
};

/// A wavepacket band left the stable wavenumber interval.
class BandViolation : public Error {
public:
    using Error::Error;
};

/// Input data failed the rapid-decay requirement.
class NonDecayingInput : public Error {
public:
    using Error::Error;
};

/// Malformed configuration or data file.
class InvalidInput : public Error {
public:
    using Error::Error;
};

} // namespace bqscat
