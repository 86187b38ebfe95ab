#pragma once

#include <stdexcept>
#include <string>

namespace systolica {

/// Base class of all errors thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the domain of a profile, branch or metric.
class DomainError : public Error { public: using Error::Error; };

/// Two-sided derivative requested at a point where the one-sided values disagree.
class KinkError : public Error { public: using Error::Error; };

/// A quantity violates admissibility (nonpositive return time, nonpositive potential).
class AdmissibilityError : public Error { public: using Error::Error; };

/// A constructor received parameters for which no valid object exists.
class ConstructionError : public Error { public: using Error::Error; };

/// Random generation exhausted its rejection budget.
class GenerationError : public Error { public: using Error::Error; };

/// Pointwise certificate bound violated beyond tolerance.
class CertificateError : public Error { public: using Error::Error; };

/// Systolic inequality violated beyond tolerance, or equality where strictness is required.
class TheoremError : public Error { public: using Error::Error; };

/// A sample sits on the critical locus where transversality is required.
class TransversalityError : public Error { public: using Error::Error; };

/// Weight normalization violated.
class NormalizationError : public Error { public: using Error::Error; };

/// A certified search could not be concluded within its budget.
class SearchError : public Error { public: using Error::Error; };

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public Error { public: using Error::Error; };

/// ODE integration or event isolation failed.
class IntegrationError : public Error { public: using Error::Error; };

/// Level is singular for the Clairaut reduction (critical turning point).
class SingularLevelError : public Error { public: using Error::Error; };

/// Malformed input file or unknown format tag.
class ParseError : public Error { public: using Error::Error; };

} // namespace systolica
