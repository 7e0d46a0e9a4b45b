#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Base of every error the library raises. Subclasses name the failure class so
// callers (and the CLI) can react without parsing messages.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSize : public Error { using Error::Error; };
class GenerationFailure : public Error { using Error::Error; };
class InvalidGraph : public Error { using Error::Error; };
class NonUnitary : public Error { using Error::Error; };
class SizeGuard : public Error { using Error::Error; };
class ShapeError : public Error { using Error::Error; };
class IndexError : public Error { using Error::Error; };
class ArgumentError : public Error { using Error::Error; };
class NumericalError : public Error { using Error::Error; };
class FitError : public Error { using Error::Error; };
class DegenerateSeries : public Error { using Error::Error; };
class ValidationError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

}  // namespace qwalk
