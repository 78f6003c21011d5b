// errors.hpp: typed failure conditions raised across the library.
#pragma once

#include <stdexcept>

namespace ncball {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// linalg
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct Singular : Error { using Error::Error; };

// fock
struct WordTooLong : Error { using Error::Error; };
struct BadGenerator : Error { using Error::Error; };

// tuples
struct BadTarget : Error { using Error::Error; };

// kernels
struct NotStrict : Error { using Error::Error; };
struct DefectSingular : Error { using Error::Error; };
struct Divergent : Error { using Error::Error; };

// metrics
struct NotComparable : Error { using Error::Error; };
struct BadDim : Error { using Error::Error; };

// automorphisms
struct NotUnitary : Error { using Error::Error; };
struct OutsideBall : Error { using Error::Error; };
struct ResolventSingular : Error { using Error::Error; };
struct InversionProbeFailed : Error { using Error::Error; };

// freeholo
struct ArityMismatch : Error { using Error::Error; };
struct ZeroMap : Error { using Error::Error; };

// cli / serialization
struct MalformedInput : Error { using Error::Error; };

}  // namespace ncball
