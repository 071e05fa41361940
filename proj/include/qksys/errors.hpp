#pragma once

#include <stdexcept>

namespace qksys {

// One exception type per failure kind so callers and tests can discriminate.
// The CLI maps these onto its exit-code taxonomy (2 = bad parameters,
// 3 = malformed input document).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrimePower final : Error { using Error::Error; };
struct NotPrime final : Error { using Error::Error; };
struct ZeroInverse final : Error { using Error::Error; };
struct InvalidElement final : Error { using Error::Error; };
struct DuplicateAbscissa final : Error { using Error::Error; };
struct WrongArity final : Error { using Error::Error; };
struct MalformedClique final : Error { using Error::Error; };
struct BadUniformity final : Error { using Error::Error; };
struct BadDegreeBound final : Error { using Error::Error; };
struct NoValidPrime final : Error { using Error::Error; };
struct RangeError final : Error { using Error::Error; };
struct TraceTooLarge final : Error { using Error::Error; };
struct BadParams final : Error { using Error::Error; };
struct NotOneSystem final : Error { using Error::Error; };
struct UncoloredVertex final : Error { using Error::Error; };
struct MalformedInput final : Error { using Error::Error; };

}  // namespace qksys
