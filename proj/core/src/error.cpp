#include "rankcalc/error.hpp"

namespace rankcalc {

SpaceTooLargeError::SpaceTooLargeError(std::size_t requested, std::size_t cap)
    : ValidationError("space too large: " + std::to_string(requested) +
                      " worlds exceeds cap of " + std::to_string(cap)),
      requested_(requested),
      cap_(cap) {}

ParseError::ParseError(const std::string& message, std::size_t position)
    : Error(message + " at position " + std::to_string(position)),
      position_(position) {}

NormalizationError::NormalizationError(unsigned long long minimum)
    : ValidationError("normalization violated: minimum rank is " +
                      std::to_string(minimum) + ", expected 0"),
      minimum_(minimum) {}

}  // namespace rankcalc
