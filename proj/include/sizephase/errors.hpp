#pragma once

#include <stdexcept>
#include <string>

namespace sizephase {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ColourOutOfRange : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct StateSpaceTooLarge : Error { using Error::Error; };
struct OutOfSearchRange : Error { using Error::Error; };
struct InvalidRowFamily : Error { using Error::Error; };
struct MarkerNotFound : Error { using Error::Error; };
struct NotPropagatable : Error { using Error::Error; };
struct AlphabetTooLarge : Error { using Error::Error; };
struct DecodeError : Error { using Error::Error; };
struct EpsilonOutOfRange : Error { using Error::Error; };
struct CutoffTooHigh : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };

}  // namespace sizephase
