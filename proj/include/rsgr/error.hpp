#pragma once

#include <stdexcept>
#include <string>

namespace rsgr {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can separate data problems from programming mistakes.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

#define RSGR_DEFINE_ERROR(Name)                 \
  class Name : public Error                     \
  {                                             \
  public:                                       \
    using Error::Error;                         \
  }

RSGR_DEFINE_ERROR(IndexError);
RSGR_DEFINE_ERROR(DimensionError);
RSGR_DEFINE_ERROR(ParameterError);
RSGR_DEFINE_ERROR(TemporalRangeError);
RSGR_DEFINE_ERROR(EncodingError);
RSGR_DEFINE_ERROR(PairingError);
RSGR_DEFINE_ERROR(LengthError);
RSGR_DEFINE_ERROR(FormatError);
RSGR_DEFINE_ERROR(CorruptionError);
RSGR_DEFINE_ERROR(ParseError);

#undef RSGR_DEFINE_ERROR

} // namespace rsgr
