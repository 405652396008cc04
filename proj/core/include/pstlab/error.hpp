#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pstlab {

// Base of every exception the library throws. Callers that only care about
// "something went wrong in pstlab" catch this; the subclasses below name the
// individual failure modes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PSTLAB_DEFINE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

PSTLAB_DEFINE_ERROR(IndexOutOfRange);
PSTLAB_DEFINE_ERROR(InvalidGraph);
PSTLAB_DEFINE_ERROR(MalformedGraph6);
PSTLAB_DEFINE_ERROR(EdgeNotInGraph);
PSTLAB_DEFINE_ERROR(NotHermitian);
PSTLAB_DEFINE_ERROR(NonPositiveCoupling);
PSTLAB_DEFINE_ERROR(EigensolverFailure);
PSTLAB_DEFINE_ERROR(DegenerateInput);
PSTLAB_DEFINE_ERROR(NotNormalized);
PSTLAB_DEFINE_ERROR(VertexCoincide);
PSTLAB_DEFINE_ERROR(NotPerfect);
PSTLAB_DEFINE_ERROR(PhaseUndefined);
PSTLAB_DEFINE_ERROR(NotBipartite);
PSTLAB_DEFINE_ERROR(NonRealHamiltonian);
PSTLAB_DEFINE_ERROR(NonzeroDiagonal);
PSTLAB_DEFINE_ERROR(Disconnected);
PSTLAB_DEFINE_ERROR(NTooLarge);
PSTLAB_DEFINE_ERROR(IoError);
PSTLAB_DEFINE_ERROR(ParseError);
PSTLAB_DEFINE_ERROR(InvariantViolation);

#undef PSTLAB_DEFINE_ERROR

// Raised by read_records; carries the 1-based line number of the bad line.
class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pstlab
