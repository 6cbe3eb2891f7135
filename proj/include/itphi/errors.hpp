#pragma once

#include <stdexcept>
#include <string>

namespace itphi {

/// Base for the named failure conditions; `kind()` is the stable name used in
/// reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define ITPHI_ERROR(Name)                                                   \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(#Name, what) {}          \
  }

ITPHI_ERROR(NotAdmissibleWithinBound);
ITPHI_ERROR(EmptyQuiver);
ITPHI_ERROR(RelationViolated);
ITPHI_ERROR(RetryExhausted);
ITPHI_ERROR(VerificationMismatch);
ITPHI_ERROR(AlgebraMismatch);
ITPHI_ERROR(InadmissibleSeries);
ITPHI_ERROR(NotFiniteProjDim);
ITPHI_ERROR(CoresolutionStalled);

#undef ITPHI_ERROR

class NotRigid : public Error {
 public:
  NotRigid(int degree, const std::string& what) : Error("NotRigid", what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

}  // namespace itphi
