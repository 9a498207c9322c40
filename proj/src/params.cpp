#include "fracneumann/params.hpp"

#include <cmath>
#include <limits>

namespace fracneumann {

void FracParams::validate() const {
  if (!(s > 0.0 && s < 1.0)) throw InputError("fractional order s must lie in (0,1)");
  if (!(p > 1.0)) throw InputError("exponent p must exceed 1");
  if (dim < 1) throw InputError("dimension N must be at least 1");
}

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::CaseI: return "CaseI";
    case CaseTag::CaseII: return "CaseII";
    case CaseTag::Neither: return "Neither";
  }
  return "Neither";
}

double critical_exponent(const FracParams& params) {
  params.validate();
  const double n = params.dim;
  if (n > params.sp()) return n * params.p / (n - params.sp());
  return std::numeric_limits<double>::infinity();
}

CaseTag case_tag(const FracParams& params) {
  params.validate();
  const double n = params.dim;
  const double sp = params.sp();
  if (n < sp && params.p >= 2.0) return CaseTag::CaseI;
  if (n >= sp && sp >= 1.0) return CaseTag::CaseII;
  return CaseTag::Neither;
}

}  // namespace fracneumann
