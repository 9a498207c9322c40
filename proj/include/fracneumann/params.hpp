#pragma once

#include <stdexcept>
#include <string>

namespace fracneumann {

/// Thrown for invalid user input (bad parameters, unmet preconditions).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fractional order s, integrability exponent p and spatial dimension N.
/// The normalizing constant of the operator is fixed to 1.
struct FracParams {
  int dim = 1;
  double s = 0.5;
  double p = 2.0;

  double sp() const { return s * p; }
  /// Exponent N + sp of the kernel |x - y|^{-(N+sp)}.
  double kernel_exponent() const { return dim + s * p; }
  void validate() const;
};

enum class CaseTag { CaseI, CaseII, Neither };

std::string to_string(CaseTag tag);

/// p*_s = Np/(N - ps) when N > ps, +inf otherwise.
double critical_exponent(const FracParams& params);

/// CaseI: N < sp and p >= 2.  CaseII: N >= sp >= 1.  Neither otherwise.
CaseTag case_tag(const FracParams& params);

}  // namespace fracneumann
