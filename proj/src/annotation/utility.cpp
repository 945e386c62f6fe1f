#include "udcg/annotation/utility.hpp"

#include <cmath>
#include <string>

#include "udcg/core/error.hpp"

namespace udcg::annotation {

namespace {

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvariantError("p_no_response " + std::to_string(p) +
                         " outside [0, 1]");
}

}  // namespace

double distracting_effect(double p_no_response) {
  require_probability(p_no_response);
  return 1.0 - p_no_response;
}

double utility(bool relevant, double p_no_response) {
  const double magnitude = distracting_effect(p_no_response);
  return relevant ? magnitude : -magnitude;
}

std::string_view to_string(DistractorClass c) {
  switch (c) {
    case DistractorClass::kWeak:
      return "weak";
    case DistractorClass::kIntermediate:
      return "intermediate";
    case DistractorClass::kHard:
      return "hard";
  }
  return "?";
}

DistractorClass classify_distractor(double u) {
  if (!(u <= 0.0))
    throw InvariantError("utility " + std::to_string(u) +
                         " is not a distractor utility");
  const double de = -u;
  if (de < kWeakDistractorMax) return DistractorClass::kWeak;
  if (de > kHardDistractorMin) return DistractorClass::kHard;
  return DistractorClass::kIntermediate;
}

}  // namespace udcg::annotation
