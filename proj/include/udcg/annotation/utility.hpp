#pragma once

#include <string_view>

namespace udcg::annotation {

// Probability that the model does not abstain given only an irrelevant
// passage: 1 - p(NO-RESPONSE).
double distracting_effect(double p_no_response);

// Signed passage utility: +(1 - p) for a relevant passage, -(1 - p)
// otherwise. Throws InvariantError when p is outside [0, 1].
double utility(bool relevant, double p_no_response);

enum class DistractorClass { kWeak, kIntermediate, kHard };

inline constexpr double kWeakDistractorMax = 0.2;
inline constexpr double kHardDistractorMin = 0.8;

std::string_view to_string(DistractorClass c);

// Weak when the distracting effect |u| < 0.2, hard when |u| > 0.8.
// Throws InvariantError for a positive utility.
DistractorClass classify_distractor(double u);

}  // namespace udcg::annotation
