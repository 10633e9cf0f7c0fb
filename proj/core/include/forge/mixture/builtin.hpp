#pragma once

#include <vector>

#include "forge/mixture/spec.hpp"
#include "forge/mixture/stages.hpp"

namespace forge::mixture {

// Open X-Embodiment mixture used for VLA pre-training: 23 datasets with
// training percentages (they sum to 99.98).
MixtureSpec oxe_vla_mixture();

// Two-stage LLaVA v1.5 mixture: 558K captioning examples, then the 665K
// instruct stage with its six itemized sources (which sum to 610K).
std::vector<StageSpec> llava_v15_stages();

}  // namespace forge::mixture
