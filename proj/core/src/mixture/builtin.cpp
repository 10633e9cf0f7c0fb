#include "forge/mixture/builtin.hpp"

namespace forge::mixture {

MixtureSpec oxe_vla_mixture() {
  return MixtureSpec({
      {"CMU Franka Exploration", 12.35},
      {"Berkeley Cable Routing", 9.88},
      {"Taco Play", 7.41},
      {"VIOLA", 7.41},
      {"Austin BUDS", 7.41},
      {"NYU Franka Play", 7.41},
      {"KAIST Non-Prehensile", 7.41},
      {"Jaco Play", 4.94},
      {"Toto", 4.94},
      {"Bridge V2", 2.47},
      {"RoboTurk", 2.47},
      {"Berkeley Autolab UR5", 2.47},
      {"Stanford Hydra", 2.47},
      {"Austin SAILOR", 2.47},
      {"Austin SIRIUS", 2.47},
      {"Berkeley RPT", 2.47},
      {"Stanford RoboCook", 2.47},
      {"IAMLab CMU Pickup", 2.47},
      {"UT Austin Mutex", 2.47},
      {"CMU Play Fusion", 2.47},
      {"Kuka", 2.06},
      {"Fractal", 1.34},
      {"FurnitureBench", 0.25},
  });
}

std::vector<StageSpec> llava_v15_stages() {
  return {
      StageSpec{StageId::captioning, {{"Captioning Mixture", 558'000}}, 558'000},
      StageSpec{StageId::instruct,
                {
                    {"LLaVa Synthetic Data", 158'000},
                    {"Standard VQA Data", 224'000},
                    {"Multiple Choice VQA Data", 50'000},
                    {"Captioning Data", 22'000},
                    {"Referring Expression Data", 116'000},
                    {"ShareGPT (Language-Only)", 40'000},
                },
                665'000},
  };
}

}  // namespace forge::mixture
