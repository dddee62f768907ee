// Copyright 2026 The qaoa-girth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Published reference values for MaxCut on large-girth regular graphs:
// best known angles up to p = 17 and their optimal nu, extrapolated angles
// for p = 18..20 and the lower bounds they give. Values carry 4 decimals.

#pragma once

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaoa_girth/core.hpp"

namespace qaoa_girth::published {

struct AngleRow {
  int p;
  std::vector<double> gamma;
  std::vector<double> beta;
};

/// Optimal nu for p = 1..17.
inline const std::vector<double>& optimal_values() {
  static const std::vector<double> v{0.3033, 0.4075, 0.4726, 0.5157, 0.5476, 0.5721, 0.5915, 0.6073, 0.6203, 0.6314, 0.6408, 0.6490, 0.6561, 0.6623, 0.6679, 0.6729, 0.6773};
  return v;
}

/// Lower bounds on the optimal nu for p = 18, 19, 20.
inline const std::vector<double>& lower_bound_values() {
  static const std::vector<double> v{0.6813, 0.6848, 0.6879};
  return v;
}

/// Best known angles for p = 1..17 (p = 1 is exact).
inline const std::vector<AngleRow>& optimal_angles() {
  static const std::vector<AngleRow> rows{
      {1,
       {0.5},
       {std::numbers::pi / 8}},
      {2,
       {0.3817, 0.6655},
       {0.4960, 0.2690}},
      {3,
       {0.3297, 0.5688, 0.6406},
       {0.5500, 0.3675, 0.2109}},
      {4,
       {0.2949, 0.5144, 0.5586, 0.6429},
       {0.5710, 0.4176, 0.3028, 0.1729}},
      {5,
       {0.2705, 0.4804, 0.5074, 0.5646, 0.6397},
       {0.5899, 0.4492, 0.3559, 0.2643, 0.1486}},
      {6,
       {0.2528, 0.4531, 0.4750, 0.5146, 0.5650, 0.6392},
       {0.6004, 0.4670, 0.3880, 0.3176, 0.2325, 0.1291}},
      {7,
       {0.2383, 0.4327, 0.4516, 0.4830, 0.5147, 0.5686, 0.6393},
       {0.6085, 0.4810, 0.4090, 0.3534, 0.2857, 0.2080, 0.1146}},
      {8,
       {0.2268, 0.4162, 0.4332, 0.4608, 0.4818, 0.5179, 0.5717, 0.6393},
       {0.6151, 0.4906, 0.4244, 0.3780, 0.3224, 0.2606, 0.1884, 0.1030}},
      {9,
       {0.2172, 0.4020, 0.4187, 0.4438, 0.4592, 0.4838, 0.5212, 0.5754, 0.6398},
       {0.6196, 0.4973, 0.4354, 0.3956, 0.3481, 0.2973, 0.2390, 0.1717, 0.0934}},
      {10,
       {0.2089, 0.3902, 0.4066, 0.4305, 0.4423, 0.4604, 0.4858, 0.5256, 0.5789, 0.6402},
       {0.6235, 0.5029, 0.4437, 0.4092, 0.3673, 0.3246, 0.2758, 0.2208, 0.1578, 0.0855}},
      {11,
       {0.2019, 0.3799, 0.3963, 0.4196, 0.4291, 0.4431, 0.4611, 0.4895, 0.5299, 0.5821, 0.6406},
       {0.6268, 0.5070, 0.4502, 0.4195, 0.3822, 0.3451, 0.3036, 0.2571, 0.2051, 0.1459, 0.0788}},
      {12,
       {0.1958, 0.3708, 0.3875, 0.4103, 0.4185, 0.4297, 0.4430, 0.4639, 0.4933, 0.5343, 0.5851, 0.6410},
       {0.6293, 0.5103, 0.4553, 0.4275, 0.3937, 0.3612, 0.3248, 0.2849, 0.2406, 0.1913, 0.1356, 0.0731}},
      {13,
       {0.1903, 0.3627, 0.3797, 0.4024, 0.4096, 0.4191, 0.4290, 0.4450, 0.4668, 0.4975, 0.5385, 0.5878, 0.6414},
       {0.6315, 0.5130, 0.4593, 0.4340, 0.4028, 0.3740, 0.3417, 0.3068, 0.2684, 0.2260, 0.1792, 0.1266, 0.0681}},
      {14,
       {0.1855, 0.3555, 0.3728, 0.3954, 0.4020, 0.4103, 0.4179, 0.4304, 0.4471, 0.4703, 0.5017, 0.5425, 0.5902, 0.6418},
       {0.6334, 0.5152, 0.4627, 0.4392, 0.4103, 0.3843, 0.3554, 0.3243, 0.2906, 0.2535, 0.2131, 0.1685, 0.1188, 0.0638}},
      {15,
       {0.1811, 0.3489, 0.3667, 0.3893, 0.3954, 0.4028, 0.4088, 0.4189, 0.4318, 0.4501, 0.4740, 0.5058, 0.5462, 0.5924, 0.6422},
       {0.6349, 0.5169, 0.4655, 0.4434, 0.4163, 0.3927, 0.3664, 0.3387, 0.3086, 0.2758, 0.2402, 0.2015, 0.1589, 0.1118, 0.0600}},
      {16,
       {0.1771, 0.3430, 0.3612, 0.3838, 0.3896, 0.3964, 0.4011, 0.4095, 0.4197, 0.4343, 0.4532, 0.4778, 0.5099, 0.5497, 0.5944, 0.6425},
       {0.6363, 0.5184, 0.4678, 0.4469, 0.4213, 0.3996, 0.3756, 0.3505, 0.3234, 0.2940, 0.2624, 0.2281, 0.1910, 0.1504, 0.1056, 0.0566}},
      {17,
       {0.1735, 0.3376, 0.3562, 0.3789, 0.3844, 0.3907, 0.3946, 0.4016, 0.4099, 0.4217, 0.4370, 0.4565, 0.4816, 0.5138, 0.5530, 0.5962, 0.6429},
       {0.6375, 0.5197, 0.4697, 0.4499, 0.4255, 0.4054, 0.3832, 0.3603, 0.3358, 0.3092, 0.2807, 0.2501, 0.2171, 0.1816, 0.1426, 0.1001, 0.0536}},
  };
  return rows;
}

/// Extrapolated angles for p = 18..20.
inline const std::vector<AngleRow>& lower_bound_angles() {
  static const std::vector<AngleRow> rows{
      {18,
       {0.1694, 0.3318, 0.3513, 0.3745, 0.3795, 0.3858, 0.3886, 0.3943, 0.4007, 0.4080, 0.4201, 0.4410, 0.4591, 0.4849, 0.5178, 0.5579, 0.5999, 0.6434},
       {0.6412, 0.5232, 0.4726, 0.4533, 0.4295, 0.4104, 0.3895, 0.3683, 0.3457, 0.3213, 0.2956, 0.2680, 0.2387, 0.2073, 0.1730, 0.1369, 0.0949, 0.0510}},
      {19,
       {0.1662, 0.3270, 0.3470, 0.3704, 0.3752, 0.3814, 0.3835, 0.3882, 0.3931, 0.3972, 0.4064, 0.4260, 0.4517, 0.4620, 0.4885, 0.5219, 0.5619, 0.6025, 0.6438},
       {0.6425, 0.5245, 0.4743, 0.4556, 0.4327, 0.4147, 0.3949, 0.3752, 0.3543, 0.3318, 0.3082, 0.2831, 0.2566, 0.2287, 0.1983, 0.1653, 0.1307, 0.0903, 0.0486}},
      {20,
       {0.1632, 0.3224, 0.3430, 0.3666, 0.3714, 0.3775, 0.3789, 0.3828, 0.3865, 0.3875, 0.3942, 0.4129, 0.4376, 0.4541, 0.4649, 0.4921, 0.5259, 0.5659, 0.6051, 0.6442},
       {0.6438, 0.5258, 0.4758, 0.4577, 0.4355, 0.4184, 0.3996, 0.3812, 0.3616, 0.3407, 0.3189, 0.2958, 0.2716, 0.2466, 0.2194, 0.1899, 0.1581, 0.1251, 0.0862, 0.0464}},
  };
  return rows;
}

inline const AngleRow* find_row(const std::vector<AngleRow>& rows, int p) {
  for (const auto& r : rows) {
    if (r.p == p) return &r;
  }
  return nullptr;
}

/// Published optimal angles at depth p (1..17).
inline QaoaParams optimal_params(int p) {
  const AngleRow* r = find_row(optimal_angles(), p);
  if (r == nullptr) throw std::invalid_argument("no published optimal angles for p = " + std::to_string(p));
  return QaoaParams(r->gamma, r->beta, 2);
}

/// Extrapolated angles at depth p (18..20).
inline QaoaParams lower_bound_params(int p) {
  const AngleRow* r = find_row(lower_bound_angles(), p);
  if (r == nullptr) throw std::invalid_argument("no published lower-bound angles for p = " + std::to_string(p));
  return QaoaParams(r->gamma, r->beta, 2);
}

inline std::optional<double> optimal_value(int p) {
  if (p < 1 || p > static_cast<int>(optimal_values().size())) return std::nullopt;
  return optimal_values()[p - 1];
}

inline std::optional<double> lower_bound_value(int p) {
  if (p < 18 || p > 20) return std::nullopt;
  return lower_bound_values()[p - 18];
}

}  // namespace qaoa_girth::published
