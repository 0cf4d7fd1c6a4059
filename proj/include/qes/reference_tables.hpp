// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Reference values for the two tabulated families, stored as printed.
// Each cell carries a status: AUTHORITATIVE cells are reproduction targets,
// DISPUTED cells are compared and reported but adjudicated by the oracles.

#pragma once

#include <array>
#include <cmath>
#include <string_view>

namespace qes::reference {

inline constexpr int kVersion = 1;

enum class Status { Authoritative, Disputed };

inline constexpr std::string_view status_name(Status s) {
  return s == Status::Authoritative ? "AUTHORITATIVE" : "DISPUTED";
}

/// E = -alpha c + beta / c + gamma with c = cbrt(A + B sqrt(S)); `exact` is
/// used instead when the entry is rational.
struct Radical {
  double alpha = 0.0;
  double A = 0.0;
  double B = 0.0;
  double S = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double exact = NAN;

  double value() const {
    if (!std::isnan(exact)) return exact;
    const double c = std::cbrt(A + B * std::sqrt(S));
    return -alpha * c + beta / c + gamma;
  }
};

struct SquareRootRow {
  int n_r;
  int kappa;
  std::string_view label;
  double a3;
  Status a3_status;
  Radical energy;
};

// mu = 1, a1 = a2 = 1
inline const std::array<SquareRootRow, 15>& square_root_table() {
  static const Radical r02{1.0 / 20, 118, 30, 35, 13.0 / 10, 9.0 / 10};
  static const Radical r03{1.0 / 34, 433, 204, 7, 47.0 / 34, 16.0 / 17};
  static const Radical r04{1.0 / 52, 1126, 390, 11, 37.0 / 26, 25.0 / 26};
  static const Radical r05{1.0 / 74, 2413, 222, 143, 107.0 / 74, 36.0 / 37};
  constexpr auto A = Status::Authoritative;
  constexpr auto D = Status::Disputed;
  static const std::array<SquareRootRow, 15> rows{{
      {0, 1, "1s1/2", 2.531648042, A, {1.0 / 10, 13, 10, 15, 11.0 / 10, 4.0 / 5}},
      {0, 2, "1p3/2", 4.247765159, A, r02},
      {0, 3, "1d5/2", 6.107053526, A, r03},
      {0, 4, "1f7/2", 8.087930004, A, r04},
      {0, 5, "1g9/2", 10.17558343, A, r05},
      {1, 1, "2s1/2", 2.262287002, D, {1.0 / 29, 383, 290, 6, 71.0 / 29, 25.0 / 29}},
      {1, 2, "2p3/2", 4.201005545, D, {1.0 / 53, 1919, 1484, 3, 143.0 / 53, 49.0 / 53}},
      {1, 3, "2d5/2", 6.285744349, D, {0, 0, 0, 0, 0, 0, 4.0 / 5}},
      {1, 4, "2f7/2", 8.494170316, D, {1.0 / 125, 13439, 2750, 30, 359.0 / 125, 121.0 / 125}},
      {1, 5, "2g9/2", 10.81102582, D, {1.0 / 173, 26879, 4498, 42, 503.0 / 173, 169.0 / 173}},
      {2, 1, "3s1/2", 2.903513638, D, r02},
      {2, 2, "3p3/2", 5.185092156, D, r03},
      {2, 3, "3d5/2", 7.592941604, D, r04},
      {2, 4, "3f7/2", 10.11211386, D, r05},
      {2, 5, "3g9/2", 12.73121312, D, {1.0 / 100, 4558, 350, 195, 73.0 / 50, 49.0 / 50}},
  }};
  return rows;
}

struct ThirdRootRow {
  int n_r;
  int kappa;
  std::string_view label;  // as printed
  double a4;
  double a5;
  double energy;
};

inline constexpr Status kThirdRootEnergyStatus = Status::Authoritative;
inline constexpr Status kThirdRootConstraintStatus = Status::Disputed;

// mu = 1, a1 = a2 = a3 = 2
inline constexpr std::array<ThirdRootRow, 15> kThirdRootTable{{
    {0, 1, "1s1/2", 1.958333333, -0.8333333333, 0.0},
    {0, 2, "1p3/2", 2.960561941, -1.153142721, 0.1242218925},
    {0, 3, "1d5/2", 4.000970707, -1.400062497, 0.2012486748},
    {0, 4, "1f7/2", 5.072119166, -1.583630614, 0.2558964562},
    {0, 5, "1g9/2", 6.169422769, -1.709933223, 0.2976807024},
    {1, 1, "2s1/2", 1.818578964, -2.135565865, 0.04969611507},
    {1, 2, "2p3/2", 2.798193832, -2.734248685, 0.1533707648},
    {1, 3, "2d5/2", 3.823365431, -3.211896333, 0.2213237925},
    {1, 4, "2d5/2", 4.882868288, -3.597655799, 0.2709662658},
    {1, 5, "2g9/2", 5.970673184, -3.906627168, 0.3096166374},
    {2, 1, "3s1/2", 1.645358882, -3.718197892, 0.09022131430},
    {2, 2, "3p3/2", 2.505019545, -5.086724151, 0.1787860494},
    {2, 3, "3d5/2", 3.452841027, -6.224631833, 0.2394325294},
    {2, 4, "3f7/2", 4.456655401, -7.189499169, 0.2848409032},
    {2, 5, "3g9/2", 5.501066171, -8.021053784, 0.3207569813},
}};

}  // namespace qes::reference
