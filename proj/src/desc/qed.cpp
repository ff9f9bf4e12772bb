//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/desc/qed.hpp"

#include <cmath>

namespace covgen::desc {
namespace {

struct AdsParams {
  double a, b, c, d, e, f, dmax;
};

// Published asymmetric-double-sigmoid fits, one per property channel.
constexpr AdsParams kAds[8] = {
    {2.817065973, 392.5754953, 290.7489764, 2.419764353, 49.22325677,
     65.37051707, 104.98055614},  // mw
    {3.172690585, 137.8624751, 2.534937431, 4.581497897, 0.822739154,
     0.576295591, 131.31866035},  // logp
    {2.948620388, 160.4605972, 3.615294657, 4.435986202, 0.290141953,
     1.300669958, 148.77630464},  // hba
    {1.618662227, 1010.051101, 0.985094388, 0.000000001, 0.713820843,
     0.920922555, 258.16326158},  // hbd
    {1.876861559, 125.2232657, 62.90773554, 87.83366614, 12.01999824,
     28.51324732, 104.56861672},  // psa
    {0.010000000, 272.4121427, 2.558379970, 1.565547684, 1.271567166,
     2.758063707, 105.44204028},  // rotb
    {3.217788970, 957.7374108, 2.274627939, 0.000000001, 1.317690384,
     0.375760881, 312.33726097},  // arom
    {0.010000000, 1199.094025, -0.09002883, 0.000000001, 0.185904477,
     0.875193782, 417.72531400},  // alerts
};

constexpr double kFloor = 1e-6;

double ads(const AdsParams &p, double x) {
  const double rise = p.b / (1.0 + std::exp(-(x - p.c + p.d / 2.0) / p.e));
  const double fall = 1.0 - 1.0 / (1.0 + std::exp(-(x - p.c - p.d / 2.0) / p.f));
  return p.a + rise * fall;
}

}  // namespace

double qed_desirability(int index, double value) {
  const AdsParams &p = kAds[index];
  const double d = ads(p, value) / p.dmax;
  return std::max(kFloor, std::min(1.0, d));
}

double qed(const PropertyVector &p) {
  const double values[8] = {p.mw,
                            p.logp,
                            static_cast<double>(p.hba),
                            static_cast<double>(p.hbd),
                            p.psa,
                            static_cast<double>(p.rotb),
                            static_cast<double>(p.arom),
                            static_cast<double>(p.alerts)};
  double log_sum = 0.0;
  for (int i = 0; i < 8; ++i) log_sum += std::log(qed_desirability(i, values[i]));
  return std::exp(log_sum / 8.0);
}

double qed(const chem::MolecularGraph &mol) {
  return qed(compute_properties(mol));
}

}  // namespace covgen::desc
