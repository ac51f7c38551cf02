// tests/unit/test_random.cpp

// Copyright 2026  The mtsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"
#include "mtsim/random.hpp"

#include <array>
#include <set>
#include <vector>

using mtsim::RandomStream;

TEST_CASE("same key gives the same draws") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.NextU64() == b.NextU64());
}

TEST_CASE("substreams do not depend on parent consumption") {
  RandomStream parent(7);
  const uint64_t first = parent.Substream(3).NextU64();
  parent.NextU64();
  parent.NextU64();
  CHECK(parent.Substream(3).NextU64() == first);
  CHECK(parent.Substream(4).NextU64() != first);
  CHECK(parent.Substream("en").NextU64() != parent.Substream("de").NextU64());
}

TEST_CASE("draws are frozen across platforms") {
  // Pure 64-bit integer arithmetic; these values must never change, or every
  // published corpus built with a given seed changes with them.
  RandomStream r(0);
  CHECK(r.NextU64() == 14643251067787443132ULL);
  CHECK(r.NextU64() == 6584517959097277142ULL);
  CHECK(r.NextU64() == 940319955588761361ULL);
  RandomStream named = RandomStream(42).Substream("simulate").Substream(3);
  CHECK(named.NextU64() == 5635512021359985118ULL);
}

TEST_CASE("Uniform stays in range") {
  RandomStream r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.Uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = r.Uniform(0.5, 4.0);
    CHECK(v >= 0.5);
    CHECK(v <= 4.0);
  }
  CHECK(r.Uniform(2.0, 2.0) == 2.0);
  CHECK(r.Uniform(3.0, 1.0) == 3.0);
}

TEST_CASE("Index is unbiased enough") {
  RandomStream r(9);
  std::array<int, 3> hist{};
  const int n = 30000;
  for (int i = 0; i < n; ++i) ++hist[r.Index(3)];
  double chi2 = 0.0;
  for (int h : hist) chi2 += (h - n / 3.0) * (h - n / 3.0) / (n / 3.0);
  // 2 degrees of freedom, p = 0.001 critical value 13.8.
  CHECK(chi2 < 13.8);
  CHECK_THROWS(r.Index(0));
}

TEST_CASE("Weighted never picks zero weights") {
  RandomStream r(5);
  const std::vector<double> w = {0.0, 1.0, 0.0, 3.0};
  std::set<size_t> seen;
  int three = 0;
  for (int i = 0; i < 4000; ++i) {
    const size_t k = r.Weighted(w);
    seen.insert(k);
    three += k == 3;
  }
  CHECK(seen == std::set<size_t>{1, 3});
  CHECK(three > 2800);
  CHECK(three < 3200);
  const std::vector<double> zero = {0.0, 0.0};
  CHECK_THROWS(r.Weighted(zero));
}
