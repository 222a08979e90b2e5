/* Copyright 2026 The SFSPN Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <vector>

#include "sfspn/parallel.hpp"

using namespace sfspn;

TEST(Parallel, ThreadCountFromEnvironment) {
  setenv("SFSPN_THREADS", "3", 1);
  EXPECT_EQ(thread_count(), 3u);
  setenv("SFSPN_THREADS", "0", 1);
  EXPECT_GE(thread_count(), 1u);
  setenv("SFSPN_THREADS", "abc", 1);
  EXPECT_GE(thread_count(), 1u);
  unsetenv("SFSPN_THREADS");
  EXPECT_GE(thread_count(), 1u);
}

TEST(Parallel, VisitsEachIndexOnce) {
  for (const char* workers : {"1", "4", "16"}) {
    setenv("SFSPN_THREADS", workers, 1);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  unsetenv("SFSPN_THREADS");
}

TEST(Parallel, EmptyRangeAndExceptions) {
  parallel_for(0, [](std::size_t) { FAIL(); });
  setenv("SFSPN_THREADS", "2", 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  unsetenv("SFSPN_THREADS");
}
