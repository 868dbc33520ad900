/* Copyright 2026 The Memotion Authors. All Rights Reserved.

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
// Reader for the scikit-learn metric fixture shared by the unit and
// acceptance tests.

#ifndef MEMOTION_TESTS_METRIC_FIXTURE_H_
#define MEMOTION_TESTS_METRIC_FIXTURE_H_

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace memotion::testing {

struct MetricCase {
  size_t classes = 0;
  std::vector<int> gold;
  std::vector<int> pred;
  double macro_f1 = 0;
  double micro_f1 = 0;
};

inline std::vector<MetricCase> LoadMetricCases(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<MetricCase> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    MetricCase c;
    size_t n = 0;
    ss >> c.classes >> n;
    c.gold.resize(n);
    c.pred.resize(n);
    for (int& g : c.gold) ss >> g;
    for (int& p : c.pred) ss >> p;
    ss >> c.macro_f1 >> c.micro_f1;
    if (!ss) throw std::runtime_error("malformed metric case: " + line);
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace memotion::testing

#endif  // MEMOTION_TESTS_METRIC_FIXTURE_H_
