// Copyright 2026 The STAD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared fixtures for the unit tests.

#ifndef STAD_TESTS_HELPERS_HPP_
#define STAD_TESTS_HELPERS_HPP_

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include <unistd.h>

#include <Eigen/Dense>

namespace testing {

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("stad_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

// Random probability vector; `ties` forces a few equal entries.
inline Eigen::VectorXd random_distribution(std::mt19937_64& rng, int m, bool ties = false) {
  std::gamma_distribution<double> gamma(0.5, 1.0);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v[i] = gamma(rng) + 1e-9;
  if (ties && m >= 2) {
    std::uniform_int_distribution<int> pick(0, m - 1);
    const int a = pick(rng);
    const int b = pick(rng);
    v[b] = v[a];
    if (m >= 3) v[pick(rng)] = v[a];
  }
  return v / v.sum();
}

}  // namespace testing

#endif  // STAD_TESTS_HELPERS_HPP_
