#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <doctest.h>

#include "abm/error.hpp"

namespace support {

inline Eigen::ArrayXd array(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::ArrayXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<double> vec(const Eigen::ArrayXd& a) { return {a.data(), a.data() + a.size()}; }

// Runs `f` and returns the ErrorKind it threw; fails the test if it did not throw abm::Error.
template <typename F>
abm::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const abm::Error& e) {
    return e.kind();
  }
  FAIL("expected abm::Error");
  return abm::ErrorKind::IoError;
}

template <typename F>
std::string error_message(F&& f) {
  try {
    f();
  } catch (const abm::Error& e) {
    return e.what();
  }
  FAIL("expected abm::Error");
  return {};
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() / ("abm_test_" + name)) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }
  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
    return file(name);
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace support
