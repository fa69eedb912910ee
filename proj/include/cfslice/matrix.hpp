#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cfslice {

// Dense row-major matrix, just enough for K x M coefficient tables.
template <typename T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, T init = T{})
      : rows_(rows), cols_(cols), d_(static_cast<std::size_t>(rows) * cols, init) {}

  T& operator()(int r, int c) { return d_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const {
    return d_[static_cast<std::size_t>(r) * cols_ + c];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::vector<T>& data() { return d_; }
  const std::vector<T>& data() const { return d_; }

  bool operator==(const Mat&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> d_;
};

using MatD = Mat<double>;
using MatU8 = Mat<std::uint8_t>;

}  // namespace cfslice
