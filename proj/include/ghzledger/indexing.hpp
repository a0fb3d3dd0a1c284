#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace ghzledger {

/// Mixed-radix layout over a list of local dimensions, most significant
/// digit first. All tensor indexing in the library goes through this one
/// convention so that reports are reproducible bit for bit.
class ModeLayout {
 public:
  ModeLayout() = default;

  explicit ModeLayout(std::vector<int> dims) : dims_(std::move(dims)) {
    strides_.resize(dims_.size());
    total_ = 1;
    for (int i = static_cast<int>(dims_.size()) - 1; i >= 0; --i) {
      if (dims_[static_cast<size_t>(i)] < 1)
        throw std::invalid_argument("ModeLayout: dimensions must be >= 1");
      strides_[static_cast<size_t>(i)] = total_;
      total_ *= dims_[static_cast<size_t>(i)];
    }
  }

  int total() const { return total_; }
  int modes() const { return static_cast<int>(dims_.size()); }
  int dim(int mode) const { return dims_[static_cast<size_t>(mode)]; }
  int stride(int mode) const { return strides_[static_cast<size_t>(mode)]; }
  const std::vector<int>& dims() const { return dims_; }

  void decode(int flat, std::span<int> digits) const {
    for (size_t i = 0; i < dims_.size(); ++i) {
      digits[i] = flat / strides_[i];
      flat %= strides_[i];
    }
  }

  int encode(std::span<const int> digits) const {
    int flat = 0;
    for (size_t i = 0; i < dims_.size(); ++i) flat += digits[i] * strides_[i];
    return flat;
  }

 private:
  std::vector<int> dims_;
  std::vector<int> strides_;
  int total_ = 1;
};

}  // namespace ghzledger
