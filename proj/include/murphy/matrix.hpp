#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "murphy/rational.hpp"

namespace murphy {

// Dense matrix of exact rationals.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    // Exact rank over the rationals.
    std::size_t rank() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

// Reduced row echelon form together with the pivot columns.
struct Rref {
    RatMatrix mat;
    std::vector<std::size_t> pivot_cols;
};
Rref rref(const RatMatrix& m);

// Solution of A x = b: a particular solution (free variables set to 0) and a
// basis of the kernel of A. Empty optional when the system is inconsistent.
struct LinearSolution {
    std::vector<Rat> particular;
    std::vector<std::vector<Rat>> kernel_basis;
};
std::optional<LinearSolution> solve_linear(const RatMatrix& a, const std::vector<Rat>& b);

// Basis of the kernel of A (RREF free-column vectors, ascending free column).
std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& a);

}  // namespace murphy
