#include "murphy/matrix.hpp"

#include "murphy/errors.hpp"

namespace murphy {

namespace {

// Forward elimination on an augmented copy; returns pivot (row, col) list.
std::vector<std::pair<std::size_t, std::size_t>> eliminate(RatMatrix& m) {
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
        Rat inv = Rat(1) / m.at(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || is_zero(m.at(r, col))) continue;
            Rat f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.emplace_back(row, col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t RatMatrix::rank() const {
    RatMatrix copy = *this;
    return eliminate(copy).size();
}

Rref rref(const RatMatrix& m) {
    Rref out;
    out.mat = m;
    for (auto& [r, c] : eliminate(out.mat)) out.pivot_cols.push_back(c);
    return out;
}

std::optional<LinearSolution> solve_linear(const RatMatrix& a, const std::vector<Rat>& b) {
    MURPHY_CHECK(b.size() == a.rows(), "rhs size mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    auto pivots = eliminate(aug);
    for (auto& [r, c] : pivots)
        if (c == a.cols()) return std::nullopt;  // pivot in the rhs column

    std::vector<bool> is_pivot(a.cols(), false);
    LinearSolution sol;
    sol.particular.assign(a.cols(), Rat(0));
    for (auto& [r, c] : pivots) {
        is_pivot[c] = true;
        sol.particular[c] = aug.at(r, a.cols());
    }
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(a.cols(), Rat(0));
        v[free] = 1;
        for (auto& [r, c] : pivots) v[c] = -aug.at(r, free);
        sol.kernel_basis.push_back(std::move(v));
    }
    return sol;
}

std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& a) {
    auto sol = solve_linear(a, std::vector<Rat>(a.rows(), Rat(0)));
    MURPHY_CHECK(sol.has_value(), "homogeneous system cannot be inconsistent");
    return sol->kernel_basis;
}

}  // namespace murphy
