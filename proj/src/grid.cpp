#include "gx/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gx::spectral {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

Grid::Grid(double half_extent, int n) : L_(half_extent), n_(n) {
    if (!(L_ > 0.0)) throw std::invalid_argument("Grid: half extent must be positive");
    if (n_ < 16 || !is_pow2(n_))
        throw std::invalid_argument("Grid: N must be a power of two >= 16");

    const double h = 2.0 * L_ / n_;
    x_.resize(n_);
    for (int j = 0; j < n_; ++j) x_[j] = -L_ + j * h;

    const double scale = std::numbers::pi / L_;
    k_.resize(n_);
    for (int i = 0; i < n_; ++i) k_[i] = mode(i) * scale;
    k_max_ = (n_ / 2) * scale;
}

GridPtr make_grid(double half_extent, int n) {
    return std::make_shared<const Grid>(half_extent, n);
}

} // namespace gx::spectral
