#pragma once
//==============================================================================
// grid.hpp
// Uniform periodic grid on [-L, L). Owns the collocation abscissae and the
// wavenumber table in standard transform ordering; everything downstream
// (transforms, multipliers, interpolation) reads its metadata from here.
//==============================================================================

#include <memory>
#include <vector>

namespace gx::spectral {

class Grid {
public:
    // Throws std::invalid_argument unless L > 0 and N is a power of two >= 16.
    Grid(double half_extent, int n);

    double half_extent() const { return L_; }   // domain is [-L, L)
    double length() const { return 2.0 * L_; }
    int size() const { return n_; }
    double dx() const { return 2.0 * L_ / n_; }

    // x_j = -L + j * 2L/N, strictly increasing.
    const std::vector<double>& nodes() const { return x_; }

    // Wavenumbers in FFT slot order: k[i] = mode(i) * pi/L with
    // mode(i) = i for i < N/2 and i - N otherwise. Slot N/2 is the Nyquist mode.
    const std::vector<double>& wavenumbers() const { return k_; }
    int mode(int slot) const { return slot < n_ / 2 ? slot : slot - n_; }
    int nyquist_slot() const { return n_ / 2; }

    // Largest resolvable |k| (the Nyquist wavenumber magnitude).
    double k_max() const { return k_max_; }

    bool same_as(const Grid& other) const {
        return n_ == other.n_ && L_ == other.L_;
    }

private:
    double L_;
    int n_;
    double k_max_;
    std::vector<double> x_;
    std::vector<double> k_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double half_extent, int n);

} // namespace gx::spectral
