#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ergopt {

/**
 * Real function on [0,1] sampled at the uniform grid x_i = i/n_cells and
 * evaluated elsewhere by piecewise-linear interpolation. Values are fixed
 * after construction.
 */
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(size_t n_cells, double constant, double alpha);
    GridFunction(std::vector<double> values, double alpha); // size = n_cells + 1

    size_t n_cells() const { return values_.empty() ? 0 : values_.size() - 1; }
    double alpha() const { return alpha_; }
    const std::vector<double>& values() const { return values_; }
    double node(size_t i) const { return static_cast<double>(i) / static_cast<double>(n_cells()); }

    double operator()(double x) const;

    double max_value() const;
    double min_value() const;
    /// Exact supremum over [lo,hi] of the interpolant (attained at a node or
    /// an interval endpoint).
    double sup_on(double lo, double hi) const;

    void write_csv(const std::string& path) const;

private:
    std::vector<double> values_;
    double alpha_ = 1.0;
};

/// Lower bound on the alpha-Hoelder seminorm from sampled node pairs:
/// exhaustive for n_cells <= 1024, stratified plus seeded-random above.
double grid_seminorm_estimate(const GridFunction& f);

} // namespace ergopt
