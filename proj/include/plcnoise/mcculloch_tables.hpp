#pragma once

#include <algorithm>
#include <cstddef>

// Quantile-spread lookup tables from J. H. McCulloch, "Simple consistent
// estimators of stable distribution parameters", Communications in
// Statistics - Simulation and Computation 15(4), 1109-1136 (1986).
// nu_alpha = (x95-x05)/(x75-x25) and nu_beta = (x95+x05-2*x50)/(x95-x05)
// index the alpha/beta tables; the quantile-spread table nu_c = IQR/gamma is
// indexed by (alpha, |beta|).  Entries above 1 in the beta table encode the
// estimator's clipping at the |beta| = 1 boundary.

namespace plcnoise::detail {

inline constexpr double kNuAlphaGrid[15] = {2.439, 2.5, 2.6, 2.7, 2.8, 3.0, 3.2, 3.5,
                                            4.0, 5.0, 6.0, 8.0, 10.0, 15.0, 25.0};
inline constexpr double kNuBetaGrid[7] = {0.0, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};

inline constexpr double kAlphaTable[15][7] = {
    {2.000, 2.000, 2.000, 2.000, 2.000, 2.000, 2.000},
    {1.916, 1.924, 1.924, 1.924, 1.924, 1.924, 1.924},
    {1.808, 1.813, 1.829, 1.829, 1.829, 1.829, 1.829},
    {1.729, 1.730, 1.737, 1.745, 1.745, 1.745, 1.745},
    {1.664, 1.663, 1.663, 1.668, 1.676, 1.676, 1.676},
    {1.563, 1.560, 1.553, 1.548, 1.547, 1.547, 1.547},
    {1.484, 1.480, 1.471, 1.460, 1.448, 1.438, 1.438},
    {1.391, 1.386, 1.378, 1.364, 1.337, 1.318, 1.318},
    {1.279, 1.273, 1.266, 1.250, 1.210, 1.184, 1.150},
    {1.128, 1.121, 1.114, 1.101, 1.067, 1.027, 0.973},
    {1.029, 1.021, 1.014, 1.004, 0.974, 0.935, 0.874},
    {0.896, 0.892, 0.884, 0.883, 0.855, 0.823, 0.769},
    {0.818, 0.812, 0.806, 0.801, 0.780, 0.756, 0.691},
    {0.698, 0.695, 0.692, 0.689, 0.676, 0.656, 0.595},
    {0.593, 0.590, 0.588, 0.586, 0.579, 0.563, 0.513}};

inline constexpr double kBetaTable[15][7] = {
    {0.0, 2.160, 1.000, 1.000, 1.000, 1.000, 1.000},
    {0.0, 1.592, 3.390, 1.000, 1.000, 1.000, 1.000},
    {0.0, 0.759, 1.800, 1.000, 1.000, 1.000, 1.000},
    {0.0, 0.482, 1.048, 1.694, 1.000, 1.000, 1.000},
    {0.0, 0.360, 0.760, 1.232, 2.229, 1.000, 1.000},
    {0.0, 0.253, 0.518, 0.823, 1.575, 1.000, 1.000},
    {0.0, 0.203, 0.410, 0.632, 1.244, 1.906, 1.000},
    {0.0, 0.165, 0.332, 0.499, 0.943, 1.560, 1.000},
    {0.0, 0.136, 0.271, 0.404, 0.689, 1.230, 2.195},
    {0.0, 0.109, 0.216, 0.323, 0.539, 0.827, 1.917},
    {0.0, 0.096, 0.190, 0.284, 0.472, 0.693, 1.759},
    {0.0, 0.082, 0.163, 0.243, 0.412, 0.601, 1.596},
    {0.0, 0.074, 0.147, 0.220, 0.377, 0.546, 1.482},
    {0.0, 0.064, 0.128, 0.191, 0.330, 0.478, 1.362},
    {0.0, 0.056, 0.112, 0.167, 0.285, 0.428, 1.274}};

// alpha runs 2.0 down to 0.5 by 0.1; |beta| runs over {0, 0.25, 0.5, 0.75, 1}.
inline constexpr double kScaleAlphaGrid[16] = {2.0, 1.9, 1.8, 1.7, 1.6, 1.5, 1.4, 1.3,
                                               1.2, 1.1, 1.0, 0.9, 0.8, 0.7, 0.6, 0.5};
inline constexpr double kScaleBetaGrid[5] = {0.0, 0.25, 0.5, 0.75, 1.0};

inline constexpr double kScaleTable[16][5] = {
    {1.908, 1.908, 1.908, 1.908, 1.908},
    {1.914, 1.915, 1.916, 1.918, 1.921},
    {1.921, 1.922, 1.927, 1.936, 1.947},
    {1.927, 1.930, 1.943, 1.961, 1.987},
    {1.933, 1.940, 1.962, 1.997, 2.043},
    {1.939, 1.952, 1.988, 2.045, 2.116},
    {1.946, 1.967, 2.022, 2.106, 2.211},
    {1.955, 1.984, 2.067, 2.188, 2.333},
    {1.965, 2.007, 2.125, 2.294, 2.491},
    {1.980, 2.040, 2.205, 2.435, 2.696},
    {2.000, 2.085, 2.311, 2.624, 2.973},
    {2.040, 2.149, 2.461, 2.886, 3.356},
    {2.098, 2.244, 2.676, 3.265, 3.912},
    {2.189, 2.392, 3.004, 3.844, 4.775},
    {2.337, 2.634, 3.542, 4.808, 6.247},
    {2.588, 3.073, 4.534, 6.636, 9.144}};

// Bilinear interpolation over an ascending grid; coordinates are clamped to
// the grid range and *clamped reports whether clamping occurred.
template <std::size_t Rows, std::size_t Cols>
inline double bilinear_lookup(const double (&table)[Rows][Cols],
                              const double (&row_grid)[Rows], const double (&col_grid)[Cols],
                              double r, double c, bool* clamped = nullptr) {
    auto locate = [](const double* grid, std::size_t n, double v, bool* clip) {
        if (v <= grid[0]) {
            if (clip && v < grid[0]) *clip = true;
            return std::pair<std::size_t, double>{0, 0.0};
        }
        if (v >= grid[n - 1]) {
            if (clip && v > grid[n - 1]) *clip = true;
            return std::pair<std::size_t, double>{n - 2, 1.0};
        }
        std::size_t i = 0;
        while (grid[i + 1] < v) ++i;
        return std::pair<std::size_t, double>{i, (v - grid[i]) / (grid[i + 1] - grid[i])};
    };
    const auto [i, ti] = locate(row_grid, Rows, r, clamped);
    const auto [j, tj] = locate(col_grid, Cols, c, clamped);
    const double top = table[i][j] * (1.0 - tj) + table[i][j + 1] * tj;
    const double bot = table[i + 1][j] * (1.0 - tj) + table[i + 1][j + 1] * tj;
    return top * (1.0 - ti) + bot * ti;
}

// The scale table's alpha axis descends; interpolate on the negated axis.
inline double scale_table_lookup(double alpha, double abs_beta, bool* clamped = nullptr) {
    static constexpr double neg_alpha[16] = {-2.0, -1.9, -1.8, -1.7, -1.6, -1.5, -1.4, -1.3,
                                             -1.2, -1.1, -1.0, -0.9, -0.8, -0.7, -0.6, -0.5};
    return bilinear_lookup(kScaleTable, neg_alpha, kScaleBetaGrid, -alpha, abs_beta, clamped);
}

} // namespace plcnoise::detail
