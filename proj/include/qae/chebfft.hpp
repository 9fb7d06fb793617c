#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qae::chebfft {

/// Smallest n' >= n of the form 2^a 3^b 5^c; transforms of such sizes are fastest.
std::size_t good_size(std::size_t n);

/// First-kind Chebyshev node x_j = cos(pi (j + 1/2) / n).
double node(std::size_t j, std::size_t n);

/// Chebyshev coefficients of the degree n-1 interpolant through f at the n first-kind nodes.
std::vector<double> interpolate(const std::function<double(double)>& f, std::size_t n);

/// Values of sum_k c[k] T_k at the m first-kind nodes (m >= c.size()), in node order.
std::vector<double> values_on_nodes(const std::vector<double>& c, std::size_t m);

}  // namespace qae::chebfft
