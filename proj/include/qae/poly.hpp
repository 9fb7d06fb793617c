#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace qae {

enum class Family { Chebyshev, Line, Erf, Hybrid, FixedPointJ, FixedPointK, Monomial, Custom };
enum class Parity { Even, Odd };
enum class Kind { Pellian, SemiPellian };
enum class PolyMode { Ideal, Polynomial };

std::string_view to_string(Family f);
std::string_view to_string(PolyMode m);

struct SupNormCertificate {
    std::size_t grid_size = 0;
    double max_error = 0.0;
    double target = 0.0;
    bool pass = false;
};

/// Family specific parameters; unused fields stay zero.
struct PolyParams {
    double k = 0.0;
    double eta = 0.0;
    double tau = 0.0;
    double a_mid = 0.0;
    double kappa = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int l = 0;
    int base_degree = 0;  // degree the construction started from
};

using BatchEval = std::function<void(const double*, double*, std::size_t)>;

/// Fixed-parity polynomial that can be sampled from. Immutable once built.
struct PolySpec {
    Family family = Family::Custom;
    Parity parity = Parity::Odd;
    Kind kind = Kind::Pellian;
    int degree = 1;
    PolyParams params;
    std::function<double(double)> value;  // empty for magnitude-only families
    std::function<double(double)> p2_raw;
    BatchEval value_batch;               // optional fast path for grids
    std::optional<SupNormCertificate> certificate;

    bool has_value() const { return static_cast<bool>(value); }
    int parity_sign() const { return parity == Parity::Even ? 1 : -1; }
    double eval(double x) const;
    /// |P(x)|^2 clamped into [0,1]; clamps larger than 1e-9 are counted as defects.
    double p2(double x) const;
    /// |Q(x)|^2 of the Pell partner, (1 - p2) / (1 - x^2).
    double q2(double x) const;
    void eval_batch(const double* x, double* out, std::size_t m) const;
};

/// Number of p2 clamps that exceeded 1e-9 since process start.
std::size_t clamp_defects();

double cheb_T(int d, double x);
/// T_l(y) / T_l(z) for z >= 1, stable when T_l(z) overflows.
double cheb_T_ratio(int l, double y, double z);

PolySpec build_chebyshev(int d);
PolySpec build_monomial();

/// Smallest odd l >= ln(2/sqrt(eta)) / kappa.
int repair_poly_degree(double kappa, double eta);
std::pair<PolySpec, PolySpec> build_repair_pair(double kappa, double eta);

/// Even semi-Pellian P with P^2 close to (|x| - a_min)/(a_max - a_min) on [a_min, a_max].
/// a_min = 0 is accepted.
PolySpec build_line_poly(double a_min, double a_max, double eta, PolyMode mode);

/// Odd P with |P(x) - erf(kx)| <= eta on [-2, 2].
PolySpec build_erf_poly(double k, double eta);
/// Same as build_erf_poly but memoized on (k, eta); safe for concurrent callers.
std::shared_ptr<const PolySpec> erf_poly_cached(double k, double eta);
/// Degree the erf search starts from: ceil(sqrt((k^2 + L) L)), L = ln(1/eta), made odd.
int erf_initial_degree(double k, double eta);

double kappa_of_tau(double tau);
double hybrid_lambda(double eta, double tau);

/// Threshold polynomial centred at a_mid. `relaxed` skips the a_mid >= kappa(tau)/k
/// precondition; boundedness on [-1,1] still holds for any a_mid >= 0.
PolySpec build_hybrid_poly(double tau, double eta, double k, double a_mid,
                           PolyMode mode = PolyMode::Polynomial, bool relaxed = false);

/// Grid check of |P| <= 1 + 1e-9 and parity on grid_points uniform points of [-1, 1].
SupNormCertificate verify_semi_pellian(const PolySpec& p, std::size_t grid_points);

}  // namespace qae
