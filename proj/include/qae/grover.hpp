#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <vector>

namespace qae {

using cplx = std::complex<double>;

/// Amplitude a = |Pi psi| together with abar = sqrt(1 - a^2) and theta = arcsin(a).
struct Amplitude {
    double a;
    double abar;
    double theta;

    explicit Amplitude(double value);
};

enum class GroverLabel { Psi, PsiPerp, Pi, PiPerp };

std::string_view to_string(GroverLabel s);
bool in_psi_basis(GroverLabel s);

/// Row-major 2x2 complex matrix.
struct Mat2C {
    std::array<cplx, 4> m{};

    cplx& operator()(int r, int c) { return m[static_cast<size_t>(2 * r + c)]; }
    const cplx& operator()(int r, int c) const { return m[static_cast<size_t>(2 * r + c)]; }

    static Mat2C identity();
    Mat2C operator*(const Mat2C& o) const;
    Mat2C adjoint() const;
};

/// Coefficients of psi on (Pi, PiPerp). a=0 and a=1 follow the convention
/// PiPerp := psi resp. Pi := psi, so the result is always (a, abar).
std::pair<double, double> decompose_psi(double a);

Mat2C reflection(double a);
Mat2C phase_rotation(double phi);

/// prod_{j=1}^{d-1} (R e^{i phi_j Z}) R with R = [[a, abar], [abar, -a]].
Mat2C qsp_unitary(double a, const std::vector<double>& phases);

/// Largest entrywise deviation of U U^dagger from the identity.
double unitarity_defect(const Mat2C& u);

}  // namespace qae
