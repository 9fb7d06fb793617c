#include "qae/grover.hpp"

#include <algorithm>
#include <cmath>

#include "qae/errors.hpp"

namespace qae {

Amplitude::Amplitude(double value) : a(value), abar(0.0), theta(0.0) {
    if (!(value >= 0.0 && value <= 1.0)) throw DomainError("amplitude outside [0,1]");
    abar = std::sqrt(std::max(0.0, 1.0 - a * a));
    theta = std::asin(a);
}

std::string_view to_string(GroverLabel s) {
    switch (s) {
        case GroverLabel::Psi: return "Psi";
        case GroverLabel::PsiPerp: return "PsiPerp";
        case GroverLabel::Pi: return "Pi";
        case GroverLabel::PiPerp: return "PiPerp";
    }
    return "?";
}

bool in_psi_basis(GroverLabel s) { return s == GroverLabel::Psi || s == GroverLabel::PsiPerp; }

Mat2C Mat2C::identity() {
    Mat2C r;
    r.m = {cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)};
    return r;
}

Mat2C Mat2C::operator*(const Mat2C& o) const {
    Mat2C r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
    return r;
}

Mat2C Mat2C::adjoint() const {
    Mat2C r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

std::pair<double, double> decompose_psi(double a) {
    Amplitude amp(a);
    return {amp.a, amp.abar};
}

Mat2C reflection(double a) {
    Amplitude amp(a);
    Mat2C r;
    r.m = {cplx(amp.a), cplx(amp.abar), cplx(amp.abar), cplx(-amp.a)};
    return r;
}

Mat2C phase_rotation(double phi) {
    Mat2C r;
    r.m = {std::polar(1.0, phi), cplx(0.0), cplx(0.0), std::polar(1.0, -phi)};
    return r;
}

Mat2C qsp_unitary(double a, const std::vector<double>& phases) {
    const Mat2C R = reflection(a);
    Mat2C u = Mat2C::identity();
    for (double phi : phases) u = u * R * phase_rotation(phi);
    return u * R;
}

double unitarity_defect(const Mat2C& u) {
    const Mat2C p = u * u.adjoint();
    const Mat2C id = Mat2C::identity();
    double worst = 0.0;
    for (size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(p.m[k] - id.m[k]));
    return worst;
}

}  // namespace qae
