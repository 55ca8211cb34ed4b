#include "dfie/media.hpp"

#include "dfie/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dfie {

bool is_passive(Complex value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) return false;
    return value.imag() > 0.0 || (value.imag() == 0.0 && value.real() > 0.0);
}

void check_passive(const Medium& m, const std::string& prefix) {
    if (!is_passive(m.epsilon)) {
        throw InvalidMaterialError(prefix + "epsilon", "violates passivity (need Im > 0 or real positive)");
    }
    if (!is_passive(m.mu)) {
        throw InvalidMaterialError(prefix + "mu", "violates passivity (need Im > 0 or real positive)");
    }
}

Complex refractive_factor(const Medium& m) {
    Complex s = std::sqrt(m.epsilon * m.mu);
    if (s.imag() < 0.0) s = -s;
    if (s.imag() == 0.0 && s.real() < 0.0) s = -s;
    return s;
}

Complex wavenumber(Real omega, const Medium& m) {
    check_passive(m);
    if (omega == 0.0) return Complex{0.0};
    return omega * refractive_factor(m);
}

int default_n_max(Real omega, const Medium& exterior, const Medium& interior) {
    const Real s = std::max(std::abs(refractive_factor(exterior)), std::abs(refractive_factor(interior)));
    return std::max(4, static_cast<int>(std::ceil(omega * s)) + 12);
}

int ProblemSetup::n_max() const {
    return n_max_override ? *n_max_override : default_n_max(omega, exterior, interior);
}

ProblemSetup validate_setup(ProblemSetup p) {
    if (!std::isfinite(p.omega) || p.omega < 0.0) {
        throw InvalidMaterialError("omega", "must be finite and non-negative");
    }
    check_passive(p.exterior, "exterior.");
    check_passive(p.interior, "interior.");
    if (p.n_max_override && *p.n_max_override < 1) {
        throw InvalidMaterialError("n_max", "must be at least 1");
    }
    p.n_max_override = p.n_max();
    return p;
}

ProblemSetup dual_setup(const ProblemSetup& p) {
    ProblemSetup d = p;
    std::swap(d.exterior.epsilon, d.exterior.mu);
    std::swap(d.interior.epsilon, d.interior.mu);
    return d;
}

}  // namespace dfie
