#include "catena/loads.hpp"

#include <cmath>
#include <stdexcept>

namespace catena {

namespace {

void check_intensity(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument(std::string("load intensity ") + name +
                                    " must be finite and non-negative");
    }
}

}  // namespace

LoadSpec::LoadSpec(double g_, double p_, double w_, double h_) : g(g_), p(p_), w(w_), h(h_) {
    check_intensity(g, "g");
    check_intensity(p, "p");
    check_intensity(w, "w");
    check_intensity(h, "h");
}

LoadSample evaluate(const LoadSpec& spec, double alpha) {
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    const double ac = std::fabs(c);
    LoadSample out;
    out.f_n = spec.g * c - (spec.p + spec.w) * ac * c - spec.h;
    out.f_t = spec.g * s - spec.p * ac * s;
    return out;
}

double fn_derivative(const LoadSpec& spec, double alpha) {
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    return -spec.g * s + 2.0 * (spec.p + spec.w) * std::fabs(c) * s;
}

}  // namespace catena
