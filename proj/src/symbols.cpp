#include "dfie/symbols.hpp"

#include "dfie/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace dfie {

ModeVector curl(const ModeField& F, int n, Real r) {
    const Real lam = harmonic_lambda(n);
    const ModeVector& v = F.value;
    const ModeVector& d = F.deriv;
    return {-lam * v.h / r, -(d.h + v.h / r), -lam * v.f / r + d.g + v.g / r};
}

Complex divergence(const ModeField& F, int n, Real r) {
    return F.deriv.f + 2.0 * F.value.f / r - harmonic_lambda(n) * F.value.g / r;
}

ModeVector gradient(const ScalarMode& u, int n, Real r) {
    return {u.deriv, harmonic_lambda(n) * u.value / r, 0.0};
}

RadialKernel::RadialKernel(int n_top, Complex k, Real r, Side side)
    : n_top_(n_top), k_(k), r_(r), side_(side) {
    if (!(r > 0.0)) throw DomainError("radius must be positive");
    source_ = scaled_bessel(n_top, k);
    field_ = r == 1.0 ? source_ : scaled_bessel(n_top, k * r);
}

ScalarMode RadialKernel::single_layer(int L) const {
    const Real d = 2.0 * L + 1.0;
    if (side_ == Side::Exterior) {
        const Real p = std::pow(r_, -(L + 1));
        return {kI * source_.j[L] * field_.h[L] * p / d, kI * source_.j[L] * field_.xdh[L] * p / (r_ * d)};
    }
    const Real p = std::pow(r_, L);
    return {kI * source_.h[L] * field_.j[L] * p / d, kI * source_.h[L] * field_.xdj[L] * p / (r_ * d)};
}

ScalarMode RadialKernel::double_layer(int L) const {
    const Real d = 2.0 * L + 1.0;
    if (side_ == Side::Exterior) {
        const Real p = std::pow(r_, -(L + 1));
        return {kI * source_.xdj[L] * field_.h[L] * p / d, kI * source_.xdj[L] * field_.xdh[L] * p / (r_ * d)};
    }
    const Real p = std::pow(r_, L);
    return {kI * source_.xdh[L] * field_.j[L] * p / d, kI * source_.xdh[L] * field_.xdj[L] * p / (r_ * d)};
}

ModeVector LayerFields::curlcurl_S_V() const {
    return (-harmonic_lambda(n)) * grad_S_Y() + (k * k) * S_V.value;
}

ModeVector LayerFields::curlcurl_S_W() const {
    return (k * k) * S_W.value;
}

LayerFields layer_fields(int n, const RadialKernel& kernel) {
    if (n < 0) throw DomainError("degree must be non-negative");
    if (kernel.n_top() < n + 1) throw DomainError("radial kernel table too short");
    LayerFields L;
    L.n = n;
    L.r = kernel.r();
    L.k = kernel.k();
    L.S_Y = kernel.single_layer(n);
    L.D_Y = kernel.double_layer(n);

    const ScalarMode cn = kernel.single_layer(n);
    const ScalarMode cp = kernel.single_layer(n + 1);
    const ScalarMode cm = n > 0 ? kernel.single_layer(n - 1) : ScalarMode{};
    const Real lam = harmonic_lambda(n);
    const Real d = 2.0 * n + 1.0;

    L.S_W.value.h = cn.value;
    L.S_W.deriv.h = cn.deriv;

    for (int which = 0; which < 2; ++which) {
        const Complex m = which == 0 ? cm.value : cm.deriv;
        const Complex p = which == 0 ? cp.value : cp.deriv;
        ModeVector& sv = which == 0 ? L.S_V.value : L.S_V.deriv;
        ModeVector& sx = which == 0 ? L.S_X.value : L.S_X.deriv;
        sv.f = lam * (m - p) / d;
        sv.g = ((n + 1.0) * m + static_cast<Real>(n) * p) / d;
        sx.f = (static_cast<Real>(n) * m + (n + 1.0) * p) / d;
        sx.g = lam * (m - p) / d;
    }
    return L;
}

LayerFields layer_fields(int n, Complex k, Real r, Side side) {
    return layer_fields(n, RadialKernel(n + 1, k, r, side));
}

namespace {

struct OpInfo {
    TraceOp op;
    const char* name;
    bool tangential_in;
    bool tangential_out;
    Real jump;
};

constexpr std::array<OpInfo, 15> kOps{{
    {TraceOp::SingleLayer, "S", false, false, 0.0},
    {TraceOp::NormalDerivSingleLayer, "Sprime", false, false, -1.0},
    {TraceOp::DoubleLayer, "D", false, false, 1.0},
    {TraceOp::Hypersingular, "T", false, false, 0.0},
    {TraceOp::CrossSingleLayerTangential, "nxS_t", true, true, 0.0},
    {TraceOp::CrossSingleLayerNormal, "nxS_n", false, true, 0.0},
    {TraceOp::CrossGradSingleLayer, "nxgradS", false, true, 0.0},
    {TraceOp::MagneticDipole, "M", true, true, 1.0},
    {TraceOp::CrossCurlSingleLayerNormal, "nxcurlS_n", false, true, 0.0},
    {TraceOp::CrossCurlCurlSingleLayer, "nxcurlcurlS_t", true, true, 0.0},
    {TraceOp::DivSingleLayerTangential, "divS_t", true, false, 0.0},
    {TraceOp::DivSingleLayerNormal, "divS_n", false, false, -1.0},
    {TraceOp::NormalSingleLayerTangential, "ndotS_t", true, false, 0.0},
    {TraceOp::NormalSingleLayerNormal, "ndotS_n", false, false, 0.0},
    {TraceOp::NormalCurlSingleLayer, "ndotcurlS_t", true, false, 0.0},
}};

const OpInfo& info(TraceOp op) {
    for (const auto& i : kOps) {
        if (i.op == op) return i;
    }
    throw Error("unknown trace operator");
}

// n x F in (V, W) components.
void put_tangential(SymbolBlock& B, int col, const ModeVector& F) {
    B(0, col) = -F.h;
    B(1, col) = F.g;
}

}  // namespace

std::string_view to_string(TraceOp op) { return info(op).name; }

TraceOp trace_op_from_string(std::string_view name) {
    for (const auto& i : kOps) {
        if (name == i.name) return i.op;
    }
    throw Error("unknown trace operator '" + std::string(name) + "'");
}

bool has_tangential_input(TraceOp op) { return info(op).tangential_in; }
bool has_tangential_output(TraceOp op) { return info(op).tangential_out; }
Real jump_constant(TraceOp op) { return info(op).jump; }

SymbolBlock one_sided_trace(TraceOp op, int n, Complex k, Side side) {
    const OpInfo& oi = info(op);
    if (n < 0) throw DomainError("degree must be non-negative");
    if (n == 0 && (oi.tangential_in || oi.tangential_out)) {
        throw DomainError("tangential operator " + std::string(oi.name) + " has no degree-0 block");
    }
    const LayerFields L = layer_fields(n, k, 1.0, side);
    SymbolBlock B(oi.tangential_out ? 2 : 1, oi.tangential_in ? 2 : 1);
    switch (op) {
        case TraceOp::SingleLayer: B(0, 0) = L.S_Y.value; break;
        case TraceOp::NormalDerivSingleLayer: B(0, 0) = L.S_Y.deriv; break;
        case TraceOp::DoubleLayer: B(0, 0) = L.D_Y.value; break;
        case TraceOp::Hypersingular: B(0, 0) = L.D_Y.deriv; break;
        case TraceOp::CrossSingleLayerTangential:
            put_tangential(B, 0, L.S_V.value);
            put_tangential(B, 1, L.S_W.value);
            break;
        case TraceOp::CrossSingleLayerNormal: put_tangential(B, 0, L.S_X.value); break;
        case TraceOp::CrossGradSingleLayer: put_tangential(B, 0, L.grad_S_Y()); break;
        case TraceOp::MagneticDipole:
            put_tangential(B, 0, L.curl_S_V());
            put_tangential(B, 1, L.curl_S_W());
            break;
        case TraceOp::CrossCurlSingleLayerNormal: put_tangential(B, 0, L.curl_S_X()); break;
        case TraceOp::CrossCurlCurlSingleLayer:
            put_tangential(B, 0, L.curlcurl_S_V());
            put_tangential(B, 1, L.curlcurl_S_W());
            break;
        case TraceOp::DivSingleLayerTangential:
            B(0, 0) = divergence(L.S_V, n, 1.0);
            B(0, 1) = divergence(L.S_W, n, 1.0);
            break;
        case TraceOp::DivSingleLayerNormal: B(0, 0) = divergence(L.S_X, n, 1.0); break;
        case TraceOp::NormalSingleLayerTangential:
            B(0, 0) = L.S_V.value.f;
            B(0, 1) = L.S_W.value.f;
            break;
        case TraceOp::NormalSingleLayerNormal: B(0, 0) = L.S_X.value.f; break;
        case TraceOp::NormalCurlSingleLayer:
            B(0, 0) = L.curl_S_V().f;
            B(0, 1) = L.curl_S_W().f;
            break;
    }
    return B;
}

OperatorSymbol trace_symbol(TraceOp op, int n, Complex k) {
    const SymbolBlock ext = one_sided_trace(op, n, k, Side::Exterior);
    const SymbolBlock in = one_sided_trace(op, n, k, Side::Interior);
    return {op, n, k, 0.5 * (ext + in)};
}

Complex scalar_single_layer_symbol(int n, Complex k) { return single_layer_eigenvalue(n, k); }

}  // namespace dfie
