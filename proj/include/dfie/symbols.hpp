#pragma once

// Closed-form action of the layer potentials on spherical-harmonic densities
// of the unit sphere, Green's function e^{ikr}/(4 pi r).
//
// Every potential of a degree-n density is a field of the form
//   F(r, rhat) = f(r) X_nm + g(r) V_nm + h(r) W_nm
// (scalar potentials: u(r) Y_nm). The vector single layer acts on the
// Cartesian components, so V_nm and X_nm are split into the pure-orbital
// harmonics of degree n-1 and n+1 (grad(r^n Y) and grad(r^{-n-1} Y)), each
// multiplied by the scalar single-layer radial profile of its own degree.

#include "dfie/harmonics.hpp"
#include "dfie/specfun.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace dfie {

enum class Side { Exterior, Interior };

/// Components along (X, V, W) at one radius.
struct ModeVector {
    Complex f{0.0}, g{0.0}, h{0.0};

    ModeVector& operator+=(const ModeVector& o) { f += o.f; g += o.g; h += o.h; return *this; }
    friend ModeVector operator+(ModeVector a, const ModeVector& b) { return a += b; }
    friend ModeVector operator*(Complex s, ModeVector a) { a.f *= s; a.g *= s; a.h *= s; return a; }
};

/// Radial profile of a vector mode together with its r-derivative.
struct ModeField {
    ModeVector value, deriv;

    ModeField& operator+=(const ModeField& o) { value += o.value; deriv += o.deriv; return *this; }
    friend ModeField operator+(ModeField a, const ModeField& b) { return a += b; }
    friend ModeField operator*(Complex s, ModeField a) { a.value = s * a.value; a.deriv = s * a.deriv; return a; }
};

/// Radial profile u(r) of a scalar mode with u'(r).
struct ScalarMode {
    Complex value{0.0}, deriv{0.0};
};

ModeVector curl(const ModeField& F, int n, Real r);
Complex divergence(const ModeField& F, int n, Real r);
ModeVector gradient(const ScalarMode& u, int n, Real r);

/// Radial profiles of the single and double layer of Y_nm for all degrees
/// 0..n_top at radius r on one side of the unit sphere (r = 1 gives the
/// one-sided surface limit).
class RadialKernel {
public:
    RadialKernel(int n_top, Complex k, Real r, Side side);

    Complex k() const { return k_; }
    Real r() const { return r_; }
    Side side() const { return side_; }
    int n_top() const { return n_top_; }

    ScalarMode single_layer(int L) const;
    ScalarMode double_layer(int L) const;  ///< density weighted by d/dn_y G

private:
    int n_top_;
    Complex k_;
    Real r_;
    Side side_;
    ScaledBessel source_, field_;
};

/// Potentials of unit harmonic densities of degree n.
struct LayerFields {
    int n = 0;
    Real r = 1.0;
    Complex k;
    ModeField S_V, S_W, S_X;  ///< S_k[V_nm], S_k[W_nm], S_k[n Y_nm]
    ScalarMode S_Y, D_Y;      ///< S_k[Y_nm], D_k[Y_nm]

    ModeVector curl_S_V() const { return curl(S_V, n, r); }
    ModeVector curl_S_W() const { return curl(S_W, n, r); }
    ModeVector curl_S_X() const { return curl(S_X, n, r); }
    ModeVector grad_S_Y() const { return gradient(S_Y, n, r); }
    ModeVector grad_D_Y() const { return gradient(D_Y, n, r); }
    /// curl curl S[V] = grad S[div_S V] + k^2 S[V], with div_S V = -sqrt(n(n+1)) Y.
    ModeVector curlcurl_S_V() const;
    ModeVector curlcurl_S_W() const;
};

/// `kernel.n_top()` must be at least n + 1.
LayerFields layer_fields(int n, const RadialKernel& kernel);
LayerFields layer_fields(int n, Complex k, Real r, Side side);

/// Trace operators on the unit sphere. Tangential inputs/outputs use the
/// (V, W) components, scalar ones the Y component; "normal" inputs are
/// densities n sigma.
enum class TraceOp {
    SingleLayer,                 ///< S_k[rho]
    NormalDerivSingleLayer,      ///< S'_k: n . grad S_k[rho]
    DoubleLayer,                 ///< D_k[rho] = int dG/dn_y rho
    Hypersingular,               ///< n . grad D_k[rho]
    CrossSingleLayerTangential,  ///< n x S_k[a]
    CrossSingleLayerNormal,      ///< n x S_k[n sigma]
    CrossGradSingleLayer,        ///< n x grad S_k[rho]
    MagneticDipole,              ///< M_k: n x curl S_k[a]
    CrossCurlSingleLayerNormal,  ///< n x curl S_k[n sigma]
    CrossCurlCurlSingleLayer,    ///< n x curl curl S_k[a]
    DivSingleLayerTangential,    ///< div S_k[a]
    DivSingleLayerNormal,        ///< div S_k[n sigma]
    NormalSingleLayerTangential, ///< n . S_k[a]
    NormalSingleLayerNormal,     ///< n . S_k[n sigma]
    NormalCurlSingleLayer,       ///< n . curl S_k[a]
};

inline constexpr TraceOp kAllTraceOps[] = {
    TraceOp::SingleLayer,
    TraceOp::NormalDerivSingleLayer,
    TraceOp::DoubleLayer,
    TraceOp::Hypersingular,
    TraceOp::CrossSingleLayerTangential,
    TraceOp::CrossSingleLayerNormal,
    TraceOp::CrossGradSingleLayer,
    TraceOp::MagneticDipole,
    TraceOp::CrossCurlSingleLayerNormal,
    TraceOp::CrossCurlCurlSingleLayer,
    TraceOp::DivSingleLayerTangential,
    TraceOp::DivSingleLayerNormal,
    TraceOp::NormalSingleLayerTangential,
    TraceOp::NormalSingleLayerNormal,
    TraceOp::NormalCurlSingleLayer,
};

std::string_view to_string(TraceOp op);
/// Throws Error for unknown names.
TraceOp trace_op_from_string(std::string_view name);

bool has_tangential_input(TraceOp op);
bool has_tangential_output(TraceOp op);

/// Exterior limit minus interior limit, as a multiple of the identity.
Real jump_constant(TraceOp op);

using SymbolBlock = Eigen::MatrixXcd;

struct OperatorSymbol {
    TraceOp op;
    int n;
    Complex k;
    SymbolBlock block;  ///< principal value (average of the two limits)
};

/// One-sided limit on the surface. Throws DomainError for tangential ops at n = 0.
SymbolBlock one_sided_trace(TraceOp op, int n, Complex k, Side side);

/// Principal-value symbol; jump contributions are excluded.
OperatorSymbol trace_symbol(TraceOp op, int n, Complex k);

/// Eigenvalue of the scalar single layer (same as single_layer_eigenvalue).
Complex scalar_single_layer_symbol(int n, Complex k);

}  // namespace dfie
