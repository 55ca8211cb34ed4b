#include "dfie/oracle.hpp"

#include "dfie/errors.hpp"

#include <cmath>

namespace dfie {

namespace {

constexpr int kPanels = 17;
constexpr int kPanelPoints = 16;

// Source rule in the polar angle about the target direction, graded towards
// the target so that the near-singular kernel is resolved down to h ~ 1e-4.
struct PolarRule {
    std::vector<Real> theta, weight;  // weight includes sin(theta)
};

PolarRule polar_rule() {
    const QuadratureRule gl = gauss_legendre(kPanelPoints);
    PolarRule out;
    Real hi = kPi;
    for (int p = 0; p < kPanels; ++p) {
        const Real lo = p + 1 < kPanels ? hi / 2.0 : 0.0;
        for (int i = 0; i < kPanelPoints; ++i) {
            const Real t = 0.5 * (hi + lo) + 0.5 * (hi - lo) * gl.nodes[i];
            out.theta.push_back(t);
            out.weight.push_back(0.5 * (hi - lo) * gl.weights[i] * std::sin(t));
        }
        hi = lo;
    }
    return out;
}

// Green's function and the radial factors of its first and second gradients:
//   grad G = g1 (x - y),  Hess G = g1 I + g2 (x - y)(x - y)^T.
struct KernelValues {
    Complex g, g1, g2;
};

KernelValues kernel(Complex k, Real d) {
    const Complex g = std::exp(kI * k * d) / (4.0 * kPi * d);
    const Complex ikd = kI * k * d;
    return {g, g * (ikd - 1.0) / (d * d), g * (3.0 - 3.0 * ikd - k * k * d * d) / (d * d * d * d)};
}

// Potentials of the densities Y, V, W, X (all of one (n, m)) at one point.
struct Potentials {
    Complex SY{0.0}, DY{0.0};
    CVec3 gradSY = CVec3::Zero(), gradDY = CVec3::Zero();
    CVec3 S[3], curlS[3], hessS[3];  // V, W, X;  hessS = sum Hess G . J
    Complex divS[3];

    Potentials() {
        for (int j = 0; j < 3; ++j) {
            S[j] = curlS[j] = hessS[j] = CVec3::Zero();
            divS[j] = 0.0;
        }
    }
};

Potentials potentials_at(int n, int m, Complex k, const Vec3& x, const PolarRule& rule, int n_phi) {
    const Real r = x.norm();
    const Vec3 e3 = x / r;
    Vec3 e1 = std::abs(e3.z()) < 0.9 ? Vec3(0, 0, 1).cross(e3) : Vec3(1, 0, 0).cross(e3);
    e1.normalize();
    const Vec3 e2 = e3.cross(e1);
    const int idx = harmonic_index(n, m);

    Potentials P;
    const CVec3 xc = x.cast<Complex>();
    for (std::size_t it = 0; it < rule.theta.size(); ++it) {
        const Real t = rule.theta[it];
        const Real s = std::sin(0.5 * t);
        const Real d = std::sqrt((r - 1.0) * (r - 1.0) + 4.0 * r * s * s);
        const KernelValues kv = kernel(k, d);
        const Real w_ring = rule.weight[it] * 2.0 * kPi / n_phi;
        for (int ip = 0; ip < n_phi; ++ip) {
            const Real ph = 2.0 * kPi * ip / n_phi;
            const Vec3 y = std::cos(t) * e3 + std::sin(t) * (std::cos(ph) * e1 + std::sin(ph) * e2);
            const HarmonicValues hv = harmonics_at(n, y);
            const Complex Yv = hv.Y[idx];
            const CVec3 J[3] = {hv.V[idx], hv.W[idx], y.cast<Complex>() * Yv};
            const CVec3 dx = xc - y.cast<Complex>();
            const CVec3 gradG = kv.g1 * dx;
            const Complex w = w_ring;

            P.SY += w * kv.g * Yv;
            P.gradSY += (w * Yv) * gradG;
            // dG/dn_y = grad_y G . y = -grad_x G . y
            const Complex dGdn = -dot(gradG, y.cast<Complex>());
            P.DY += w * dGdn * Yv;
            // grad_x of (-grad_x G . y) = -Hess G . y
            const Complex dxy = dot(dx, y.cast<Complex>());
            const CVec3 hess_y = kv.g1 * y.cast<Complex>() + kv.g2 * dxy * dx;
            P.gradDY -= (w * Yv) * hess_y;
            for (int j = 0; j < 3; ++j) {
                P.S[j] += (w * kv.g) * J[j];
                P.curlS[j] += w * cross(gradG, J[j]);
                P.divS[j] += w * dot(gradG, J[j]);
                const Complex dxj = dot(dx, J[j]);
                P.hessS[j] += w * (kv.g1 * J[j] + kv.g2 * dxj * dx);
            }
        }
    }
    return P;
}

// Trace of one operator at a point, as (tangential: n x F, scalar: value).
struct TraceValue {
    CVec3 tangential[2];  // per input column
    Complex scalar[2];
};

// Input columns: tangential ops use densities (V, W) = indices 0, 1; scalar
// ops use Y or X (normal density).
TraceValue trace_at(TraceOp op, const Potentials& P, const Vec3& nhat, Complex k) {
    const CVec3 nc = nhat.cast<Complex>();
    auto nx = [&](const CVec3& F) { return cross(nc, F); };
    auto nd = [&](const CVec3& F) { return dot(nc, F); };
    auto curlcurl = [&](int j) { CVec3 v = P.hessS[j] + (k * k) * P.S[j]; return v; };
    TraceValue t;
    for (int c = 0; c < 2; ++c) {
        t.tangential[c] = CVec3::Zero();
        t.scalar[c] = 0.0;
    }
    switch (op) {
        case TraceOp::SingleLayer: t.scalar[0] = P.SY; break;
        case TraceOp::NormalDerivSingleLayer: t.scalar[0] = nd(P.gradSY); break;
        case TraceOp::DoubleLayer: t.scalar[0] = P.DY; break;
        case TraceOp::Hypersingular: t.scalar[0] = nd(P.gradDY); break;
        case TraceOp::CrossSingleLayerTangential:
            t.tangential[0] = nx(P.S[0]);
            t.tangential[1] = nx(P.S[1]);
            break;
        case TraceOp::CrossSingleLayerNormal: t.tangential[0] = nx(P.S[2]); break;
        case TraceOp::CrossGradSingleLayer: t.tangential[0] = nx(P.gradSY); break;
        case TraceOp::MagneticDipole:
            t.tangential[0] = nx(P.curlS[0]);
            t.tangential[1] = nx(P.curlS[1]);
            break;
        case TraceOp::CrossCurlSingleLayerNormal: t.tangential[0] = nx(P.curlS[2]); break;
        case TraceOp::CrossCurlCurlSingleLayer:
            t.tangential[0] = nx(curlcurl(0));
            t.tangential[1] = nx(curlcurl(1));
            break;
        case TraceOp::DivSingleLayerTangential:
            t.scalar[0] = P.divS[0];
            t.scalar[1] = P.divS[1];
            break;
        case TraceOp::DivSingleLayerNormal: t.scalar[0] = P.divS[2]; break;
        case TraceOp::NormalSingleLayerTangential:
            t.scalar[0] = nd(P.S[0]);
            t.scalar[1] = nd(P.S[1]);
            break;
        case TraceOp::NormalSingleLayerNormal: t.scalar[0] = nd(P.S[2]); break;
        case TraceOp::NormalCurlSingleLayer:
            t.scalar[0] = nd(P.curlS[0]);
            t.scalar[1] = nd(P.curlS[1]);
            break;
    }
    return t;
}

// Neville evaluation at h = 0 of the interpolant through (h_i, v_i).
SymbolBlock extrapolate_to_zero(const std::vector<Real>& h, std::vector<SymbolBlock> v) {
    const std::size_t N = h.size();
    for (std::size_t level = 1; level < N; ++level) {
        for (std::size_t i = 0; i + level < N; ++i) {
            const Real a = h[i], b = h[i + level];
            v[i] = (b * v[i] - a * v[i + 1]) / (b - a);
        }
    }
    return v[0];
}

bool is_defined(TraceOp op, int n) {
    return n > 0 || (!has_tangential_input(op) && !has_tangential_output(op));
}

}  // namespace

std::vector<Real> default_oracle_offsets() { return {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4}; }

std::map<TraceOp, OracleSymbol> oracle_all(int n, int m, Complex k, const std::vector<Real>& h_sequence) {
    if (n < 0 || std::abs(m) > n) throw DomainError("oracle: invalid (n, m)");
    if (h_sequence.size() < 2) throw DomainError("oracle: need at least two offsets");
    for (std::size_t i = 0; i < h_sequence.size(); ++i) {
        if (!(h_sequence[i] > 0.0) || (i > 0 && !(h_sequence[i] < h_sequence[i - 1]))) {
            throw DomainError("oracle: offsets must be positive and strictly decreasing");
        }
    }
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag()) || k.imag() < 0.0) {
        throw DomainError("oracle: wavenumber must be finite with Im k >= 0");
    }

    std::vector<TraceOp> ops;
    for (TraceOp op : kAllTraceOps) {
        if (is_defined(op, n)) ops.push_back(op);
    }

    const PolarRule rule = polar_rule();
    const int n_phi = 2 * n + 8;
    const QuadratureRule target_rule = gauss_legendre(n + 4);
    const int idx = harmonic_index(n, m);

    // Target ring at azimuth 0: every field is proportional to e^{i m phi} in
    // the spherical frame, so the azimuthal projection integral is 2 pi times
    // the integrand at phi = 0.
    std::vector<Vec3> dirs;
    std::vector<HarmonicValues> target_h;
    for (int i = 0; i < n + 4; ++i) {
        const Real ct = target_rule.nodes[i];
        const Vec3 dir(std::sqrt(std::max(0.0, 1.0 - ct * ct)), 0.0, ct);
        dirs.push_back(dir);
        target_h.push_back(harmonics_at(n, dir));
    }

    std::map<TraceOp, std::vector<SymbolBlock>> samples[2];
    for (int side = 0; side < 2; ++side) {
        for (Real h : h_sequence) {
            const Real r = side == 0 ? 1.0 + h : 1.0 - h;
            std::map<TraceOp, SymbolBlock> acc;
            for (TraceOp op : ops) {
                acc[op] = SymbolBlock::Zero(has_tangential_output(op) ? 2 : 1, has_tangential_input(op) ? 2 : 1);
            }
            for (int i = 0; i < n + 4; ++i) {
                const Potentials P = potentials_at(n, m, k, r * dirs[i], rule, n_phi);
                const Real w = 2.0 * kPi * target_rule.weights[i];
                const HarmonicValues& th = target_h[i];
                for (TraceOp op : ops) {
                    const TraceValue tv = trace_at(op, P, dirs[i], k);
                    SymbolBlock& B = acc[op];
                    for (int c = 0; c < B.cols(); ++c) {
                        if (has_tangential_output(op)) {
                            B(0, c) += w * th.V[idx].dot(tv.tangential[c]);
                            B(1, c) += w * th.W[idx].dot(tv.tangential[c]);
                        } else {
                            B(0, c) += w * std::conj(th.Y[idx]) * tv.scalar[c];
                        }
                    }
                }
            }
            for (TraceOp op : ops) samples[side][op].push_back(acc[op]);
        }
    }

    std::map<TraceOp, OracleSymbol> out;
    for (TraceOp op : ops) {
        SymbolBlock lim[2];
        for (int side = 0; side < 2; ++side) {
            const auto& s = samples[side][op];
            lim[side] = extrapolate_to_zero(h_sequence, s);
            if (h_sequence.size() >= 3) {
                const std::vector<Real> h_tail(h_sequence.begin() + 1, h_sequence.end());
                const std::vector<SymbolBlock> s_tail(s.begin() + 1, s.end());
                const SymbolBlock alt = extrapolate_to_zero(h_tail, s_tail);
                const Real scale = std::max(1.0, lim[side].cwiseAbs().maxCoeff());
                if ((alt - lim[side]).cwiseAbs().maxCoeff() > 1e-5 * scale) {
                    throw OracleDivergenceError("oracle: extrapolation of " + std::string(to_string(op)) +
                                                " did not settle at n=" + std::to_string(n));
                }
            }
        }
        out.emplace(op, OracleSymbol{op, n, m, k, lim[0], lim[1]});
    }
    return out;
}

OracleSymbol oracle_symbol(TraceOp op, int n, int m, Complex k, const std::vector<Real>& h_sequence) {
    if (!is_defined(op, n)) {
        throw DomainError("oracle: tangential operator " + std::string(to_string(op)) + " has no degree-0 block");
    }
    return oracle_all(n, m, k, h_sequence).at(op);
}

}  // namespace dfie
