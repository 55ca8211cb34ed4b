#include "dfie/scatter.hpp"

#include "dfie/errors.hpp"

#include <cmath>

namespace dfie {

namespace {

constexpr Real kSurfaceBand = 1e-3;
constexpr Real kLowFrequencyLimit = 1e-3;

// x^{n-1} / (2n+1)!!, n >= 1: the factor relating j_n(x)/x to the scaled j.
Complex j_over_x_scale(int n, Complex x) {
    Complex s = 1.0 / 3.0;
    for (int l = 2; l <= n; ++l) s *= x / (2.0 * l + 1.0);
    return s;
}

Complex impedance_factor(const ProblemSetup& s) {  // sqrt(eps0 mu0) / mu0
    return refractive_factor(s.exterior) / s.exterior.mu;
}

CVec3 assemble_vector(const ModeVector& F, const HarmonicValues& hv, int n, int m) {
    return hv.x(n, m) * F.f + hv.v(n, m) * F.g + hv.w(n, m) * F.h;
}

}  // namespace

void check_plane_wave(const PlaneWave& pw) {
    if (std::abs(pw.direction.norm() - 1.0) > 1e-12 || std::abs(pw.polarization.norm() - 1.0) > 1e-12) {
        throw DomainError("plane wave direction and polarization must be unit vectors");
    }
    if (std::abs(pw.direction.dot(pw.polarization)) > 1e-12) {
        throw DomainError("plane wave polarization must be orthogonal to its direction");
    }
}

CVec3 incident_E(const PlaneWave& pw, const ProblemSetup& setup, const Vec3& x) {
    const Complex phase = std::exp(kI * setup.k0() * pw.direction.dot(x));
    return pw.polarization.cast<Complex>() * (pw.amplitude * phase);
}

CVec3 incident_H(const PlaneWave& pw, const ProblemSetup& setup, const Vec3& x) {
    const Vec3 dxp = pw.direction.cross(pw.polarization);
    const Complex phase = std::exp(kI * setup.k0() * pw.direction.dot(x));
    return dxp.cast<Complex>() * (impedance_factor(setup) * pw.amplitude * phase);
}

WaveExpansion plane_wave_expansion(const PlaneWave& pw, int n_max) {
    check_plane_wave(pw);
    const HarmonicValues hv = harmonics_at(n_max, pw.direction);
    const CVec3 p = pw.polarization.cast<Complex>();
    const CVec3 dxp = pw.direction.cross(pw.polarization).cast<Complex>();
    WaveExpansion out;
    out.n_max = n_max;
    out.A.assign(harmonic_count(n_max), 0.0);
    out.B.assign(harmonic_count(n_max), 0.0);
    for (int n = 1; n <= n_max; ++n) {
        const Complex in = ipow(kI, n);
        for (int m = -n; m <= n; ++m) {
            const int i = harmonic_index(n, m);
            // v.dot(u) conjugates v.
            out.A[i] = -4.0 * kPi * in * hv.V[i].dot(dxp) * pw.amplitude;
            out.B[i] = 4.0 * kPi * in * kI * hv.V[i].dot(p) * pw.amplitude;
        }
    }
    return out;
}

WaveTraces plane_wave_traces(const PlaneWave& pw, const ProblemSetup& setup, int n_max) {
    const WaveExpansion ex = plane_wave_expansion(pw, n_max);
    const Complex k0 = setup.k0();
    const ScaledBessel b = scaled_bessel(n_max, k0);
    const Complex eta0 = impedance_factor(setup);
    WaveTraces t;
    t.n_max = n_max;
    const int count = harmonic_count(n_max);
    for (auto* v : {&t.eV, &t.eW, &t.en, &t.hV, &t.hW, &t.hn}) v->assign(count, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        const Complex jx = j_over_x_scale(n, k0);
        const Complex u = jx * k0 * b.j[n];            // j_n(k0)
        const Complex v = jx * (b.j[n] + b.xdj[n]);    // (j + x j') / x
        const Complex w = jx * b.j[n];                 // j_n(k0) / k0
        const Real lam = harmonic_lambda(n);
        for (int m = -n; m <= n; ++m) {
            const int i = harmonic_index(n, m);
            const Complex A = ex.A[i], B = ex.B[i];
            const Complex AH = B * eta0 / kI, BH = A * eta0 / kI;
            t.eV[i] = -A * u;
            t.eW[i] = -B * v;
            t.en[i] = -lam * B * w;
            t.hV[i] = -AH * u;
            t.hW[i] = -BH * v;
            t.hn[i] = -lam * BH * w;
        }
    }
    return t;
}

WaveTraces project_wave_traces(const PlaneWave& pw, const ProblemSetup& setup, int n_max, int n_theta, int n_phi) {
    check_plane_wave(pw);
    const SphereRule rule = sphere_rule(n_theta, n_phi);
    WaveTraces t;
    t.n_max = n_max;
    const int count = harmonic_count(n_max);
    for (auto* v : {&t.eV, &t.eW, &t.en, &t.hV, &t.hW, &t.hn}) v->assign(count, 0.0);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const Vec3& x = rule.points[q];
        const HarmonicValues hv = harmonics_at(n_max, x);
        const CVec3 nc = x.cast<Complex>();
        const CVec3 E = incident_E(pw, setup, x), H = incident_H(pw, setup, x);
        const CVec3 nxE = cross(nc, E), nxH = cross(nc, H);
        const Complex ndE = dot(nc, E), ndH = dot(nc, H);
        const Real w = rule.weights[q];
        for (int i = 0; i < count; ++i) {
            t.eV[i] += w * hv.V[i].dot(nxE);
            t.eW[i] += w * hv.W[i].dot(nxE);
            t.hV[i] += w * hv.V[i].dot(nxH);
            t.hW[i] += w * hv.W[i].dot(nxH);
            t.en[i] += w * std::conj(hv.Y[i]) * ndE;
            t.hn[i] += w * std::conj(hv.Y[i]) * ndH;
        }
    }
    return t;
}

BoundaryData dfie_rhs(const PlaneWave& pw, const ProblemSetup& setup_in) {
    const ProblemSetup s = validate_setup(setup_in);
    const int n_max = s.n_max();
    const WaveTraces t = plane_wave_traces(pw, s, n_max);
    const Complex iw = kI * s.omega;
    BoundaryData out;
    out.n_max = n_max;
    out.e_problem.resize(harmonic_count(n_max));
    out.h_problem.resize(harmonic_count(n_max));
    for (int n = 0; n <= n_max; ++n) {
        for (int m = -n; m <= n; ++m) {
            const int i = harmonic_index(n, m);
            Eigen::VectorXcd e, h;
            if (n == 0) {
                e.resize(2);
                h.resize(2);
                e << 0.0, -s.exterior.epsilon * t.en[i];
                h << 0.0, -s.exterior.mu * t.hn[i];
            } else {
                e.resize(6);
                h.resize(6);
                e << -t.eV[i], -t.eW[i], 0.0, -iw * t.hV[i], -iw * t.hW[i], -s.exterior.epsilon * t.en[i];
                h << -t.hV[i], -t.hW[i], 0.0, iw * t.eV[i], iw * t.eW[i], -s.exterior.mu * t.hn[i];
            }
            out.e_problem[i] = e;
            out.h_problem[i] = h;
        }
    }
    return out;
}

namespace {

// Solves one block for all orders m of degree n; records residuals.
class BlockSolver {
public:
    BlockSolver(const ModeBlock& block, const ProblemSetup& s, const std::string& label) : A_(block.matrix) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A_);
        const auto& sv = svd.singularValues();
        norm_ = sv(0);
        const Real ratio = sv(sv.size() - 1) / sv(0);
        if (!(ratio >= 1e-13)) throw NearSingularError(label, block.n, s.omega, ratio);
        lu_.compute(A_);
    }

    Eigen::VectorXcd solve(const Eigen::VectorXcd& b, Real& residual) const {
        Eigen::VectorXcd x = lu_.solve(b);
        const Real denom = norm_ * x.norm() + b.norm();
        const Real r = denom > 0.0 ? (A_ * x - b).norm() / denom : 0.0;
        residual = std::max(residual, r);
        return x;
    }

private:
    Eigen::MatrixXcd A_;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu_;
    Real norm_ = 0.0;
};

void solve_dfie(SolveResult& r, bool scaled) {
    const ProblemSetup& s = r.setup;
    const BoundaryData rhs = dfie_rhs(r.wave, s);
    const int n_max = s.n_max();
    const std::string label = r.formulation.label();
    for (int n = 0; n <= n_max; ++n) {
        const ModeBlock be = scaled ? assemble_dfie_scaled(n, s) : assemble_dfie_E(n, s);
        const ModeBlock bh = scaled ? assemble_dfie_scaled(n, dual_setup(s)) : assemble_dfie_H(n, s);
        const BlockSolver se(be, s, label), sh(bh, s, label);
        for (int m = -n; m <= n; ++m) {
            const int i = harmonic_index(n, m);
            Real& res = r.residuals[i];
            if (scaled) {
                r.densities[i] =
                    be.col_scale.asDiagonal() * se.solve(be.row_scale.asDiagonal() * rhs.e_problem[i], res);
                r.secondary[i] =
                    bh.col_scale.asDiagonal() * sh.solve(bh.row_scale.asDiagonal() * rhs.h_problem[i], res);
            } else {
                r.densities[i] = se.solve(rhs.e_problem[i], res);
                r.secondary[i] = sh.solve(rhs.h_problem[i], res);
            }
        }
    }
}

// Tangential rows shared by Muller and cc: H condition, then negated E condition.
Eigen::VectorXcd tangential_rhs(const WaveTraces& t, int i) {
    Eigen::VectorXcd v(4);
    v << -t.hV[i], -t.hW[i], t.eV[i], t.eW[i];
    return v;
}

void solve_muller(SolveResult& r, const WaveTraces& t) {
    const ProblemSetup& s = r.setup;
    const std::string label = r.formulation.label();
    for (int n = 1; n <= s.n_max(); ++n) {
        const BlockSolver sv(assemble_muller(n, s), s, label);
        for (int m = -n; m <= n; ++m) {
            const int i = harmonic_index(n, m);
            r.densities[i] = sv.solve(tangential_rhs(t, i), r.residuals[i]);
        }
    }
    r.densities[0] = Eigen::VectorXcd();
}

void solve_cc(SolveResult& r, const WaveTraces& t) {
    const ProblemSetup& s = r.setup;
    const std::string label = r.formulation.label();
    for (int n = 0; n <= s.n_max(); ++n) {
        const BlockSolver sv(assemble_charge_current(n, s, r.formulation.eta), s, label);
        for (int m = -n; m <= n; ++m) {
            const int i = harmonic_index(n, m);
            Eigen::VectorXcd b(n == 0 ? 2 : 6);
            if (n == 0) {
                b << -s.exterior.epsilon * t.en[i], -s.exterior.mu * t.hn[i];
            } else {
                b << tangential_rhs(t, i), -s.exterior.epsilon * t.en[i], -s.exterior.mu * t.hn[i];
            }
            r.densities[i] = sv.solve(b, r.residuals[i]);
        }
    }
}

void solve_decoupled(SolveResult& r, const WaveTraces& t) {
    solve_muller(r, t);
    const ProblemSetup& s = r.setup;
    const Complex e0 = s.exterior.epsilon, m0 = s.exterior.mu, e = s.interior.epsilon, m = s.interior.mu;
    const Complex k0 = s.k0(), k = s.k();
    const Complex iw = kI * s.omega;
    const std::string label = r.formulation.label();
    for (int n = 0; n <= s.n_max(); ++n) {
        const ScalarSystems sys = assemble_decoupled_cc_scalars(n, s);
        const BlockSolver sphi(sys.phi, s, label), spsi(sys.psi, s, label);
        const Real lam = harmonic_lambda(n);
        const Complex dq = single_layer_difference_quotient(n, refractive_factor(s.exterior),
                                                            refractive_factor(s.interior), s.omega);
        SymbolBlock nS0, nS, nC0, nC;
        if (n > 0) {
            nS0 = trace_symbol(TraceOp::NormalSingleLayerTangential, n, k0).block;
            nS = trace_symbol(TraceOp::NormalSingleLayerTangential, n, k).block;
            nC0 = trace_symbol(TraceOp::NormalCurlSingleLayer, n, k0).block;
            nC = trace_symbol(TraceOp::NormalCurlSingleLayer, n, k).block;
        }
        for (int mm = -n; mm <= n; ++mm) {
            const int i = harmonic_index(n, mm);
            Eigen::VectorXcd bphi(2), bpsi(2);
            bphi << 0.0, e0 * t.en[i];
            bpsi << 0.0, m0 * t.hn[i];
            if (n > 0) {
                const Eigen::VectorXcd J = r.densities[i].head(2), K = r.densities[i].tail(2);
                // (div S0 - div S)[J] / (i w), with div S[V] = -lambda S[Y].
                bphi(0) = -lam * J(0) * dq / kI;
                bpsi(0) = -lam * K(0) * dq / kI;
                bphi(1) += (iw * (e0 * e0 * m0 * nS0 - e * e * m * nS) * J - (e0 * m0 * nC0 - e * m * nC) * K)(0);
                bpsi(1) += ((m0 * e0 * nC0 - m * e * nC) * J + iw * (m0 * m0 * e0 * nS0 - m * m * e * nS) * K)(0);
            }
            r.secondary[i] = sphi.solve(bphi, r.residuals[i]);
            r.tertiary[i] = spsi.solve(bpsi, r.residuals[i]);
        }
    }
}

}  // namespace

SolveResult solve(const Formulation& f, const PlaneWave& pw, const ProblemSetup& setup) {
    check_plane_wave(pw);
    SolveResult r;
    r.setup = validate_setup(setup);
    r.formulation = f;
    r.wave = pw;
    const int count = harmonic_count(r.setup.n_max());
    r.densities.assign(count, Eigen::VectorXcd());
    r.secondary.assign(count, Eigen::VectorXcd());
    r.tertiary.assign(count, Eigen::VectorXcd());
    r.residuals.assign(count, 0.0);
    switch (f.kind) {
        case FormulationKind::Dfie:
        case FormulationKind::DfieH: solve_dfie(r, false); break;
        case FormulationKind::DfieScaled: solve_dfie(r, true); break;
        case FormulationKind::Muller:
            if (r.setup.omega == 0.0) throw UnsupportedError("Muller is not defined at omega = 0");
            solve_muller(r, plane_wave_traces(pw, r.setup, r.setup.n_max()));
            break;
        case FormulationKind::ChargeCurrent:
            if (r.setup.omega == 0.0) throw UnsupportedError("charge-current is not defined at omega = 0");
            solve_cc(r, plane_wave_traces(pw, r.setup, r.setup.n_max()));
            break;
        case FormulationKind::DecoupledCC:
            if (r.setup.omega == 0.0) throw UnsupportedError("decoupled charge-current is not defined at omega = 0");
            solve_decoupled(r, plane_wave_traces(pw, r.setup, r.setup.n_max()));
            break;
    }
    r.condition = condition_number(f, r.setup).condition;
    return r;
}

Region region_of(const Vec3& point) {
    const Real r = point.norm();
    if (std::abs(r - 1.0) < kSurfaceBand) {
        throw DomainError("point lies within the surface exclusion band |r - 1| < 1e-3");
    }
    return r > 1.0 ? Region::Exterior : Region::Interior;
}

namespace {

struct SideMedia {
    Complex eps, mu, k;
    Complex eps_other, mu_other;  // the opposite region (weights of the scalar double layers)
};

ModeVector dfie_mode(const LayerFields& L, const Eigen::VectorXcd& x, Complex mu, Complex eps) {
    if (L.n == 0) return (-mu * x(0)) * L.S_X.value + x(1) * L.grad_S_Y();
    return (mu * x(0)) * L.curl_S_V() + (mu * x(1)) * L.curl_S_W() + (-mu * x(2)) * L.S_X.value +
           (mu * eps * x(3)) * L.S_V.value + (mu * eps * x(4)) * L.S_W.value + x(5) * L.grad_S_Y();
}

// Fields of the (Js, Ks) / (J, K) current part shared by Muller, cc and decoupled-cc.
void current_fields(const LayerFields& L, const Eigen::VectorXcd& d, const SideMedia& sm, Complex iw, ModeVector& E,
                    ModeVector& H) {
    const ModeVector SJ = d(0) * L.S_V.value + d(1) * L.S_W.value;
    const ModeVector SK = d(2) * L.S_V.value + d(3) * L.S_W.value;
    const ModeVector CJ = d(0) * L.curl_S_V() + d(1) * L.curl_S_W();
    const ModeVector CK = d(2) * L.curl_S_V() + d(3) * L.curl_S_W();
    E = (iw * sm.mu * sm.eps) * SJ + (-sm.mu) * CK;
    H = sm.eps * CJ + (iw * sm.eps * sm.mu) * SK;
}

}  // namespace

std::vector<FieldSample> evaluate_field(const SolveResult& result, const std::vector<Vec3>& points) {
    const ProblemSetup& s = result.setup;
    const FormulationKind kind = result.formulation.kind;
    const bool needs_frequency = kind == FormulationKind::Muller || kind == FormulationKind::DecoupledCC;
    if (needs_frequency && s.omega < kLowFrequencyLimit) {
        throw UnsupportedError("field evaluation for " + result.formulation.name() +
                               " is unsupported below omega = 1e-3 (low-frequency breakdown)");
    }
    const int n_max = s.n_max();
    const Complex iw = kI * s.omega;

    std::vector<FieldSample> out;
    out.reserve(points.size());
    for (const Vec3& x : points) {
        const Region region = region_of(x);
        const bool ext = region == Region::Exterior;
        const Real r = x.norm();
        const Side side = ext ? Side::Exterior : Side::Interior;
        const Medium& here = ext ? s.exterior : s.interior;
        const Medium& there = ext ? s.interior : s.exterior;
        const SideMedia sm{here.epsilon, here.mu, ext ? s.k0() : s.k(), there.epsilon, there.mu};
        const RadialKernel kernel(n_max + 1, sm.k, r, side);
        const HarmonicValues hv = harmonics_at(n_max, x);

        FieldSample fs{x, region, CVec3::Zero(), CVec3::Zero()};
        for (int n = 0; n <= n_max; ++n) {
            const LayerFields L = layer_fields(n, kernel);
            const Real lam = harmonic_lambda(n);
            for (int m = -n; m <= n; ++m) {
                const int i = harmonic_index(n, m);
                ModeVector E, H;
                switch (kind) {
                    case FormulationKind::Dfie:
                    case FormulationKind::DfieH:
                    case FormulationKind::DfieScaled:
                        E = dfie_mode(L, result.densities[i], sm.mu, sm.eps);
                        H = dfie_mode(L, result.secondary[i], sm.eps, sm.mu);
                        break;
                    case FormulationKind::Muller:
                        if (n == 0) continue;
                        current_fields(L, result.densities[i], sm, iw, E, H);
                        // -(1/iw) grad div S[J] = (lambda J_V / (i w)) grad S[Y]
                        E += (lam * result.densities[i](0) / iw) * L.grad_S_Y();
                        H += (lam * result.densities[i](2) / iw) * L.grad_S_Y();
                        break;
                    case FormulationKind::ChargeCurrent: {
                        const Eigen::VectorXcd& d = result.densities[i];
                        if (n == 0) {
                            E = (-d(0)) * L.grad_S_Y();
                            H = (-d(1)) * L.grad_S_Y();
                        } else {
                            current_fields(L, d, sm, iw, E, H);
                            E += (-d(4)) * L.grad_S_Y();
                            H += (-d(5)) * L.grad_S_Y();
                        }
                        break;
                    }
                    case FormulationKind::DecoupledCC: {
                        if (n > 0) current_fields(L, result.densities[i], sm, iw, E, H);
                        // phi0 = eps D0[alpha] + S0[beta] outside, phi = eps0 D[alpha] + S[beta] inside.
                        const Eigen::VectorXcd& p = result.secondary[i];
                        const Eigen::VectorXcd& q = result.tertiary[i];
                        E += (-sm.eps_other * p(0)) * L.grad_D_Y() + (-p(1)) * L.grad_S_Y();
                        H += (-sm.mu_other * q(0)) * L.grad_D_Y() + (-q(1)) * L.grad_S_Y();
                        break;
                    }
                }
                fs.E += assemble_vector(E, hv, n, m);
                fs.H += assemble_vector(H, hv, n, m);
            }
        }
        out.push_back(fs);
    }
    return out;
}

MaxwellReport maxwell_consistency(const SolveResult& result, const std::vector<Vec3>& points, Real h) {
    const ProblemSetup& s = result.setup;
    MaxwellReport rep;
    static const Real offsets[4] = {-2.0, -1.0, 1.0, 2.0};
    static const Real weights[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
    for (const Vec3& x : points) {
        std::vector<Vec3> stencil{x};
        for (int a = 0; a < 3; ++a) {
            for (Real o : offsets) {
                Vec3 y = x;
                y(a) += o * h;
                stencil.push_back(y);
            }
        }
        const std::vector<FieldSample> f = evaluate_field(result, stencil);
        // dE[a] = d E / d x_a
        CVec3 dE[3];
        for (int a = 0; a < 3; ++a) {
            dE[a] = CVec3::Zero();
            for (int q = 0; q < 4; ++q) dE[a] += weights[q] * f[1 + 4 * a + q].E / h;
        }
        const CVec3 curl(dE[1](2) - dE[2](1), dE[2](0) - dE[0](2), dE[0](1) - dE[1](0));
        const Complex div = dE[0](0) + dE[1](1) + dE[2](2);
        const Complex mu = f[0].region == Region::Exterior ? s.exterior.mu : s.interior.mu;
        const CVec3 target = (kI * s.omega * mu) * f[0].H;
        const Real scale = std::abs(s.omega * mu) * f[0].H.norm();
        if (scale > 0.0) rep.curl_defect = std::max(rep.curl_defect, (curl - target).norm() / scale);
        if (f[0].E.norm() > 0.0) rep.divergence_defect = std::max(rep.divergence_defect, std::abs(div) / f[0].E.norm());
    }
    return rep;
}

Real silver_muller_residual(const SolveResult& result, Real r) {
    const ProblemSetup& s = result.setup;
    const SphereRule rule = sphere_rule(8, 16);
    std::vector<Vec3> pts;
    for (const Vec3& d : rule.points) pts.push_back(r * d);
    const std::vector<FieldSample> f = evaluate_field(result, pts);
    const Complex z0 = std::sqrt(s.exterior.mu / s.exterior.epsilon);
    Real worst = 0.0;
    for (std::size_t q = 0; q < f.size(); ++q) {
        const CVec3 rh = rule.points[q].cast<Complex>();
        worst = std::max(worst, (z0 * cross(f[q].H, rh) - f[q].E).norm());
    }
    return worst;
}

}  // namespace dfie
