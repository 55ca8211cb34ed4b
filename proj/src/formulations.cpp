#include "dfie/formulations.hpp"

#include "dfie/errors.hpp"

#include <cstdio>
#include <limits>
#include <map>
#include <utility>

namespace dfie {

std::string Formulation::name() const {
    switch (kind) {
        case FormulationKind::Dfie: return "dfie";
        case FormulationKind::DfieH: return "dfie-h";
        case FormulationKind::DfieScaled: return "dfie-scaled";
        case FormulationKind::Muller: return "muller";
        case FormulationKind::ChargeCurrent: return "cc";
        case FormulationKind::DecoupledCC: return "decoupled-cc";
    }
    return "?";
}

std::string Formulation::label() const {
    if (kind != FormulationKind::ChargeCurrent) return name();
    char buf[96];
    std::snprintf(buf, sizeof buf, "cc(eta=%g%+gi)", eta.real(), eta.imag());
    return buf;
}

bool Formulation::defined_at_zero_frequency() const {
    return kind == FormulationKind::Dfie || kind == FormulationKind::DfieH;
}

Formulation parse_formulation(const std::string& name, Complex eta) {
    static const std::pair<const char*, FormulationKind> table[] = {
        {"dfie", FormulationKind::Dfie},           {"dfie-h", FormulationKind::DfieH},
        {"dfie-scaled", FormulationKind::DfieScaled}, {"muller", FormulationKind::Muller},
        {"cc", FormulationKind::ChargeCurrent},    {"decoupled-cc", FormulationKind::DecoupledCC},
    };
    for (const auto& [key, kind] : table) {
        if (name == key) return {kind, kind == FormulationKind::ChargeCurrent ? eta : Complex{0.0}};
    }
    throw Error("unknown formulation '" + name + "'");
}

SymbolBlock TraceProvider::pv_difference_quotient(TraceOp op, int n, Complex s0, Complex s, Real omega) const {
    if (omega == 0.0) throw DomainError("difference quotient needs omega > 0");
    return (pv(op, n, omega * s0) - pv(op, n, omega * s)) / omega;
}

SymbolBlock ClosedFormTraces::pv(TraceOp op, int n, Complex k) const { return trace_symbol(op, n, k).block; }

SymbolBlock ClosedFormTraces::pv_difference_quotient(TraceOp op, int n, Complex s0, Complex s, Real omega) const {
    if (op == TraceOp::SingleLayer) {
        SymbolBlock b(1, 1);
        b(0, 0) = single_layer_difference_quotient(n, s0, s, omega);
        return b;
    }
    if (op == TraceOp::CrossGradSingleLayer && n > 0) {
        // n x grad(c_n Y) = sqrt(n(n+1)) c_n W on the surface.
        SymbolBlock b = SymbolBlock::Zero(2, 1);
        b(1, 0) = harmonic_lambda(n) * single_layer_difference_quotient(n, s0, s, omega);
        return b;
    }
    return TraceProvider::pv_difference_quotient(op, n, s0, s, omega);
}

const TraceProvider& closed_form_traces() {
    static const ClosedFormTraces instance;
    return instance;
}

namespace {

class Builder {
public:
    Builder(int size, int n, Complex k0, Complex k, const TraceProvider& traces)
        : M(Eigen::MatrixXcd::Zero(size, size)), n_(n), k0_(k0), k_(k), traces_(traces) {}

    // Trace of c0 Op_{k0} from outside minus c Op_k from inside.
    void add(TraceOp op, Complex c0, Complex c, int row, int col) {
        SymbolBlock b = c0 * pv(op, 0) - c * pv(op, 1);
        const Real j = traces_.jump(op);
        if (j != 0.0) b += (0.5 * (c0 + c) * j) * SymbolBlock::Identity(b.rows(), b.cols());
        M.block(row, col, b.rows(), b.cols()) += b;
    }

    // Exterior field only.
    void add_exterior(TraceOp op, Complex c0, int row, int col) {
        SymbolBlock b = c0 * pv(op, 0);
        const Real j = traces_.jump(op);
        if (j != 0.0) b += (0.5 * c0 * j) * SymbolBlock::Identity(b.rows(), b.cols());
        M.block(row, col, b.rows(), b.cols()) += b;
    }

    void add_block(const SymbolBlock& b, int row, int col) { M.block(row, col, b.rows(), b.cols()) += b; }

    Eigen::MatrixXcd M;

private:
    const SymbolBlock& pv(TraceOp op, int side) {
        auto key = std::make_pair(op, side);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, traces_.pv(op, n_, side == 0 ? k0_ : k_)).first;
        return it->second;
    }

    int n_;
    Complex k0_, k_;
    const TraceProvider& traces_;
    std::map<std::pair<TraceOp, int>, SymbolBlock> cache_;
};

ProblemSetup checked(const ProblemSetup& setup, int n) {
    if (n < 0) throw DomainError("degree must be non-negative");
    return validate_setup(setup);
}

void require_positive_omega(const ProblemSetup& s, const char* what) {
    if (s.omega == 0.0) throw UnsupportedError(std::string(what) + " is not defined at omega = 0");
}

}  // namespace

ModeBlock assemble_dfie_E(int n, const ProblemSetup& setup_in, const TraceProvider& traces) {
    const ProblemSetup s = checked(setup_in, n);
    const Complex e0 = s.exterior.epsilon, m0 = s.exterior.mu;
    const Complex e = s.interior.epsilon, m = s.interior.mu;
    const Complex k0 = s.k0(), k = s.k();

    ModeBlock out;
    out.formulation = "dfie";
    out.n = n;
    if (n == 0) {
        Builder b(2, n, k0, k, traces);
        b.add(TraceOp::DoubleLayer, m0, m, 0, 0);
        b.add(TraceOp::SingleLayer, -k0 * k0, -k * k, 0, 1);
        b.add(TraceOp::NormalDerivSingleLayer, e0, e, 1, 1);
        b.add(TraceOp::NormalSingleLayerNormal, -e0 * m0, -e * m, 1, 0);
        out.matrix = b.M;
        out.unknowns = {"sigma", "rho"};
        out.rows = {"q", "p"};
        return out;
    }
    enum { aV = 0, sg = 2, bV = 3, rh = 5 };
    enum { fV = 0, q = 2, gV = 3, p = 5 };
    Builder b(6, n, k0, k, traces);
    b.add(TraceOp::MagneticDipole, m0, m, fV, aV);
    b.add(TraceOp::CrossSingleLayerNormal, -m0, -m, fV, sg);
    b.add(TraceOp::CrossSingleLayerTangential, m0 * e0, m * e, fV, bV);
    b.add(TraceOp::CrossGradSingleLayer, 1.0, 1.0, fV, rh);

    b.add(TraceOp::DoubleLayer, m0, m, q, sg);
    b.add(TraceOp::DivSingleLayerTangential, m0 * e0, m * e, q, bV);
    b.add(TraceOp::SingleLayer, -k0 * k0, -k * k, q, rh);

    b.add(TraceOp::CrossCurlCurlSingleLayer, 1.0, 1.0, gV, aV);
    b.add(TraceOp::CrossCurlSingleLayerNormal, -1.0, -1.0, gV, sg);
    b.add(TraceOp::MagneticDipole, e0, e, gV, bV);

    b.add(TraceOp::NormalCurlSingleLayer, e0 * m0, e * m, p, aV);
    b.add(TraceOp::NormalSingleLayerNormal, -e0 * m0, -e * m, p, sg);
    b.add(TraceOp::NormalSingleLayerTangential, m0 * e0 * e0, m * e * e, p, bV);
    b.add(TraceOp::NormalDerivSingleLayer, e0, e, p, rh);

    out.matrix = b.M;
    out.unknowns = {"a_V", "a_W", "sigma", "b_V", "b_W", "rho"};
    out.rows = {"f_V", "f_W", "q", "g_V", "g_W", "p"};
    return out;
}

ModeBlock assemble_dfie_H(int n, const ProblemSetup& setup, const TraceProvider& traces) {
    ModeBlock out = assemble_dfie_E(n, dual_setup(setup), traces);
    out.formulation = "dfie-h";
    for (auto& u : out.unknowns) u += "'";
    for (auto& r : out.rows) r += "'";
    return out;
}

ModeBlock assemble_dfie_scaled(int n, const ProblemSetup& setup, const TraceProvider& traces) {
    if (setup.omega == 0.0) throw DomainError("scaled DFIE is undefined at omega = 0");
    ModeBlock out = assemble_dfie_E(n, setup, traces);
    const Real w = setup.omega;
    const int size = static_cast<int>(out.matrix.rows());
    out.row_scale = Eigen::VectorXcd::Ones(size);
    out.col_scale = Eigen::VectorXcd::Ones(size);
    if (n == 0) {  // (sigma, rho) / (q, p)
        out.col_scale(0) = w;
        out.row_scale(0) = 1.0 / w;
    } else {
        for (int i = 2; i <= 4; ++i) {
            out.col_scale(i) = w;
            out.row_scale(i) = 1.0 / w;
        }
    }
    out.matrix = out.row_scale.asDiagonal() * out.matrix * out.col_scale.asDiagonal();
    out.formulation = "dfie-scaled";
    return out;
}

Eigen::MatrixXcd dfie_limit_block(int n, const ProblemSetup& setup_in) {
    const ProblemSetup s = checked(setup_in, n);
    const Complex e0 = s.exterior.epsilon, m0 = s.exterior.mu;
    const Complex e = s.interior.epsilon, m = s.interior.mu;
    if (n == 0) {
        Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2, 2);
        B(0, 0) = 0.5 * (m0 + m);
        B(1, 1) = -0.5 * (e0 + e);
        return B;
    }
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(6, 6);
    for (int i = 0; i < 3; ++i) B(i, i) = 0.5 * (m0 + m);
    B(3, 3) = B(4, 4) = 0.5 * (e0 + e);
    B(5, 5) = -0.5 * (e0 + e);
    // div S[V] = -sqrt(n(n+1)) c_n -> -1/2 and n . curl S[W] -> -1/2.
    B(2, 3) = -0.5 * (m0 * e0 - m * e);
    B(5, 1) = -0.5 * (e0 * m0 - e * m);
    return B;
}

ModeBlock assemble_muller(int n, const ProblemSetup& setup_in, const TraceProvider& traces) {
    const ProblemSetup s = checked(setup_in, n);
    require_positive_omega(s, "Muller");
    ModeBlock out;
    out.formulation = "muller";
    out.n = n;
    if (n == 0) {
        out.matrix.resize(0, 0);
        return out;
    }
    const Complex e0 = s.exterior.epsilon, m0 = s.exterior.mu;
    const Complex e = s.interior.epsilon, m = s.interior.mu;
    const Real w = s.omega;
    const Complex iw = kI * w;
    const Real lam = harmonic_lambda(n);
    Builder b(4, n, s.k0(), s.k(), traces);
    // n x grad div S[V] = -lambda n x grad S[Y]; the 1/(i omega) difference is formed without cancellation.
    const SymbolBlock dq =
        traces.pv_difference_quotient(TraceOp::CrossGradSingleLayer, n, refractive_factor(s.exterior),
                                      refractive_factor(s.interior), w);
    // H row: eps0 curl S0[J] + i w eps0 mu0 S0[K] - (1/iw) grad div S0[K]
    b.add(TraceOp::MagneticDipole, e0, e, 0, 0);
    b.add(TraceOp::CrossSingleLayerTangential, iw * e0 * m0, iw * e * m, 0, 2);
    b.add_block((lam / kI) * dq, 0, 2);
    // -E row: E0 = i w mu0 eps0 S0[J] - (1/iw) grad div S0[J] - mu0 curl S0[K]
    b.add(TraceOp::MagneticDipole, m0, m, 2, 2);
    b.add(TraceOp::CrossSingleLayerTangential, -iw * e0 * m0, -iw * e * m, 2, 0);
    b.add_block((-lam / kI) * dq, 2, 0);
    out.matrix = b.M;
    out.unknowns = {"Js_V", "Js_W", "Ks_V", "Ks_W"};
    out.rows = {"tanH_V", "tanH_W", "-tanE_V", "-tanE_W"};
    return out;
}

ModeBlock assemble_charge_current(int n, const ProblemSetup& setup_in, Complex eta, const TraceProvider& traces) {
    const ProblemSetup s = checked(setup_in, n);
    require_positive_omega(s, "charge-current");
    const Complex e0 = s.exterior.epsilon, m0 = s.exterior.mu;
    const Complex e = s.interior.epsilon, m = s.interior.mu;
    const Complex iw = kI * s.omega;
    ModeBlock out;
    out.formulation = "cc";
    out.n = n;
    if (n == 0) {
        Builder b(2, n, s.k0(), s.k(), traces);
        b.add(TraceOp::NormalDerivSingleLayer, -e0, -e, 0, 0);
        b.add_exterior(TraceOp::SingleLayer, -iw * e0 * eta, 0, 0);
        b.add(TraceOp::NormalDerivSingleLayer, -m0, -m, 1, 1);
        out.matrix = b.M;
        out.unknowns = {"rho", "rho_M"};
        out.rows = {"nE", "nH"};
        return out;
    }
    enum { J = 0, K = 2, R = 4, RM = 5 };
    Builder b(6, n, s.k0(), s.k(), traces);
    // H0 = eps0 curl S0[J] + i w eps0 mu0 S0[K] - grad S0[rho_M]
    b.add(TraceOp::MagneticDipole, e0, e, 0, J);
    b.add(TraceOp::CrossSingleLayerTangential, iw * e0 * m0, iw * e * m, 0, K);
    b.add(TraceOp::CrossGradSingleLayer, -1.0, -1.0, 0, RM);
    // -(E0 - E), E0 = i w mu0 eps0 S0[J] - grad S0[rho] - mu0 curl S0[K]
    b.add(TraceOp::MagneticDipole, m0, m, 2, K);
    b.add(TraceOp::CrossSingleLayerTangential, -iw * e0 * m0, -iw * e * m, 2, J);
    b.add(TraceOp::CrossGradSingleLayer, 1.0, 1.0, 2, R);
    // n . (eps0 E0 - eps E), with eta (div S0[J] - i w S0[rho]) added to n . E0
    b.add(TraceOp::NormalSingleLayerTangential, iw * e0 * e0 * m0, iw * e * e * m, 4, J);
    b.add(TraceOp::NormalDerivSingleLayer, -e0, -e, 4, R);
    b.add(TraceOp::NormalCurlSingleLayer, -e0 * m0, -e * m, 4, K);
    b.add_exterior(TraceOp::DivSingleLayerTangential, e0 * eta, 4, J);
    b.add_exterior(TraceOp::SingleLayer, -iw * e0 * eta, 4, R);
    // n . (mu0 H0 - mu H)
    b.add(TraceOp::NormalCurlSingleLayer, m0 * e0, m * e, 5, J);
    b.add(TraceOp::NormalSingleLayerTangential, iw * m0 * m0 * e0, iw * m * m * e, 5, K);
    b.add(TraceOp::NormalDerivSingleLayer, -m0, -m, 5, RM);
    out.matrix = b.M;
    out.unknowns = {"J_V", "J_W", "K_V", "K_W", "rho", "rho_M"};
    out.rows = {"tanH_V", "tanH_W", "-tanE_V", "-tanE_W", "nE", "nH"};
    return out;
}

ScalarSystems assemble_decoupled_cc_scalars(int n, const ProblemSetup& setup_in, const TraceProvider& traces) {
    const ProblemSetup s = checked(setup_in, n);
    auto build = [&](Complex a0, Complex a, const char* name) {
        Builder b(2, n, s.k0(), s.k(), traces);
        b.add(TraceOp::DoubleLayer, a, a0, 0, 0);
        b.add(TraceOp::SingleLayer, 1.0, 1.0, 0, 1);
        b.add(TraceOp::Hypersingular, a0 * a, a * a0, 1, 0);
        b.add(TraceOp::NormalDerivSingleLayer, a0, a, 1, 1);
        ModeBlock out;
        out.formulation = name;
        out.n = n;
        out.matrix = b.M;
        out.unknowns = {"alpha", "beta"};
        out.rows = {"jump", "flux"};
        return out;
    };
    return {build(s.exterior.epsilon, s.interior.epsilon, "decoupled-cc/phi"),
            build(s.exterior.mu, s.interior.mu, "decoupled-cc/psi")};
}

std::vector<ModeBlock> assemble_blocks(const Formulation& f, int n, const ProblemSetup& setup) {
    switch (f.kind) {
        case FormulationKind::Dfie: return {assemble_dfie_E(n, setup)};
        case FormulationKind::DfieH: return {assemble_dfie_H(n, setup)};
        case FormulationKind::DfieScaled: return {assemble_dfie_scaled(n, setup)};
        case FormulationKind::Muller: {
            ModeBlock b = assemble_muller(n, setup);
            if (b.matrix.size() == 0) return {};
            return {b};
        }
        case FormulationKind::ChargeCurrent: return {assemble_charge_current(n, setup, f.eta)};
        case FormulationKind::DecoupledCC: {
            require_positive_omega(setup, "decoupled charge-current");
            std::vector<ModeBlock> out;
            ModeBlock mb = assemble_muller(n, setup);
            if (mb.matrix.size() > 0) out.push_back(mb);
            ScalarSystems sc = assemble_decoupled_cc_scalars(n, setup);
            out.push_back(sc.phi);
            out.push_back(sc.psi);
            return out;
        }
    }
    return {};
}

ConditionReport condition_number(const Formulation& f, const ProblemSetup& setup_in) {
    const ProblemSetup s = validate_setup(setup_in);
    const int n_max = s.n_max();
    struct Stage {
        Real smax = 0.0, smin = std::numeric_limits<Real>::infinity();
        int worst = 0;
    };
    std::map<std::string, Stage> stages;
    for (int n = 0; n <= n_max; ++n) {
        for (const ModeBlock& b : assemble_blocks(f, n, s)) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b.matrix);
            const auto& sv = svd.singularValues();
            Stage& st = stages[b.formulation];
            st.smax = std::max(st.smax, sv(0));
            if (sv(sv.size() - 1) < st.smin) {
                st.smin = sv(sv.size() - 1);
                st.worst = n;
            }
        }
    }
    ConditionReport rep;
    rep.n_max = n_max;
    rep.condition = -1.0;
    for (const auto& [name, st] : stages) {
        const Real c = st.smin > 0.0 ? st.smax / st.smin : std::numeric_limits<Real>::infinity();
        if (c > rep.condition) {
            rep.condition = c;
            rep.sigma_max = st.smax;
            rep.sigma_min = st.smin;
            rep.worst_n = st.worst;
        }
    }
    return rep;
}

}  // namespace dfie
