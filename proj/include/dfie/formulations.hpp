#pragma once

// Per-degree blocks of the integral-equation formulations on the unit sphere.
// Every block is built from principal-value trace symbols plus explicit jump
// terms: a trace of  c0 * Op_{k0} (exterior field)  minus  c * Op_k (interior
// field)  contributes  c0 PV(Op, k0) - c PV(Op, k) + (c0 + c)/2 * jump(Op).

#include "dfie/media.hpp"
#include "dfie/symbols.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace dfie {

enum class FormulationKind { Dfie, DfieH, DfieScaled, Muller, ChargeCurrent, DecoupledCC };

struct Formulation {
    FormulationKind kind = FormulationKind::Dfie;
    Complex eta{0.0};  ///< charge-current only

    /// "dfie", "dfie-h", "dfie-scaled", "muller", "cc", "decoupled-cc".
    std::string name() const;
    /// Name plus eta for cc, e.g. "cc(eta=0+1i)".
    std::string label() const;
    bool defined_at_zero_frequency() const;
};

/// Throws Error on unknown names.
Formulation parse_formulation(const std::string& name, Complex eta = 0.0);

struct ModeBlock {
    std::string formulation;
    int n = 0;
    Eigen::MatrixXcd matrix;
    std::vector<std::string> unknowns;  ///< column layout
    std::vector<std::string> rows;      ///< row layout
    /// Scaled DFIE only: matrix = diag(row_scale) * unscaled * diag(col_scale).
    Eigen::VectorXcd row_scale, col_scale;
};

/// Source of trace symbols for assembly. The default is the closed form; the
/// tests substitute quadrature values.
class TraceProvider {
public:
    virtual ~TraceProvider() = default;
    virtual SymbolBlock pv(TraceOp op, int n, Complex k) const = 0;
    virtual Real jump(TraceOp op) const { return jump_constant(op); }
    /// (PV(op, omega s0) - PV(op, omega s)) / omega.
    virtual SymbolBlock pv_difference_quotient(TraceOp op, int n, Complex s0, Complex s, Real omega) const;
};

class ClosedFormTraces : public TraceProvider {
public:
    SymbolBlock pv(TraceOp op, int n, Complex k) const override;
    /// Uses the cancellation-free series for S and n x grad S.
    SymbolBlock pv_difference_quotient(TraceOp op, int n, Complex s0, Complex s, Real omega) const override;
};

const TraceProvider& closed_form_traces();

// Unknowns (a_V, a_W, sigma, b_V, b_W, rho), rows (f_V, f_W, q, g_V, g_W, p);
// at n = 0 unknowns (sigma, rho), rows (q, p).
ModeBlock assemble_dfie_E(int n, const ProblemSetup& setup, const TraceProvider& traces = closed_form_traces());
/// The E-assembly of the dual (epsilon <-> mu) setup.
ModeBlock assemble_dfie_H(int n, const ProblemSetup& setup, const TraceProvider& traces = closed_form_traces());
/// D_row (B + K) D_col with D_col = diag(1, 1, w, w, w, 1), D_row = diag(1, 1, 1/w, 1/w, 1/w, 1).
/// Throws DomainError at omega = 0.
ModeBlock assemble_dfie_scaled(int n, const ProblemSetup& setup, const TraceProvider& traces = closed_form_traces());

/// n -> infinity limit of the DFIE block (identity terms plus the two
/// constant couplings q<-b_V and p<-a_W).
Eigen::MatrixXcd dfie_limit_block(int n, const ProblemSetup& setup);

// Unknowns (Js_V, Js_W, Ks_V, Ks_W); rows are the tangential H condition and
// the negated tangential E condition. Empty at n = 0. Throws UnsupportedError at omega = 0.
ModeBlock assemble_muller(int n, const ProblemSetup& setup, const TraceProvider& traces = closed_form_traces());

// Unknowns (J_V, J_W, K_V, K_W, rho, rho_M); rows (tanH_V, tanH_W, -tanE_V,
// -tanE_W, normal eps E, normal mu H). At n = 0 only (rho, rho_M).
// Throws UnsupportedError at omega = 0.
ModeBlock assemble_charge_current(int n, const ProblemSetup& setup, Complex eta,
                                  const TraceProvider& traces = closed_form_traces());

/// Scalar potentials phi0 = eps D_{k0}[alpha] + S_{k0}[beta], phi = eps0 D_k[alpha] + S_k[beta]
/// (psi analogous with mu); rows (phi0 - phi, eps0 d phi0/dn - eps d phi/dn).
struct ScalarSystems {
    ModeBlock phi, psi;
};
ScalarSystems assemble_decoupled_cc_scalars(int n, const ProblemSetup& setup,
                                            const TraceProvider& traces = closed_form_traces());

/// All blocks that make up the formulation at degree n (several for decoupled-cc;
/// Muller contributes nothing at n = 0).
std::vector<ModeBlock> assemble_blocks(const Formulation& f, int n, const ProblemSetup& setup);

struct ConditionReport {
    Real condition = 0.0;  ///< max sigma_max / min sigma_min over all blocks n <= n_max
    Real sigma_max = 0.0;
    Real sigma_min = 0.0;
    int worst_n = 0;       ///< degree attaining sigma_min
    int n_max = 0;
};

/// Blocks of a multi-stage formulation (decoupled-cc) are reported as the
/// worst of the stage conditions.
ConditionReport condition_number(const Formulation& f, const ProblemSetup& setup);

}  // namespace dfie
