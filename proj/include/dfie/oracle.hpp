#pragma once

// Brute-force check of the closed-form trace symbols: the layer potentials of
// a single harmonic density are integrated numerically at r = 1 +- h, traced,
// projected back onto the harmonic basis and extrapolated to h = 0 from each
// side. Nothing here uses the Bessel machinery.

#include "dfie/symbols.hpp"

#include <map>
#include <vector>

namespace dfie {

struct OracleSymbol {
    TraceOp op;
    int n = 0, m = 0;
    Complex k;
    SymbolBlock exterior, interior;

    SymbolBlock average() const { return 0.5 * (exterior + interior); }
    SymbolBlock jump() const { return exterior - interior; }
};

/// 1e-2 * 2^-i, i = 0..4.
std::vector<Real> default_oracle_offsets();

/// Throws DomainError on bad offsets or tangential ops at n = 0, and
/// OracleDivergenceError when the extrapolants from the last two offset
/// subsets disagree.
OracleSymbol oracle_symbol(TraceOp op, int n, int m, Complex k,
                           const std::vector<Real>& h_sequence = default_oracle_offsets());

/// All operators defined at degree n in one pass (shares the quadrature).
std::map<TraceOp, OracleSymbol> oracle_all(int n, int m, Complex k,
                                           const std::vector<Real>& h_sequence = default_oracle_offsets());

}  // namespace dfie
