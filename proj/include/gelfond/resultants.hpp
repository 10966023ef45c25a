#pragma once

#include "gelfond/factor.hpp"
#include "gelfond/matrix.hpp"

#include <vector>

namespace gelfond {

// Sylvester matrix: b shifted rows of A, then a shifted rows of B,
// coefficients from the leading one down.
RatMatrix sylvester_matrix(const RatPoly& a, const RatPoly& b);
Rational sylvester_resultant(const RatPoly& a, const RatPoly& b);

// φ and ψ coordinates for a list of polynomials of degree <= m - 1. Row k of
// each matrix is the image of P_k. φ(P)_k = (QP)^{[j]}(ξ_i) for k = i + js,
// 1 <= i <= s, 0 <= j < t, and P^{[k-1]}(0) for st < k <= m; ψ(P)_k = P^{[k-1]}(0).
struct StructuredEvalMatrix {
    unsigned m = 0, s = 0, t = 0;
    RatPoly Q;
    std::vector<Rational> points;
    std::vector<RatPoly> polys;
    RatMatrix phi, psi;
};

StructuredEvalMatrix build_structured_matrix(const RatPoly& q, const std::vector<Rational>& points, unsigned t,
                                             unsigned m, const std::vector<RatPoly>& polys);
// The basis E^j (T-ξ_1)...(T-ξ_{i-1}) for k = i + js <= st, T^{k-1} beyond.
std::vector<RatPoly> lemma_det_basis(const std::vector<Rational>& points, unsigned t, unsigned m);
// ∏_{i<j} (ξ_j - ξ_i), 1 for a single point.
Rational vandermonde_delta(const std::vector<Rational>& points);

// det φ = ± Δ^{t²} (∏ Q(ξ_i))^t det ψ, exactly; the sign found is recorded.
Verdict check_det_identity(const StructuredEvalMatrix& M);

// The matrix for A, TA, ..., T^{b-1}A, B, ..., T^{a-1}B (deg A + deg B = m >= st).
StructuredEvalMatrix resultant_structure(const RatPoly& a, const RatPoly& b, const RatPoly& q,
                                         const std::vector<Rational>& points, unsigned t);
// Res(A, B) as (-1)^{ab} det ψ of that matrix; equals sylvester_resultant.
Rational resultant_via_structure(const RatPoly& a, const RatPoly& b, const RatPoly& q,
                                 const std::vector<Rational>& points, unsigned t);

// max_{j<t} |F~^{[j]}(ξ)|/‖F~‖ <= e^{deg F~} (2+|ξ|)^ℓ max_{j<t} |F^{[j]}(ξ)|/‖F‖
// for F~ = (T - z)^ℓ F; the e-factor is dropped when z is exactly 0.
Verdict check_tilde_bound(const RatPoly& f, const ComplexEnclosure& z, unsigned ell, const ComplexEnclosure& xi,
                          unsigned t, unsigned n, const Precision& prec = Precision::defaults());

// |Res(A,B)| ∏ (|Q(ξ)|/‖Q‖)^t <= c ‖A‖^b ‖B‖^a ∏ max_j max{...}^t with
// c = m! (e(2+c_E))^{nst} Δ_E^{-t²} (requires m >= st), or with the extended
// constant (2n)! (e(2+c_E))^{4nst} Δ_E^{-t²} when extended is set (n >= st).
Verdict verify_resAB(const RatPoly& f, const RatPoly& g, const EvalPointSet& E, unsigned t, unsigned n,
                     bool extended, const Precision& prec = Precision::defaults());

Verdict verify_propFG(const RatPoly& f, const RatPoly& g, const EvalPointSet& E, unsigned t, unsigned fdeg,
                      unsigned gdeg, unsigned n, const Precision& prec = Precision::defaults());
Verdict verify_corPP(const std::vector<RatPoly>& ps, const EvalPointSet& E, unsigned t, unsigned n,
                     const Precision& prec = Precision::defaults());

// R(U) = Res_T(P~(T), P~(T+U)) with P~ = T^{n - deg P} pp(P).
struct BivariateResultant {
    IntPoly R;
    RatPoly source;
    unsigned n = 0;
    std::vector<std::string> log;
    RatPoly as_rat() const { return to_rat_poly(R); }
};

BivariateResultant bivariate_resultant(const RatPoly& p, unsigned n);

struct EFResult {
    BivariateResultant R;
    Verdict verdict;  // checks (i), (ii), (iii)
};

EFResult build_EF_resultant(const RatPoly& p, const EvalPointSet& E, const EvalPointSet& F, unsigned n,
                            const Precision& prec = Precision::defaults());

}  // namespace gelfond
