#pragma once

#include "gelfond/factorgcd.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gelfond {

struct PipelineParams {
    unsigned n = 0, s = 0, t = 1;
    unsigned ell = 0;
    PosReal X;
    Rational kappa = 0;
    std::optional<Rational> epsilon;  // propRbis derives it from ell; propRter requires it
    std::vector<AffineMap> maps;      // propQ, propR
    ScaleSet A;                       // propRbis, propRter
    EvalPointSet E;
    Precision prec = Precision::defaults();

    nlohmann::json to_json() const;
};

struct StageRecord {
    std::string stage, anchor, digest;
    Verdict verdict;
};

class PipelineTrace {
public:
    PipelineTrace() = default;
    explicit PipelineTrace(std::string kind) : kind_(std::move(kind)) {}

    void add(std::string stage, std::string anchor, std::string digest, Verdict v);
    const std::string& kind() const { return kind_; }
    const std::vector<StageRecord>& stages() const { return stages_; }
    bool holds() const;
    const StageRecord* failing_stage() const;
    nlohmann::json to_json() const;

    nlohmann::json derived = nlohmann::json::object();  // κ′, c_A, δ_P, m, ...

private:
    std::string kind_;
    std::vector<StageRecord> stages_;
};

// A stage after the hypothesis check did not hold. The trace ends with it.
struct PipelineFailure : std::runtime_error {
    PipelineFailure(const std::string& what, PipelineTrace t) : std::runtime_error(what), trace(std::move(t)) {}
    PipelineTrace trace;
};

struct PropQResult {
    RatPoly Q;
    Interval delta_P{64};
    Verdict verdict;
};

// Q = gcd of λ(P^[i]) over maps and i < t, with the bound
// ∏ (|Q(ξ)|/cont Q)^t <= (e^4 c (2+c_E))^(4n²) Δ_E^(-t²) H(P)^(2n) δ_P^(|E|t).
PropQResult run_propQ(const RatPoly& p, const std::vector<AffineMap>& maps, const EvalPointSet& E, unsigned t,
                      unsigned n, const Precision& prec = Precision::defaults());
// Same bound for a given Q, which must equal the gcd.
Verdict verify_propQ(const RatPoly& p, const RatPoly& q, const std::vector<AffineMap>& maps, const EvalPointSet& E,
                     unsigned t, unsigned n, const Precision& prec = Precision::defaults());

struct PipelineResult {
    RatPoly S;
    std::optional<std::size_t> xi;  // index into E (propR, propRter)
    PipelineTrace trace;
    Verdict final;
    nlohmann::json certificate(const PipelineParams& pp) const;
};

Rational kappa_prime_propR(const Rational& kappa);
Rational kappa_prime_propRbis(const Rational& kappa, unsigned ell);
Rational epsilon_propRbis(unsigned ell);

// Hypothesis verdicts. Structural violations (sizes, integrality) throw
// PreconditionError directly.
Verdict propR_hypotheses(const RatPoly& p, const PipelineParams& pp);
Verdict propRbis_hypotheses(const RatPoly& p, const PipelineParams& pp);
Verdict propRter_hypotheses(const RatPoly& p, const PipelineParams& pp);

PipelineResult run_propR(const RatPoly& p, const PipelineParams& pp);
PipelineResult run_propRbis(const RatPoly& p, const PipelineParams& pp);
PipelineResult run_propRter(const RatPoly& p, const PipelineParams& pp);

// Final inequalities re-derived from (S, ξ, params) alone.
Verdict verify_propR_certificate(const RatPoly& s, const ComplexEnclosure& xi, const PipelineParams& pp,
                                 const Precision& prec);
Verdict verify_propRbis_certificate(const RatPoly& s, const PipelineParams& pp, const Precision& prec);
Verdict verify_propRter_certificate(const RatPoly& s, const ComplexEnclosure& xi, const PipelineParams& pp,
                                    const Precision& prec);

// φ(a,ξ) with |Q(aξ)| / (X^ε ‖Q(aT)‖) = X^(-φ n); +inf where Q(aξ) = 0.
struct PhiTable {
    std::vector<Rational> A;
    std::vector<std::vector<Interval>> phi;  // phi[a][xi]
    std::vector<Rational> norms;             // ‖Q(aT)‖
    long bits = 0;
    nlohmann::json to_json() const;
};

PhiTable phi_table(const RatPoly& q, const ScaleSet& A, const EvalPointSet& E, const PosReal& X,
                   const Rational& eps, unsigned n, long bits);
// X^(ε - φ n) ‖Q(aT)‖, an enclosure of |Q(aξ)|.
Interval phi_to_value(const Interval& phi, const Rational& norm_qa, const PosReal& X, const Rational& eps, unsigned n,
                      long bits);

}  // namespace gelfond
