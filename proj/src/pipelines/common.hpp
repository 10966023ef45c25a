#pragma once

#include "gelfond/combinatorics.hpp"
#include "gelfond/pipelines.hpp"
#include "gelfond/resultants.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace gelfond::pipe {

// A positive quantity known exactly, through an exact logarithm, or only by
// enclosures of its logarithm.
struct Qty {
    std::optional<Rational> exact;
    std::optional<Rational> exact_log;
    std::function<Interval(long)> log;
};

Qty qty_q(const Rational& q);
Qty qty_e();
Qty qty_log(std::function<Interval(long)> f);

// base^be REL X^xe; exact when both sides allow it.
Check pow_vs_X(std::string label, const Qty& base, const Rational& be, const PosReal& X, const Rational& xe,
               const Precision& prec, Rel rel = Rel::LE);

// max |ξ| over E, or max(|ξ|, 1/|ξ|) when with_inverse; shifted by 2 when plus_two.
Qty c_E(const EvalPointSet& E, bool with_inverse, bool plus_two);
Qty delta_E(const EvalPointSet& E);
Qty Delta_E(const EvalPointSet& E);

struct ValueSite {
    RatPoly poly;
    ComplexEnclosure point;
};

// log max |poly(point)| over the sites.
Interval log_max_abs(const std::vector<ValueSite>& sites, long bits);

// Sites P^[j](λ·ξ) for λ in maps, ξ in E, j < jmax.
std::vector<ValueSite> derivative_sites(const RatPoly& p, const std::vector<AffineMap>& maps, const EvalPointSet& E,
                                        unsigned jmax);

std::vector<AffineMap> scale_maps(const ScaleSet& A);
EvalPointSet repeat_points(const EvalPointSet& E, unsigned t);

nlohmann::json points_json(const EvalPointSet& E);
nlohmann::json maps_json(const std::vector<AffineMap>& maps);
nlohmann::json scales_json(const ScaleSet& A);
void stamp(Verdict& v);
std::string digest_json(const nlohmann::json& j);

// Largest polynomial degree and the coefficient checks shared by runners.
void require_integer_poly(const RatPoly& p, unsigned n, const char* who);
void require_distinct(const EvalPointSet& E, const Precision& prec, const char* who);
void require_nonzero_points(const EvalPointSet& E, const Precision& prec, const char* who);

// S is a power of one irreducible polynomial of positive degree.
Check primary_check(const RatPoly& s);

// Runs one stage. Library rejections inside the stage and non-HOLDS verdicts
// end the run with a PipelineFailure carrying the trace so far.
void run_stage(PipelineTrace& tr, const std::string& stage, const std::string& anchor,
               const std::function<std::pair<std::string, Verdict>()>& body);

Verdict failed_verdict(const std::string& claim, const std::string& what, Outcome o);

}  // namespace gelfond::pipe
