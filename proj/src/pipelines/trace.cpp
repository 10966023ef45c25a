#include "common.hpp"

namespace gelfond {

nlohmann::json PipelineParams::to_json() const {
    nlohmann::json j = {{"n", n}, {"s", s}, {"t", t}, {"l", ell}, {"X", X.str()}, {"kappa", to_string(kappa)}};
    if (epsilon) j["epsilon"] = to_string(*epsilon);
    if (!maps.empty()) j["maps"] = pipe::maps_json(maps);
    if (A.size()) j["A"] = pipe::scales_json(A);
    j["E"] = pipe::points_json(E);
    j["bits"] = {{"start", prec.start}, {"cap", prec.cap}};
    return j;
}

void PipelineTrace::add(std::string stage, std::string anchor, std::string digest, Verdict v) {
    stages_.push_back({std::move(stage), std::move(anchor), std::move(digest), std::move(v)});
}

bool PipelineTrace::holds() const {
    if (stages_.empty()) return false;
    for (const auto& s : stages_)
        if (!s.verdict.holds()) return false;
    return true;
}

const StageRecord* PipelineTrace::failing_stage() const {
    for (const auto& s : stages_)
        if (!s.verdict.holds()) return &s;
    return nullptr;
}

nlohmann::json PipelineTrace::to_json() const {
    nlohmann::json st = nlohmann::json::array();
    for (const auto& s : stages_)
        st.push_back({{"stage", s.stage}, {"anchor", s.anchor}, {"digest", s.digest}, {"verdict", gelfond::to_json(s.verdict)}});
    return {{"kind", kind_}, {"stages", st}, {"derived", derived}, {"verdict", holds() ? "HOLDS" : "FAILS"}};
}

nlohmann::json PipelineResult::certificate(const PipelineParams& pp) const {
    nlohmann::json j = {{"kind", trace.kind()}, {"S", format_poly(S)}, {"params", pp.to_json()},
                        {"verdict", gelfond::to_json(final)}};
    if (xi) j["xi_index"] = *xi;
    return j;
}

}  // namespace gelfond
