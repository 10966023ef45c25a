#include "gelfond/cli.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <thread>

namespace gelfond {

nlohmann::json CampaignSummary::to_json() const {
    return {{"suite", suite},  {"seed", seed},         {"trials", trials},
            {"holds", holds},  {"fails", fails},       {"undecided", undecided},
            {"exit", exit_code()}};
}

int CampaignSummary::exit_code() const {
    if (fails > 0) return kExitFails;
    if (undecided > 0) return kExitUndecided;
    return kExitOk;
}

CampaignSummary run_campaign(const std::string& suite, const RunConfig& cfg,
                             const std::function<void(const TrialReport&)>& sink) {
    CampaignSummary sum;
    sum.suite = suite;
    sum.seed = cfg.seed;
    const std::size_t total = cfg.trials;
    unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(total, 1)));

    std::vector<std::optional<TrialReport>> slots(total);
    std::mutex mu;
    std::condition_variable ready;
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < total;) {
            TrialReport r = run_suite_trial(suite, cfg.seed, i, cfg.prec);
            std::lock_guard lk(mu);
            slots[i] = std::move(r);
            ready.notify_all();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

    // Single writer, in trial order.
    for (std::size_t i = 0; i < total; ++i) {
        TrialReport r;
        {
            std::unique_lock lk(mu);
            ready.wait(lk, [&] { return slots[i].has_value(); });
            r = std::move(*slots[i]);
            slots[i].reset();
        }
        ++sum.trials;
        switch (r.outcome) {
            case Outcome::Holds: ++sum.holds; break;
            case Outcome::Fails: ++sum.fails; break;
            case Outcome::Undecided: ++sum.undecided; break;
        }
        sink(r);
    }
    for (auto& t : pool) t.join();
    return sum;
}

}  // namespace gelfond
