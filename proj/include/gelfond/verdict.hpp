#pragma once

#include "gelfond/interval.hpp"
#include "gelfond/rational.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gelfond {

enum class Outcome { Holds, Fails, Undecided };
std::string to_string(Outcome o);

// Relation lhs REL rhs being certified.
enum class Rel { LE, LT };

struct Precision {
    long start = 128;
    long cap = 4096;
    // Cap taken from GELFOND_BITS_CAP when set.
    static Precision defaults();
    Precision doubled() const { return {start * 2, cap * 2}; }
};

struct Check {
    std::string label;
    Outcome outcome = Outcome::Undecided;
    Rel rel = Rel::LE;
    std::string domain = "value";  // "value" or "log"
    Interval lhs{64}, rhs{64};
    std::optional<Rational> lhs_exact, rhs_exact;
    long bits = 0;
    std::string note;
};

class Verdict {
public:
    Verdict() = default;
    explicit Verdict(std::string claim) : claim_(std::move(claim)) {}

    const std::string& claim() const { return claim_; }
    Outcome outcome() const;
    bool holds() const { return outcome() == Outcome::Holds; }
    const std::vector<Check>& checks() const { return checks_; }
    long precision_bits() const;

    Verdict& add(Check c) {
        checks_.push_back(std::move(c));
        return *this;
    }
    Verdict& merge(const Verdict& other);
    // First check that did not hold, else the first check.
    const Check* binding() const;

    nlohmann::json params = nlohmann::json::object();
    std::string inputs_digest;

private:
    std::string claim_;
    std::vector<Check> checks_;
};

using IntervalPair = std::pair<Interval, Interval>;

// Hypotheses of an operation not met. Carries the verdict of the hypothesis
// check when one was computed.
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& what, std::optional<Verdict> v = std::nullopt)
        : std::invalid_argument(what), verdict(std::move(v)) {}
    std::optional<Verdict> verdict;
};

// A required certificate could not be decided within the precision cap.
struct UndecidedError : std::runtime_error {
    UndecidedError(const std::string& what, Verdict v) : std::runtime_error(what), verdict(std::move(v)) {}
    Verdict verdict;
};


Outcome decide(const Interval& lhs, const Interval& rhs, Rel rel);

// Evaluates f at escalating precision until the relation is decided or the
// cap is reached.
Check certify(std::string label, const std::function<IntervalPair(long)>& f, const Precision& prec,
              Rel rel = Rel::LE, std::string domain = "value");

Check exact_check(std::string label, const Rational& lhs, const Rational& rhs, Rel rel = Rel::LE);

// A positive real parameter given either as an exact rational or as e^q.
class PosReal {
public:
    static PosReal rational(const Rational& q);
    static PosReal exp(const Rational& q);
    // "p/q", "p", decimal, "b^k" (exact power), or "e^q".
    static PosReal parse(const std::string& s);

    bool is_rational() const { return kind_ == Kind::Rational; }
    const Rational& q() const { return q_; }  // value or exponent depending on kind
    std::optional<Rational> exact() const;
    std::optional<Rational> exact_log() const;
    Interval value(long bits) const;
    Interval log(long bits) const;
    std::string str() const;

private:
    enum class Kind { Rational, Exp };
    Kind kind_ = Kind::Rational;
    Rational q_ = 1;
};

// log of |exact rational|, -inf for 0.
Interval log_abs_q(const Rational& q, long bits);

// Certificate rendering.
nlohmann::json interval_json(const Interval& v, const std::optional<Rational>& exact = std::nullopt);
nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const Verdict& v);
std::string sha256_hex(const std::string& data);

}  // namespace gelfond
