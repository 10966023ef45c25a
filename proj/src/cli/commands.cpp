#include "gelfond/auxpoly.hpp"
#include "gelfond/cli.hpp"
#include "gelfond/combinatorics.hpp"
#include "gelfond/pipelines.hpp"
#include "gelfond/resultants.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gelfond {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Missing files and malformed inputs both map to the usage exit code.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RatPoly read_poly_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#') continue;
        return parse_poly(line.substr(a));
    }
    throw ParseError("empty polynomial file");
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InputError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

int outcome_code(Outcome o) {
    switch (o) {
        case Outcome::Holds: return kExitOk;
        case Outcome::Fails: return kExitFails;
        case Outcome::Undecided: return kExitUndecided;
    }
    return kExitFails;
}

Rational json_rational(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError("expected a rational (string or integer), got " + j.dump());
}

PosReal json_posreal(const json& j) {
    if (j.is_string()) return PosReal::parse(j.get<std::string>());
    return PosReal::rational(json_rational(j));
}

// ---- verify ----------------------------------------------------------------

struct VerifyOpts {
    std::string suite;
    std::string points, f, g;
    unsigned t = 1;
    int n = -1;
};

int cmd_verify_single_propfg(const VerifyOpts& o, const RunConfig& cfg) {
    RatPoly f = read_poly_text(read_file(o.f)), g = read_poly_text(read_file(o.g));
    EvalPointSet E = parse_points(read_file(o.points));
    unsigned n = o.n >= 0 ? unsigned(o.n) : unsigned(std::max({0, f.degree_or_neg(), g.degree_or_neg()}));
    RatPoly q = gcd_q(f, g), a, b, r;
    divmod(f, q, a, r);
    divmod(g, q, b, r);
    Verdict v = verify_propFG(f, g, E, o.t, std::max(0, a.degree_or_neg()), std::max(0, b.degree_or_neg()), n, cfg.prec);
    Output out(cfg.out);
    out.os() << to_json(v).dump() << "\n";
    return outcome_code(v.outcome());
}

int cmd_verify(const VerifyOpts& o, const RunConfig& cfg) {
    if (o.suite == "propfg" && (!o.f.empty() || !o.g.empty() || !o.points.empty())) {
        if (o.f.empty() || o.g.empty() || o.points.empty())
            throw InputError("single-instance propfg needs --points, --f and --g");
        return cmd_verify_single_propfg(o, cfg);
    }
    Output out(cfg.out);
    CampaignSummary sum = run_campaign(o.suite, cfg, [&](const TrialReport& r) { out.os() << r.line.dump() << "\n"; });
    out.os().flush();
    if (cfg.summary) {
        json s = sum.to_json();
        s["summary"] = true;
        std::cout << s.dump() << std::endl;
    }
    return sum.exit_code();
}

// ---- construct ---------------------------------------------------------------

int cmd_construct(const std::string& path, const RunConfig& cfg) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(std::string("spec JSON: ") + e.what());
    }
    std::vector<json> specs = j.is_array() ? j.get<std::vector<json>>() : std::vector<json>{j};
    Output out(cfg.out);
    int code = kExitOk;
    auto worse = [&](int c) {
        // FAILS outranks NOT_FOUND, which outranks UNDECIDED.
        auto rank = [](int x) { return x == kExitFails ? 3 : x == kExitNotFound ? 2 : x == kExitUndecided ? 1 : 0; };
        if (rank(c) > rank(code)) code = c;
    };
    for (const auto& sj : specs) {
        SmallValueSpec spec = SmallValueSpec::from_json(sj);
        json line = {{"n", spec.n}};
        try {
            AuxCertificate cert = construct_aux_poly(spec, cfg.prec);
            line["status"] = to_string(cert.verdict.outcome());
            line["certificate"] = cert.to_json();
            worse(outcome_code(cert.verdict.outcome()));
        } catch (const AuxNotFound& e) {
            line["status"] = "NOT_FOUND";
            line["reason"] = e.what();
            line["exhaustive"] = e.exhaustive;
            if (e.best) line["best"] = e.best->to_json();
            worse(kExitNotFound);
        }
        out.os() << line.dump() << "\n";
    }
    return code;
}

// ---- pipeline --------------------------------------------------------------

struct Bundle {
    RatPoly P;
    PipelineParams pp;
};

// {poly | poly_file, maps[], scales, points | points_file, params{}}; file
// names are relative to the bundle.
Bundle read_bundle(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bundle JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("bundle must be a JSON object");
    const fs::path dir = fs::path(path).parent_path();
    auto text = [&](const std::string& key) -> std::optional<std::string> {
        if (j.contains(key + "_file")) return read_file((dir / j[key + "_file"].get<std::string>()).string());
        if (!j.contains(key)) return std::nullopt;
        const json& v = j[key];
        if (v.is_string()) return v.get<std::string>();
        if (v.is_array()) {
            std::string s;
            for (const auto& line : v) s += (line.is_string() ? line.get<std::string>() : line.dump()) + "\n";
            return s;
        }
        throw ParseError("bundle field " + key + " must be a string or an array of lines");
    };
    Bundle b;
    auto poly = text("poly");
    if (!poly) throw ParseError("bundle needs poly or poly_file");
    b.P = read_poly_text(*poly);
    auto pts = text("points");
    if (!pts) throw ParseError("bundle needs points or points_file");
    b.pp.E = parse_points(*pts);
    if (auto maps = text("maps")) {
        std::istringstream in(*maps);
        for (std::string line; std::getline(in, line);)
            if (line.find_first_not_of(" \t\r") != std::string::npos) b.pp.maps.push_back(parse_map(line));
    }
    if (auto sc = text("scales")) b.pp.A = ScaleSet::parse(*sc);
    const json params = j.value("params", json::object());
    auto uint_field = [&](const char* k, unsigned& dst) {
        if (params.contains(k)) dst = params[k].get<unsigned>();
    };
    uint_field("n", b.pp.n);
    uint_field("s", b.pp.s);
    uint_field("t", b.pp.t);
    uint_field("ell", b.pp.ell);
    if (params.contains("X")) b.pp.X = json_posreal(params["X"]);
    if (params.contains("kappa")) b.pp.kappa = json_rational(params["kappa"]);
    if (params.contains("epsilon")) b.pp.epsilon = json_rational(params["epsilon"]);
    return b;
}

int cmd_pipeline(const std::string& kind, const std::string& path, const RunConfig& cfg) {
    Bundle b = read_bundle(path);
    b.pp.prec = cfg.prec;
    Output out(cfg.out);
    json doc = {{"kind", kind}, {"params", b.pp.to_json()}};
    int code = kExitOk;
    try {
        if (kind == "propQ") {
            PropQResult r = run_propQ(b.P, b.pp.maps, b.pp.E, b.pp.t, b.pp.n, cfg.prec);
            doc["Q"] = format_poly(r.Q);
            doc["delta_P"] = interval_json(r.delta_P);
            doc["certificate"] = to_json(r.verdict);
            code = outcome_code(r.verdict.outcome());
        } else {
            PipelineResult r = kind == "propR"      ? run_propR(b.P, b.pp)
                               : kind == "propRbis" ? run_propRbis(b.P, b.pp)
                                                    : run_propRter(b.P, b.pp);
            doc["trace"] = r.trace.to_json();
            doc["certificate"] = r.certificate(b.pp);
            code = outcome_code(r.final.outcome());
        }
    } catch (const PipelineFailure& e) {
        doc["trace"] = e.trace.to_json();
        doc["error"] = e.what();
        const StageRecord* s = e.trace.failing_stage();
        code = s && s->verdict.outcome() == Outcome::Undecided ? kExitUndecided : kExitFails;
    } catch (const PreconditionError& e) {
        doc["rejected"] = e.what();
        if (e.verdict) doc["hypotheses"] = to_json(*e.verdict);
        code = kExitRejected;
    } catch (const UndecidedError& e) {
        doc["error"] = e.what();
        doc["undecided"] = to_json(e.verdict);
        code = kExitUndecided;
    }
    doc["exit"] = code;
    out.os() << doc.dump(2) << "\n";
    return code;
}

// ---- small commands ----------------------------------------------------------

int cmd_zarankiewicz(const std::vector<long>& a) {
    const long m1 = a[0], n1 = a[1], m = a[2], n = a[3];
    if (m1 < 2 || n1 < 2 || m1 > m || n1 > n || m > 4 || n > 4) {
        std::cerr << "zarankiewicz: need 2 <= m1 <= m <= 4 and 2 <= n1 <= n <= 4\n";
        return kExitUsage;
    }
    long k = zarankiewicz_oracle(unsigned(m1), unsigned(n1), unsigned(m), unsigned(n));
    std::cout << k;
    if (m1 == 2) std::cout << " (bound " << zarankiewicz_bound(unsigned(n1), unsigned(m), unsigned(n)) << ")";
    std::cout << "\n";
    return kExitOk;
}

int cmd_partition(const std::string& epath, const std::string& fpath, int ell, const RunConfig& cfg) {
    LatticeSet e = LatticeSet::parse(read_file(epath));
    LatticeSet f = fpath.empty() ? orbit(e) : LatticeSet::parse(read_file(fpath));
    PartitionResult r = ell < 0 ? partition_prop61(e, f) : partition_prop62(e, f, unsigned(ell));
    Output out(cfg.out);
    out.os() << json{{"certificate", r.cert.to_json()}, {"verdict", to_json(r.verdict)}}.dump() << "\n";
    return outcome_code(r.verdict.outcome());
}

int cmd_gcd_translates(const std::string& ppath, const std::string& scales, int ell, const RunConfig& cfg) {
    RatPoly p = read_poly_text(read_file(ppath));
    ScaleSet A = ScaleSet::parse(scales);
    json doc = {{"P", format_poly(p)}};
    int code = kExitOk;
    RatPoly q;
    if (ell >= 0) {
        ThmGResult r = verify_thmG(p, A, unsigned(ell), cfg.prec);
        q = r.Q;
        doc["certificate"] = to_json(r.verdict);
        code = outcome_code(r.verdict.outcome());
    } else {
        q = gcd_translates(p, A);
    }
    doc["Q"] = format_poly(q);
    doc["pretty"] = pretty_poly(q);
    Output out(cfg.out);
    out.os() << doc.dump() << "\n";
    return code;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"gelfond-lab: certified checks of finite-n transcendence machinery", "gelfond-lab"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    RunConfig cfg;
    long bits = 0, bits_cap = 0;
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--trials", cfg.trials, "trial count")->capture_default_str();
    app.add_option("--bits", bits, "starting precision in bits");
    app.add_option("--bits-cap", bits_cap, "precision cap in bits (default from GELFOND_BITS_CAP)");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_flag("--summary", cfg.summary, "print an aggregate line");
    app.add_option("--workers", cfg.workers, "worker threads (default: logical cores)");
    app.add_flag("-v,--verbose", cfg.verbosity, "verbosity");

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "run a verification campaign");
    verify->add_option("suite", vo.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--points", vo.points, "point file (propfg single instance)");
    verify->add_option("--f", vo.f, "polynomial file F (propfg single instance)");
    verify->add_option("--g", vo.g, "polynomial file G (propfg single instance)");
    verify->add_option("--t", vo.t, "derivative count t")->capture_default_str();
    verify->add_option("--n", vo.n, "degree bound n (default max deg)");

    std::string spec_path;
    auto* construct = app.add_subcommand("construct", "build auxiliary polynomials from a spec file");
    construct->add_option("spec", spec_path, "spec JSON (object or array)")->required();

    std::string kind, bundle;
    auto* pipeline = app.add_subcommand("pipeline", "run a proposition pipeline on a bundle");
    pipeline->add_option("kind", kind)->required()->check(CLI::IsMember({"propQ", "propR", "propRbis", "propRter"}));
    pipeline->add_option("bundle", bundle, "bundle JSON")->required();

    std::vector<long> zargs;
    auto* zar = app.add_subcommand("zarankiewicz", "exhaustive k(m1,n1;m,n)");
    zar->add_option("args", zargs, "m1 n1 m n")->required()->expected(4);

    std::string epath, fpath;
    int ell = -1;
    auto* part = app.add_subcommand("partition", "partition certificate for E (and F, default O(E))");
    part->add_option("E", epath, "lattice-set file")->required();
    part->add_option("--F", fpath, "lattice-set file for F");
    part->add_option("--ell", ell, "use the ball construction with this l (default: single points)");

    std::string ppath, scales;
    int gell = -1;
    auto* gt = app.add_subcommand("gcd-translates", "gcd of P(aT) over a in A");
    gt->add_option("poly", ppath, "polynomial file")->required();
    gt->add_option("--scales", scales, "whitespace separated elements of A")->required();
    gt->add_option("--ell", gell, "also certify the degree and height bounds with this l");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    if (bits > 0) cfg.prec.start = bits;
    if (bits_cap > 0) cfg.prec.cap = bits_cap;
    if (cfg.prec.cap < cfg.prec.start) {
        std::cerr << "--bits-cap must be at least --bits\n";
        return kExitUsage;
    }

    try {
        if (*verify) return cmd_verify(vo, cfg);
        if (*construct) return cmd_construct(spec_path, cfg);
        if (*pipeline) return cmd_pipeline(kind, bundle, cfg);
        if (*zar) return cmd_zarankiewicz(zargs);
        if (*part) return cmd_partition(epath, fpath, ell, cfg);
        if (*gt) return cmd_gcd_translates(ppath, scales, gell, cfg);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kExitRejected;
    } catch (const UndecidedError& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kExitUndecided;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFails;
    }
    return kExitUsage;
}

}  // namespace gelfond
