#include "rotaset/analyzer.hpp"
#include "rotaset/dadic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace rotaset;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCheckFail = 3;
constexpr int kExitIo = 4;

struct CliError {
    int code;
    std::string message;
};

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << "0x" << std::hex << v;
    return os.str();
}

/// Hex seeds (with or without 0x) are taken literally; anything else is
/// hashed, so every seed string is usable and reproducible.
std::uint64_t parse_seed(const std::string& s) {
    std::string t = s;
    if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
    bool hex = !t.empty() && t.size() <= 16;
    for (char c : t)
        if (!std::isxdigit(static_cast<unsigned char>(c))) hex = false;
    if (hex) return std::stoull(t, nullptr, 16);
    return fnv1a64(s);
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string slurp(const fs::path& p, int err_code) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw CliError{err_code, "cannot read " + p.string()};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json parse_data_json(const fs::path& p) {
    std::string text = slurp(p, kExitIo);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw CliError{kExitIo, p.string() + ": " + e.what()};
    }
}

struct RunConfig {
    std::string command;
    std::string spec_path, sample_path, orbit_path, map_path, word;
    long long N = 500;
    long long depth = 64;
    long long orbit_len = 200;
    long long trials = 20000;
    std::string seed;
    std::string out;
    std::string format;
    std::string rank_tol, fiber_eps, fiber_delta, density_eps;
};

long long positive_field(const json& j, const char* key, long long dflt) {
    if (!j.contains(key)) return dflt;
    if (!j.at(key).is_number_integer()) throw CliError{kExitConfig, std::string(key) + " must be an integer"};
    long long v = j.at(key).get<long long>();
    if (v <= 0) throw CliError{kExitConfig, std::string(key) + " must be positive"};
    return v;
}

RunConfig load_config(const fs::path& path, std::string& hash_out) {
    std::string text = slurp(path, kExitConfig);
    hash_out = hex64(fnv1a64(text));
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CliError{kExitConfig, path.string() + ": " + e.what()};
    }
    if (!j.is_object()) throw CliError{kExitConfig, "config must be a JSON object"};

    static const char* allowed[] = {"command", "spec",   "sample", "orbit", "map", "word",
                                    "N",       "depth",  "orbit_len", "trials", "seed", "tolerances",
                                    "out",     "format"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || it.key() == k;
        if (!ok) throw CliError{kExitConfig, "unknown config field: " + it.key()};
    }

    RunConfig c;
    auto str = [&](const char* k) { return j.contains(k) ? j.at(k).get<std::string>() : std::string(); };
    try {
        c.command = str("command");
        c.spec_path = str("spec");
        c.sample_path = str("sample");
        c.orbit_path = str("orbit");
        c.map_path = str("map");
        c.word = str("word");
        c.seed = str("seed");
        c.out = str("out");
        c.format = str("format");
        c.N = positive_field(j, "N", 500);
        c.depth = positive_field(j, "depth", 64);
        c.orbit_len = positive_field(j, "orbit_len", 200);
        c.trials = positive_field(j, "trials", 20000);
        if (j.contains("tolerances")) {
            const json& t = j.at("tolerances");
            if (!t.is_object()) throw CliError{kExitConfig, "tolerances must be an object"};
            static const char* tkeys[] = {"rank", "fiber_eps", "fiber_delta", "density_eps"};
            for (auto it = t.begin(); it != t.end(); ++it) {
                bool ok = false;
                for (const char* k : tkeys) ok = ok || it.key() == k;
                if (!ok) throw CliError{kExitConfig, "unknown tolerance field: " + it.key()};
            }
            if (t.contains("rank")) c.rank_tol = t.at("rank").get<std::string>();
            if (t.contains("fiber_eps")) c.fiber_eps = t.at("fiber_eps").get<std::string>();
            if (t.contains("fiber_delta")) c.fiber_delta = t.at("fiber_delta").get<std::string>();
            if (t.contains("density_eps")) c.density_eps = t.at("density_eps").get<std::string>();
        }
    } catch (const json::exception& e) {
        throw CliError{kExitConfig, std::string("config: ") + e.what()};
    }
    if (!c.format.empty() && c.format != "json" && c.format != "csv")
        throw CliError{kExitConfig, "format must be json or csv"};
    return c;
}

struct Ctx {
    RunConfig cfg;
    std::string config_hash;
    fs::path out_dir = ".";
    std::string format = "json";
    std::uint64_t seed = 0;
    std::string seed_source;
    bool no_timestamp = false;
    bool decimal = false;
};

void write_text(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw CliError{kExitIo, "cannot write " + p.string()};
    out << content;
    if (!out) throw CliError{kExitIo, "write failed for " + p.string()};
}

std::string csv_stamp(const Ctx& ctx) {
    std::string s = "# config_hash=" + ctx.config_hash;
    if (!ctx.no_timestamp) s += " timestamp=" + utc_timestamp();
    return s + "\n";
}

void stamp_json(const Ctx& ctx, ordered_json& j) {
    j["config_hash"] = ctx.config_hash;
    if (!ctx.no_timestamp) j["timestamp"] = utc_timestamp();
}

void write_json_file(const fs::path& p, const ordered_json& j) {
    write_text(p, j.dump(2) + "\n");
}

PartitionSpec load_spec(const Ctx& ctx) {
    if (ctx.cfg.spec_path.empty()) throw CliError{kExitConfig, "config needs a \"spec\" path for this command"};
    json j = parse_data_json(ctx.cfg.spec_path);
    return validate_spec(spec_from_json(j));
}

PiecewiseMap load_map(const Ctx& ctx) {
    if (ctx.cfg.map_path.empty()) throw CliError{kExitConfig, "config needs a \"map\" path for this command"};
    json j = parse_data_json(ctx.cfg.map_path);
    PiecewiseMap T = map_from_json(j);
    validate_map(T);
    return T;
}

std::shared_ptr<SampleSet> load_sample(const Ctx& ctx, const PartitionSpec& spec) {
    if (ctx.cfg.sample_path.empty()) throw CliError{kExitConfig, "config needs a \"sample\" path for this command"};
    std::ifstream in(ctx.cfg.sample_path);
    if (!in) throw CliError{kExitIo, "cannot read " + ctx.cfg.sample_path};
    try {
        return std::make_shared<SampleSet>(read_sample_csv(in, spec, static_cast<std::size_t>(ctx.cfg.depth)));
    } catch (const std::exception& e) {
        throw CliError{kExitIo, ctx.cfg.sample_path + ": " + e.what()};
    }
}

/// Minimal orbit reader: needs the time and exact position columns written by
/// the pullback command; comment lines are skipped.
PullbackOrbit read_orbit_file(const Ctx& ctx, int d) {
    std::ifstream in(ctx.cfg.orbit_path);
    if (!in) throw CliError{kExitIo, "cannot read " + ctx.cfg.orbit_path};
    PullbackOrbit orbit;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // column header
            continue;
        }
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cols.push_back(cell);
        if (cols.size() < 6) throw CliError{kExitIo, ctx.cfg.orbit_path + ": short row: " + line};
        OrbitPoint pt;
        try {
            pt.time = std::stoll(cols[0]);
            pt.x = parse_rational(cols[4]);
            pt.digits = parse_digits(cols[3], d);
        } catch (const std::exception& e) {
            throw CliError{kExitIo, ctx.cfg.orbit_path + ": " + e.what()};
        }
        orbit.points.push_back(std::move(pt));
    }
    if (orbit.points.empty()) throw CliError{kExitIo, ctx.cfg.orbit_path + ": no orbit rows"};
    return orbit;
}

AnalyzerOptions analyzer_options(const Ctx& ctx, std::size_t n) {
    AnalyzerOptions opt;
    opt.trials = ctx.cfg.trials;
    opt.seed = ctx.seed;
    if (!ctx.cfg.rank_tol.empty()) opt.rank_tol = parse_rational(ctx.cfg.rank_tol);
    if (!ctx.cfg.fiber_eps.empty()) opt.fiber_eps = parse_rational(ctx.cfg.fiber_eps);
    if (!ctx.cfg.fiber_delta.empty()) opt.fiber_delta = parse_rational(ctx.cfg.fiber_delta);
    if (!ctx.cfg.density_eps.empty()) {
        opt.density_eps = parse_rational(ctx.cfg.density_eps);
    } else {
        // density proxy resolution scales with orbit length; floor at 1/100
        Rat adaptive = Rat(Int(100), Int(std::max<std::size_t>(n, 1)));
        opt.density_eps = std::max(Rat(Int(1), Int(100)), adaptive);
    }
    return opt;
}

int emit_report(const Ctx& ctx, AnalysisReport& rep, const std::string& stem) {
    rep.metadata["config_hash"] = ctx.config_hash;
    if (!ctx.no_timestamp) rep.metadata["timestamp"] = utc_timestamp();
    rep.metadata["seed_source"] = ctx.seed_source;
    if (ctx.format == "csv") {
        write_text(ctx.out_dir / (stem + ".csv"), csv_stamp(ctx) + report_to_csv(rep));
    } else {
        write_json_file(ctx.out_dir / (stem + ".json"), report_to_json(rep));
    }
    for (const CheckRecord& c : rep.checks) {
        std::cerr << c.name << ": " << verdict_str(c.verdict);
        if (!c.details.empty()) std::cerr << " (" << c.details << ")";
        std::cerr << "\n";
    }
    return rep.any_fail() ? kExitCheckFail : kExitOk;
}

int cmd_construct(Ctx& ctx) {
    PartitionSpec spec = load_spec(ctx);
    SampleSet s = sample_set(spec, static_cast<std::size_t>(ctx.cfg.N), static_cast<std::size_t>(ctx.cfg.depth));

    std::ostringstream body;
    write_sample_csv(s, body, ctx.decimal);
    write_text(ctx.out_dir / "sample.csv", csv_stamp(ctx) + body.str());

    ordered_json meta;
    stamp_json(ctx, meta);
    meta["command"] = "construct";
    meta["n"] = s.size();
    meta["depth"] = s.depth;
    meta["spec"] = spec_to_json(spec);
    ordered_json subs = ordered_json::array();
    for (const Substitution& sub : s.substitutions) {
        ordered_json e;
        e["from"] = format_rational(sub.from);
        e["to"] = format_rational(sub.to);
        e["reason"] = sub.reason;
        subs.push_back(e);
    }
    meta["substitutions"] = subs;
    meta["horizon_used"] = s.horizon_used;
    write_json_file(ctx.out_dir / "construct_meta.json", meta);
    return kExitOk;
}

int cmd_analyze(Ctx& ctx) {
    if (!ctx.cfg.sample_path.empty()) {
        PartitionSpec spec = load_spec(ctx);
        std::shared_ptr<SampleSet> s = load_sample(ctx, spec);
        AnalysisSample a = analysis_from_sample(s);
        AnalyzerOptions opt = analyzer_options(ctx, a.size());
        PointMap map = PointMap::TimesD(spec.d);
        std::optional<QuadraticNumber> theta0;
        if (spec.theta0.is_exact()) theta0 = spec.theta0.exact();
        AnalysisReport rep = run_full_suite(a, map, theta0, opt);
        return emit_report(ctx, rep, "analysis");
    }
    if (!ctx.cfg.orbit_path.empty()) {
        PiecewiseMap T = load_map(ctx);
        PullbackOrbit orbit = read_orbit_file(ctx, T.d);
        AnalysisSample a = analysis_from_pullback(orbit);
        AnalyzerOptions opt = analyzer_options(ctx, a.size());
        PointMap map = PointMap::Piecewise(T);
        std::optional<QuadraticNumber> theta0;
        if (!ctx.cfg.spec_path.empty()) {
            PartitionSpec spec = load_spec(ctx);
            if (spec.theta0.is_exact()) theta0 = spec.theta0.exact();
        }
        AnalysisReport rep = run_full_suite(a, map, theta0, opt);
        return emit_report(ctx, rep, "analysis");
    }
    throw CliError{kExitConfig, "analyze needs either a \"sample\" (with \"spec\") or an \"orbit\" (with \"map\")"};
}

int cmd_derive(Ctx& ctx) {
    PartitionSpec spec = load_spec(ctx);
    std::shared_ptr<SampleSet> s = load_sample(ctx, spec);
    DerivedPartition dp = derive_partition(*s);
    ordered_json out;
    stamp_json(ctx, out);
    out["command"] = "derive";
    out["derived"] = derived_to_json(dp);
    write_json_file(ctx.out_dir / "derived.json", out);
    return kExitOk;
}

int cmd_realize(Ctx& ctx) {
    PiecewiseMap T = load_map(ctx);
    if (ctx.cfg.word.empty()) throw CliError{kExitConfig, "realize needs a \"word\" of digits"};
    DigitString word;
    try {
        word = parse_digits(ctx.cfg.word, T.d);
    } catch (const std::exception& e) {
        throw CliError{kExitConfig, e.what()};
    }
    Realization r = realize_word(T, word);
    if (r.suspicious_all_top)
        std::cerr << "warning: word ends in a long run of the top digit; the realized point may sit on a "
                     "cylinder boundary\n";
    ordered_json out;
    stamp_json(ctx, out);
    out["command"] = "realize";
    out["word"] = word.str();
    out["enclosure_lo"] = format_rational(r.enclosure.lo);
    out["enclosure_hi"] = format_rational(r.enclosure.hi);
    out["candidate"] = format_rational(r.candidate);
    out["verified"] = r.verified;
    out["first_mismatch"] = r.first_mismatch;
    out["suspicious_all_top"] = r.suspicious_all_top;
    if (ctx.decimal) {
        out["candidate_dec"] = r.candidate.convert_to<double>();
    }
    write_json_file(ctx.out_dir / "realization.json", out);
    return r.verified ? kExitOk : kExitCheckFail;
}

int cmd_pullback(Ctx& ctx) {
    PiecewiseMap T = load_map(ctx);
    PartitionSpec spec = load_spec(ctx);
    PullbackOrbit orbit = pullback_sample(T, spec, static_cast<std::size_t>(ctx.cfg.depth),
                                          static_cast<std::size_t>(ctx.cfg.orbit_len),
                                          static_cast<std::size_t>(ctx.cfg.N));

    std::ostringstream body;
    write_orbit_csv(orbit, body, ctx.decimal);
    write_text(ctx.out_dir / "orbit.csv", csv_stamp(ctx) + body.str());

    AnalysisSample a = analysis_from_pullback(orbit);
    AnalyzerOptions opt = analyzer_options(ctx, a.size());
    PointMap map = PointMap::Piecewise(T);
    std::optional<QuadraticNumber> theta0;
    if (spec.theta0.is_exact()) theta0 = spec.theta0.exact();
    AnalysisReport rep = run_full_suite(a, map, theta0, opt);
    rep.metadata["omega_star"] = format_rational(orbit.omega_star);
    rep.metadata["word_len"] = orbit.word_len;
    return emit_report(ctx, rep, "pullback_analysis");
}

int dispatch(const std::string& command, Ctx& ctx) {
    try {
        if (command == "construct") return cmd_construct(ctx);
        if (command == "analyze") return cmd_analyze(ctx);
        if (command == "derive") return cmd_derive(ctx);
        if (command == "realize") return cmd_realize(ctx);
        if (command == "pullback") return cmd_pullback(ctx);
        throw CliError{kExitConfig, "unknown command " + command};
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const SpecValidationError& e) {
        std::cerr << "error: invalid spec: " << e.what() << "\n";
        return kExitConfig;
    } catch (const MapError& e) {
        std::cerr << "error: invalid map: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DerivationError& e) {
        std::cerr << "error: derivation failed: " << e.what() << "\n";
        return kExitCheckFail;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFail;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"construct, encode, and verify rotational subsets of the circle"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string format;
    std::string seed_str;
    bool no_timestamp = false;
    bool decimal = false;

    const char* names[] = {"construct", "analyze", "derive", "realize", "pullback"};
    const char* descs[] = {"build a coded sample from a partition spec",
                           "run the verification suite on a sample or orbit",
                           "recover partition data from a coded sample",
                           "locate a point realizing a given itinerary word",
                           "build a pullback orbit for a piecewise map and analyze it"};
    for (int i = 0; i < 5; ++i) {
        CLI::App* sc = app.add_subcommand(names[i], descs[i]);
        sc->add_option("--config", config_path, "run configuration JSON")->required();
        sc->add_option("--out", out_dir, "output directory (default .)");
        sc->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
        sc->add_option("--seed", seed_str, "seed (hex, or any string to hash)");
        sc->add_flag("--no-timestamp", no_timestamp, "omit timestamps for byte-stable outputs");
        sc->add_flag("--decimal", decimal, "add rounded decimal convenience columns");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (const char* prec = std::getenv("ROTASET_PRECISION")) {
        char* end = nullptr;
        unsigned long bits = std::strtoul(prec, &end, 10);
        if (end == prec || *end != '\0' || bits < 16 || bits > (1u << 20)) {
            std::cerr << "error: ROTASET_PRECISION must be an integer in [16, 1048576]\n";
            return kExitConfig;
        }
        set_working_precision(static_cast<unsigned>(bits));
    }

    Ctx ctx;
    try {
        ctx.cfg = load_config(config_path, ctx.config_hash);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    if (!ctx.cfg.command.empty() && ctx.cfg.command != command) {
        std::cerr << "error: config is for \"" << ctx.cfg.command << "\" but the " << command
                  << " command was invoked\n";
        return kExitConfig;
    }

    // CLI flags override config fields.
    if (!out_dir.empty()) ctx.out_dir = out_dir;
    if (ctx.out_dir == "." && !ctx.cfg.out.empty()) ctx.out_dir = ctx.cfg.out;
    ctx.format = !format.empty() ? format : (!ctx.cfg.format.empty() ? ctx.cfg.format : "json");
    std::string seed_text = !seed_str.empty() ? seed_str : (!ctx.cfg.seed.empty() ? ctx.cfg.seed : "0xR07A");
    ctx.seed = parse_seed(seed_text);
    ctx.seed_source = seed_text;
    ctx.no_timestamp = no_timestamp;
    ctx.decimal = decimal;

    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << ctx.out_dir << "\n";
        return kExitIo;
    }

    return dispatch(command, ctx);
}
