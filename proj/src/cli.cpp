#include "hashpebble/cli.hpp"

#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hashpebble/errors.hpp"
#include "hashpebble/inplace.hpp"
#include "hashpebble/net.hpp"
#include "hashpebble/pebbler.hpp"
#include "hashpebble/schedule.hpp"
#include "hashpebble/trace.hpp"
#include "hashpebble/verify.hpp"

namespace hashpebble {

namespace {

constexpr unsigned max_cli_order = 30;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    unsigned k = 4;
    std::string family = "optimal";
    std::string owf = "md5";
    std::string seed;
    std::string format;
    bool inplace = false;
    bool unrounded = false;
    bool work = false;
    unsigned k_max = 10;
    std::string fault;
    std::string host = "127.0.0.1";
    std::uint16_t port = 7070;
    std::uint64_t rounds = 1;
    std::uint64_t tamper = 0;
};

Owf resolve_owf(const Config& cfg)
{
    try {
        return builtin(cfg.owf);
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
}

Value resolve_seed(const Config& cfg, const Owf& owf)
{
    if (cfg.seed.empty())
        return default_seed(owf);
    try {
        Value seed = Value::from_hex(cfg.seed);
        if (seed.size() != owf.width())
            throw UsageError("--seed must be " + std::to_string(2 * owf.width()) + " hex characters for " +
                             owf.name());
        return seed;
    } catch (const InvalidInput& e) {
        throw UsageError(std::string("--seed: ") + e.what());
    }
}

InPlacePebbler make_inplace(const Config& cfg, const Owf& owf, const Value& seed)
{
    Family family = parse_family(cfg.family);
    if (family == Family::speed2)
        return InPlacePebbler::speed2(owf, cfg.k, seed);
    if (family == Family::optimal)
        return InPlacePebbler::optimal(owf, cfg.k, seed);
    throw UsageError("--inplace supports the speed2 and optimal families only");
}

std::string format_or(const Config& cfg, std::string fallback)
{
    return cfg.format.empty() ? fallback : cfg.format;
}

int cmd_schedule(const Config& cfg, std::ostream& out)
{
    Family family = parse_family(cfg.family);
    std::string fmt = format_or(cfg, "plain");

    if (cfg.unrounded) {
        if (family != Family::optimal || cfg.k < 2)
            throw UsageError("--unrounded requires --family optimal and --k >= 2");
        out << unrounded_optimal(cfg.k).to_string() << '\n';
        return 0;
    }

    std::vector<std::uint64_t> values =
        cfg.work ? work_sequence(family, cfg.k).w : make_schedule(family, cfg.k).t;
    std::uint64_t first_round = cfg.work ? pow2(cfg.k) + 1 : 1;

    if (fmt == "plain") {
        for (std::size_t i = 0; i < values.size(); ++i)
            out << (i ? "," : "") << values[i];
        out << '\n';
    } else if (fmt == "csv") {
        out << "round,hashes\n";
        for (std::size_t i = 0; i < values.size(); ++i)
            out << first_round + i << ',' << values[i] << '\n';
    } else {
        for (std::size_t i = 0; i < values.size(); ++i)
            out << nlohmann::json{{"round", first_round + i}, {"hashes", values[i]}}.dump() << '\n';
    }
    return 0;
}

int cmd_trace(const Config& cfg, std::ostream& out)
{
    Owf owf = resolve_owf(cfg);
    Value seed = resolve_seed(cfg, owf);
    Trace trace;
    if (cfg.inplace) {
        // Output stage only: the in-place pebbler runs its initial stage up front.
        InPlacePebbler p = make_inplace(cfg, owf, seed);
        trace.k = cfg.k;
        while (!p.exhausted()) {
            std::uint64_t round = p.state().r;
            std::size_t storage = p.occupied();
            StepResult r = p.step();
            trace.rows.push_back({round, r.hashes, storage, std::move(r.output)});
        }
    } else {
        trace = run_trace(owf, parse_family(cfg.family), cfg.k, seed);
    }
    if (format_or(cfg, "csv") == "jsonl")
        write_jsonl(out, trace);
    else
        write_csv(out, trace);
    return 0;
}

int cmd_reverse(const Config& cfg, std::ostream& out)
{
    Owf owf = resolve_owf(cfg);
    Value seed = resolve_seed(cfg, owf);
    if (cfg.inplace) {
        InPlacePebbler p = make_inplace(cfg, owf, seed);
        while (!p.exhausted())
            out << p.step().output.hex() << '\n';
        return 0;
    }
    FrameworkPebbler p(owf, parse_family(cfg.family), cfg.k, seed);
    while (!p.exhausted()) {
        RoundResult r = p.step();
        if (r.output)
            out << r.output->hex() << '\n';
    }
    return 0;
}

int cmd_verify(const Config& cfg, std::ostream& out)
{
    VerifyOptions options;
    options.k_max = cfg.k_max;
    options.owf = resolve_owf(cfg);
    if (!cfg.seed.empty())
        options.seed = resolve_seed(cfg, options.owf);
    if (!cfg.fault.empty())
        options.fault = cfg.fault;

    bool all = true;
    for (const auto& result : run_verification(options)) {
        out << (result.passed ? "PASS " : "FAIL ") << result.name;
        if (!result.detail.empty())
            out << "  (" << result.detail << ')';
        out << '\n';
        all = all && result.passed;
    }
    return all ? 0 : 1;
}

int cmd_serve(const Config& cfg, std::ostream& out)
{
    net::TcpServer server(resolve_owf(cfg), cfg.host, cfg.port);
    out << "listening on " << cfg.host << ':' << server.port() << std::endl;
    server.serve();
    return 0;
}

int cmd_client(const Config& cfg, std::ostream& out, std::ostream& err)
{
    Owf owf = resolve_owf(cfg);
    net::ClientOptions options;
    options.host = cfg.host;
    options.port = cfg.port;
    options.k = cfg.k;
    options.seed = resolve_seed(cfg, owf);
    options.rounds = cfg.rounds;
    if (cfg.tamper != 0)
        options.tamper = cfg.tamper;
    Family family = parse_family(cfg.family);
    if (!cfg.inplace)
        options.backend = ProverBackend::framework(family);
    else if (family == Family::speed2)
        options.backend = ProverBackend::inplace_speed2();
    else if (family == Family::optimal)
        options.backend = ProverBackend::inplace_optimal();
    else
        throw UsageError("--inplace supports the speed2 and optimal families only");

    bool ok = true;
    auto report = net::run_client(owf, options, [&](const net::ClientRound& r) {
        if (r.round == 0)
            out << "register";
        else
            out << "round " << r.round << " hashes " << r.hashes << (r.tampered ? " tampered" : "");
        out << " -> " << r.reply.to_line() << '\n';
        if (!r.tampered && r.reply.kind != wire::Reply::Kind::ok)
            ok = false;
    });
    if (report.exhausted) {
        err << "prover exhausted: all " << pow2(cfg.k) << " chain elements have been released\n";
        return 1;
    }
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Config cfg;
    CLI::App app{"Hash chain reversal by binary pebbling"};
    app.require_subcommand(1);

    const std::vector<std::string> families{"rushing", "speed1", "speed2", "optimal"};
    const std::vector<std::string> owfs{"md5", "davies-meyer-aes128", "testmix64"};
    const std::string seed_help =
        "Chain seed as hex (default: MD5 of the empty string for md5, f(0...0) for other functions)";

    auto add_k = [&](CLI::App* sub) {
        sub->add_option("--k", cfg.k, "Chain length is 2^k")->check(CLI::Range(0u, max_cli_order));
    };
    auto add_family = [&](CLI::App* sub) {
        sub->add_option("--family", cfg.family, "Schedule family")->check(CLI::IsMember(families));
    };
    auto add_chain = [&](CLI::App* sub) {
        add_k(sub);
        add_family(sub);
        sub->add_option("--owf", cfg.owf, "One-way function")->check(CLI::IsMember(owfs));
        sub->add_option("--seed", cfg.seed, seed_help);
    };
    auto add_endpoint = [&](CLI::App* sub) {
        sub->add_option("--host", cfg.host, "Server address");
        sub->add_option("--port", cfg.port, "Server port");
    };

    auto* schedule = app.add_subcommand("schedule", "Print the schedule T_k (or the work sequence W_k)");
    add_k(schedule);
    add_family(schedule);
    schedule->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"plain", "csv", "jsonl"}));
    schedule->add_flag("--unrounded", cfg.unrounded, "Print the optimal schedule over half-integers");
    schedule->add_flag("--work", cfg.work, "Print W_k instead of T_k");

    auto* trace = app.add_subcommand("trace", "Per-round hashes, storage and outputs of P_k");
    add_chain(trace);
    trace->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
    trace->add_flag("--inplace", cfg.inplace, "Trace the in-place pebbler's output stage");

    auto* reverse = app.add_subcommand("reverse", "Stream the reversed chain as hex, one value per line");
    add_chain(reverse);
    reverse->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"plain"}));
    reverse->add_flag("--inplace", cfg.inplace, "Use the in-place pebbler (speed2 or optimal)");

    auto* verify = app.add_subcommand("verify", "Run the self-checks and report each property");
    verify->add_option("--k-max", cfg.k_max, "Largest order checked")->check(CLI::Range(1u, 16u));
    verify->add_option("--owf", cfg.owf, "One-way function")->check(CLI::IsMember(owfs));
    verify->add_option("--seed", cfg.seed, seed_help);
    verify->add_option("--inject-fault", cfg.fault, "Deliberate defect, to confirm the checks catch it");

    auto* serve = app.add_subcommand("serve", "Run the verifier server");
    add_endpoint(serve);
    serve->add_option("--owf", cfg.owf, "One-way function")->check(CLI::IsMember(owfs));

    auto* client = app.add_subcommand("client", "Register a chain and identify for --rounds rounds");
    add_chain(client);
    add_endpoint(client);
    client->add_option("--rounds", cfg.rounds, "Identification rounds to run");
    client->add_option("--tamper", cfg.tamper, "Flip one bit of the value sent in this round (1-based)");
    client->add_flag("--inplace", cfg.inplace, "Use the in-place pebbler (speed2 or optimal)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*schedule)
            return cmd_schedule(cfg, out);
        if (*trace)
            return cmd_trace(cfg, out);
        if (*reverse)
            return cmd_reverse(cfg, out);
        if (*verify)
            return cmd_verify(cfg, out);
        if (*serve)
            return cmd_serve(cfg, out);
        if (*client)
            return cmd_client(cfg, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace hashpebble
