#include "hashpebble/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "hashpebble/errors.hpp"
#include "hashpebble/inplace.hpp"
#include "hashpebble/pebbler.hpp"
#include "hashpebble/schedule.hpp"
#include "hashpebble/trace.hpp"

namespace hashpebble {

namespace {

constexpr std::string_view fault_schedule = "schedule-off-by-one";
constexpr std::string_view fault_key_equation = "key-equation-shift";

struct Context {
    const VerifyOptions& options;
    Value seed;

    bool fault(std::string_view name) const { return options.fault && *options.fault == name; }

    ScheduleRule rule(Family family) const
    {
        ScheduleRule base = rule_for(family);
        if (!fault(fault_schedule))
            return base;
        return [base](unsigned k, std::uint64_t r) { return base(k, r) + (r == pow2(k) - 1 ? 1 : 0); };
    }
};

unsigned ceil_half(unsigned k)
{
    return (k + 1) / 2;
}

// Each check returns an empty string on success, otherwise the first counterexample.
using Check = std::function<std::string(const Context&)>;

std::string check_schedule_sums(const Context& ctx)
{
    for (auto family : all_families) {
        auto rule = ctx.rule(family);
        for (unsigned k = 0; k <= std::min(ctx.options.k_max, 20u); ++k) {
            std::uint64_t sum = 0;
            for (std::uint64_t r = 1; r < pow2(k); ++r)
                sum += rule(k, r);
            if (sum != pow2(k) - 1)
                return std::string(to_string(family)) + " k=" + std::to_string(k) + " sums to " + std::to_string(sum);
        }
    }
    return {};
}

std::string check_round_eq(const Context& ctx)
{
    for (unsigned k = 2; k <= std::min(ctx.options.k_max, 16u); ++k)
        if (parity_round(unrounded_optimal_explicit(k), k).t != make_schedule(Family::optimal, k).t)
            return "k=" + std::to_string(k);
    return {};
}

std::string check_rec_explicit(const Context& ctx)
{
    for (unsigned k = 2; k <= std::min(ctx.options.k_max, 16u); ++k)
        if (unrounded_optimal_recursive(k) != unrounded_optimal_explicit(k))
            return "k=" + std::to_string(k);
    return {};
}

std::string check_key_equation(const Context& ctx)
{
    for (unsigned k = 2; k <= std::min(ctx.options.k_max, 16u); ++k) {
        HalfSeq v = v_seq(k);
        if (ctx.fault(fault_key_equation))
            v.set(0, v[0] + Half{1});
        if (!key_equation_holds(u_seq(k), v, work_sequence_half(k - 1), k))
            return "k=" + std::to_string(k);
    }
    return {};
}

std::string check_work_bounds(const Context& ctx)
{
    for (unsigned k = 1; k <= std::min(ctx.options.k_max, 16u); ++k) {
        for (auto family : all_families) {
            std::uint64_t m = work_sequence(ctx.rule(family), k).max();
            std::string where = std::string(to_string(family)) + " k=" + std::to_string(k) + " max(W)=" +
                                std::to_string(m);
            if ((family == Family::speed1 || family == Family::speed2) && m != k - 1)
                return where;
            if (family == Family::optimal && k >= 2 && m != ceil_half(k))
                return where;
            if (k >= 2 && m < ceil_half(k))
                return where;
        }
    }
    return {};
}

// One framework run per (family, k) feeds four properties.
std::map<std::string, std::string> check_framework_runs(const Context& ctx)
{
    std::map<std::string, std::string> failures{
        {"oracle-reversal", ""}, {"work-match", ""}, {"storage-endpoints", ""}, {"storage-bounds", ""}};
    auto fail = [&failures](const std::string& name, const std::string& what) {
        if (failures[name].empty())
            failures[name] = what;
    };

    for (unsigned k = 0; k <= std::min(ctx.options.k_max, 14u); ++k) {
        auto oracle = reverse_oracle(ctx.options.owf, k, ctx.seed);
        for (auto family : all_families) {
            std::string where = std::string(to_string(family)) + " k=" + std::to_string(k);
            Trace trace;
            try {
                trace = run_trace(FrameworkPebbler(ctx.options.owf, ctx.rule(family), k, ctx.seed));
            } catch (const std::exception& e) {
                for (auto& [name, msg] : failures)
                    fail(name, where + ": " + e.what());
                continue;
            }
            std::vector<Value> outputs;
            for (const auto& row : trace.rows)
                if (row.output)
                    outputs.push_back(*row.output);
            if (outputs != oracle)
                fail("oracle-reversal", where);
            if (trace.output_stage_work() != work_sequence(family, k).w)
                fail("work-match", where);
            if (trace.storage_at(1) != 1 || trace.storage_at(pow2(k)) != k + 1)
                fail("storage-endpoints", where);
            if (k >= 1) {
                std::size_t expected = family == Family::speed1 ? std::max(k + 1, 2 * k - 2) : k + 1;
                if (trace.max_storage() != expected)
                    fail("storage-bounds", where + " max(S)=" + std::to_string(trace.max_storage()));
            }
        }
    }
    return failures;
}

std::string check_inplace(const Context& ctx, InPlaceVariant variant)
{
    Family family = variant == InPlaceVariant::speed2 ? Family::speed2 : Family::optimal;
    for (unsigned k = 1; k <= std::min(ctx.options.k_max, 14u); ++k) {
        std::string where = "k=" + std::to_string(k);
        FrameworkPebbler framework(ctx.options.owf, ctx.rule(family), k, ctx.seed);
        while (framework.next_round() < pow2(k))
            framework.step();
        InPlacePebbler inplace = variant == InPlaceVariant::speed2
                                     ? InPlacePebbler::speed2(ctx.options.owf, k, ctx.seed)
                                     : InPlacePebbler::optimal(ctx.options.owf, k, ctx.seed);
        while (!framework.exhausted()) {
            RoundResult expected = framework.step();
            StepResult got = inplace.step();
            if (got.output != *expected.output || got.hashes != expected.hashes)
                return where + " round " + std::to_string(expected.round);
            if (inplace.occupied() > k + 1)
                return where + " uses " + std::to_string(inplace.occupied()) + " slots";
        }
        if (!inplace.exhausted())
            return where + " in-place pebbler not exhausted";
    }
    return {};
}

Phase framework_phase(const ActivePebbler& p)
{
    if (p.round == pow2(p.order))
        return Phase::first_output;
    if (p.order >= 1 && p.round < pow2(p.order - 1))
        return Phase::idle;
    return Phase::hashing;
}

std::string check_decode_consistent(const Context& ctx)
{
    for (unsigned k = 1; k <= std::min(ctx.options.k_max, 14u); ++k) {
        FrameworkPebbler p(ctx.options.owf, ctx.rule(Family::optimal), k, ctx.seed);
        while (!p.exhausted()) {
            std::uint64_t r = p.next_round();
            if (r > pow2(k)) {
                std::vector<ActivePebbler> active;
                p.collect_active(active);
                std::sort(active.begin(), active.end(),
                          [](const ActivePebbler& a, const ActivePebbler& b) { return a.order > b.order; });
                auto decoded = decode_states(k, pow2(k + 1) - r);
                bool same = active.size() == decoded.size();
                for (std::size_t i = 0; same && i < active.size(); ++i)
                    same = active[i].order == decoded[i].index &&
                           active[i].round == pow2(decoded[i].index + 1) - decoded[i].local_counter &&
                           framework_phase(active[i]) == decoded[i].phase;
                if (!same)
                    return "k=" + std::to_string(k) + " round " + std::to_string(r);
            }
            p.step();
        }
    }
    return {};
}

std::string check_budget_schedule(const Context& ctx)
{
    for (unsigned k = 1; k <= std::min(ctx.options.k_max, 16u); ++k) {
        for (std::uint64_t c = 1; c < pow2(k); ++c) {
            for (const auto& seg : segment_budgets(k, c)) {
                std::uint64_t local_round = pow2(seg.index + 1) - (c & (pow2(seg.index + 1) - 1));
                if (unrounded_optimal_entry(seg.index, local_round) != seg.budget)
                    return "k=" + std::to_string(k) + " c=" + std::to_string(c) + " P_" + std::to_string(seg.index);
            }
        }
    }
    return {};
}

PropertyResult run_check(const std::string& name, const Check& check, const Context& ctx)
{
    try {
        std::string failure = check(ctx);
        return {name, failure.empty(), failure};
    } catch (const std::exception& e) {
        return {name, false, e.what()};
    }
}

}  // namespace

std::vector<std::string_view> fault_names()
{
    return {fault_schedule, fault_key_equation};
}

std::vector<PropertyResult> run_verification(const VerifyOptions& options)
{
    const auto faults = fault_names();
    if (options.fault && std::find(faults.begin(), faults.end(), *options.fault) == faults.end())
        throw ConfigError("unknown fault: " + *options.fault);
    if (options.seed && options.seed->size() != options.owf.width())
        throw InvalidInput("seed width does not match one-way function");
    Context ctx{options, options.seed ? *options.seed : default_seed(options.owf)};

    std::vector<PropertyResult> results;
    results.push_back(run_check("schedule-sum", check_schedule_sums, ctx));
    results.push_back(run_check("round-eq", check_round_eq, ctx));
    results.push_back(run_check("rec-explicit", check_rec_explicit, ctx));
    results.push_back(run_check("key-eq", check_key_equation, ctx));
    results.push_back(run_check("work-bounds", check_work_bounds, ctx));

    std::map<std::string, std::string> runs;
    try {
        runs = check_framework_runs(ctx);
    } catch (const std::exception& e) {
        runs = {{"oracle-reversal", e.what()}, {"work-match", e.what()}, {"storage-endpoints", e.what()},
                {"storage-bounds", e.what()}};
    }
    for (const char* name : {"oracle-reversal", "work-match", "storage-endpoints", "storage-bounds"})
        results.push_back({name, runs[name].empty(), runs[name]});

    results.push_back(run_check(
        "inplace-speed2", [](const Context& c) { return check_inplace(c, InPlaceVariant::speed2); }, ctx));
    results.push_back(run_check(
        "inplace-optimal", [](const Context& c) { return check_inplace(c, InPlaceVariant::optimal); }, ctx));
    results.push_back(run_check("decode-consistent", check_decode_consistent, ctx));
    results.push_back(run_check("budget-schedule", check_budget_schedule, ctx));
    return results;
}

}  // namespace hashpebble
