#include "hashpebble/trace.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include <json.hpp>

namespace hashpebble {

std::size_t Trace::max_storage() const
{
    std::size_t m = 0;
    for (const auto& row : rows)
        m = std::max(m, row.storage);
    return m;
}

std::uint64_t Trace::total_hashes() const
{
    return std::accumulate(rows.begin(), rows.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const TraceRow& row) { return acc + row.hashes; });
}

std::vector<std::uint64_t> Trace::output_stage_work() const
{
    std::vector<std::uint64_t> w;
    for (std::uint64_t r = pow2(k) + 1; r <= rows.size(); ++r)
        w.push_back(rows[r - 1].hashes);
    return w;
}

Trace run_trace(FrameworkPebbler pebbler)
{
    Trace trace{pebbler.order(), {}};
    trace.rows.reserve(pebbler.lifetime());
    while (!pebbler.exhausted()) {
        std::size_t storage = pebbler.storage();
        RoundResult r = pebbler.step();
        trace.rows.push_back({r.round, r.hashes, storage, std::move(r.output)});
    }
    return trace;
}

Trace run_trace(const Owf& owf, Family family, unsigned k, const Value& seed, ChildOrder child_order)
{
    return run_trace(FrameworkPebbler(owf, family, k, seed, child_order));
}

void write_csv(std::ostream& os, const Trace& trace)
{
    os << "round,hashes,storage,output\n";
    for (const auto& row : trace.rows)
        os << row.round << ',' << row.hashes << ',' << row.storage << ',' << (row.output ? row.output->hex() : "")
           << '\n';
}

void write_jsonl(std::ostream& os, const Trace& trace)
{
    for (const auto& row : trace.rows) {
        nlohmann::json j{{"round", row.round}, {"hashes", row.hashes}, {"storage", row.storage}};
        j["output"] = row.output ? nlohmann::json(row.output->hex()) : nlohmann::json(nullptr);
        os << j.dump() << '\n';
    }
}

}  // namespace hashpebble
