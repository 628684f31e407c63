#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hashpebble/pebbler.hpp"

namespace hashpebble {

struct TraceRow {
    std::uint64_t round = 0;
    std::uint64_t hashes = 0;
    std::size_t storage = 0;  // live values at the start of the round
    std::optional<Value> output;
};

/// Per-round record of a full pebbler lifetime, rounds 1 .. 2^(k+1) - 1.
struct Trace {
    unsigned k = 0;
    std::vector<TraceRow> rows;

    std::size_t storage_at(std::uint64_t round) const { return rows.at(round - 1).storage; }
    std::size_t max_storage() const;
    std::uint64_t total_hashes() const;
    /// Hash counts of the last 2^k - 1 rounds, comparable with work_sequence().
    std::vector<std::uint64_t> output_stage_work() const;
};

Trace run_trace(FrameworkPebbler pebbler);
Trace run_trace(const Owf& owf, Family family, unsigned k, const Value& seed,
                ChildOrder child_order = ChildOrder::descending);

/// `round,hashes,storage,output` with the output as lowercase hex or empty.
void write_csv(std::ostream& os, const Trace& trace);
/// One JSON object per round with the same fields; a missing output is null.
void write_jsonl(std::ostream& os, const Trace& trace);

}  // namespace hashpebble
