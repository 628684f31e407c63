#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hashpebble/owf.hpp"
#include "hashpebble/schedule.hpp"

namespace hashpebble {

/// Outcome of one round of a pebbler.
struct RoundResult {
    std::uint64_t round = 0;
    std::uint64_t hashes = 0;
    std::optional<Value> output;  // present iff round is in [2^k, 2^(k+1))
};

/// Order in which a redundant pebbler steps its children within a round.
enum class ChildOrder { descending, ascending };

/// A non-redundant pebbler somewhere in the tree, with the local round it is about to run.
struct ActivePebbler {
    unsigned order = 0;
    std::uint64_t round = 0;

    friend bool operator==(const ActivePebbler&, const ActivePebbler&) = default;
};

/// Recursive binary pebbler P_k(x) for an arbitrary schedule.
///
/// Runs for 2^(k+1) - 1 rounds. Rounds 1 .. 2^k - 1 compute
/// y_i = f^(2^k - 2^i)(x) for i = k..0, spending t_{k,r} hashes in round r.
/// Round 2^k outputs y_0. The remaining rounds run the children
/// P_(i-1)(y_i), i = 1..k, in parallel, each child one round per round.
///
/// The pebbler owns its slots; a slot y_i moves into child P_(i-1) as its seed,
/// so no value is ever stored twice.
class FrameworkPebbler {
public:
    FrameworkPebbler(Owf owf, Family family, unsigned k, Value seed,
                     ChildOrder child_order = ChildOrder::descending);
    FrameworkPebbler(Owf owf, ScheduleRule rule, unsigned k, Value seed,
                     ChildOrder child_order = ChildOrder::descending);

    /// Runs one round. Throws StateError once all 2^(k+1) - 1 rounds have run,
    /// and std::logic_error if the schedule does not sum to 2^k - 1.
    RoundResult step();

    bool exhausted() const { return round_ > lifetime(); }
    unsigned order() const { return k_; }
    std::uint64_t next_round() const { return round_; }
    std::uint64_t lifetime() const { return pow2(k_ + 1) - 1; }

    /// Values currently held across the whole pebbler tree.
    std::size_t storage() const;

    /// y_0 once the initial stage has finished and before it is output; otherwise nullptr.
    const Value* pending_output() const;

    /// Appends every non-redundant pebbler of the tree, highest order first
    /// when children are stepped in descending order.
    void collect_active(std::vector<ActivePebbler>& out) const;

private:
    struct Shared {
        Owf owf;
        ScheduleRule rule;
        ChildOrder child_order;
    };

    FrameworkPebbler(std::shared_ptr<const Shared> shared, unsigned k, Value seed);

    void hash_once();

    std::shared_ptr<const Shared> shared_;
    unsigned k_;
    std::uint64_t round_ = 1;
    std::vector<std::optional<Value>> slots_;  // y_0 .. y_k
    unsigned fill_;                            // slot currently being written
    std::uint64_t gap_ = 0;                    // hashes left before fill_ holds its final value
    std::vector<FrameworkPebbler> children_;   // P_(k-1) first
};

/// Full reversed chain f^(2^k-1)(seed), ..., seed as produced by the pebbler.
std::vector<Value> run_outputs(const Owf& owf, Family family, unsigned k, const Value& seed);

/// Brute-force reference: materializes the whole chain and reverses it.
std::vector<Value> reverse_oracle(const Owf& owf, unsigned k, const Value& seed);

}  // namespace hashpebble
