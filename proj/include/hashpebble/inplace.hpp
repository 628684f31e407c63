#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hashpebble/half_seq.hpp"
#include "hashpebble/owf.hpp"

namespace hashpebble {

// --- Counter arithmetic ----------------------------------------------------

struct EatResult {
    unsigned count = 0;    // trailing bits removed
    std::uint64_t rest = 0;  // c shifted right by count

    friend bool operator==(const EatResult&, const EatResult&) = default;
};

/// Counts and removes trailing 0-bits. Throws DomainError for c == 0.
EatResult eat0(std::uint64_t c);
/// Counts and removes trailing 1-bits.
EatResult eat1(std::uint64_t c);

enum class Phase { idle, hashing, first_output };

std::string_view to_string(Phase phase);

/// State of one live, non-redundant pebbler P_index read off the countdown c.
struct PebblerPhase {
    unsigned index = 0;
    Phase phase = Phase::idle;
    std::uint64_t local_counter = 0;  // c mod 2^(index+1): rounds P_index has left

    friend bool operator==(const PebblerPhase&, const PebblerPhase&) = default;
};

/// One entry per set bit of c = 2^(k+1) - r, highest bit first. 0 < c < 2^k.
std::vector<PebblerPhase> decode_states(unsigned k, std::uint64_t c);

struct SegmentBudget {
    unsigned index = 0;
    Half budget;  // unrounded hashes for this round

    friend bool operator==(const SegmentBudget&, const SegmentBudget&) = default;
};

/// Splits the bits of c among the hashing pebblers (the first-output pebbler
/// excluded). Each gets the bits from its own position down to just above the
/// next such pebbler, or down to bit 0; its budget is half the segment length.
std::vector<SegmentBudget> segment_budgets(unsigned k, std::uint64_t c);

// --- In-place pebblers -----------------------------------------------------

enum class InPlaceVariant : std::uint8_t { speed2 = 1, optimal = 2 };

/// The complete inter-round state: nothing else survives between rounds.
struct InPlaceState {
    InPlaceVariant variant = InPlaceVariant::speed2;
    unsigned k = 0;
    std::uint64_t r = 0;                   // next round, 2^k <= r <= 2^(k+1)
    std::vector<std::optional<Value>> z;   // k + 1 slots

    friend bool operator==(const InPlaceState&, const InPlaceState&) = default;
};

struct StepResult {
    Value output;
    std::uint64_t hashes = 0;
};

/// A pebbler that only keeps a round counter and k + 1 value slots between
/// rounds. Construction runs the initial stage; each step() then emits the
/// next element of the reversed chain.
class InPlacePebbler {
public:
    static constexpr unsigned max_order = 30;

    /// Speed-2 pebbler, stepped by counter arithmetic on c = 2^(k+1) - r.
    static InPlacePebbler speed2(Owf owf, unsigned k, const Value& seed);

    /// Optimal-schedule pebbler whose per-round work comes from segment_budgets().
    static InPlacePebbler optimal(Owf owf, unsigned k, const Value& seed);

    /// Inverse of save(). Throws DecodeError on malformed input.
    static InPlacePebbler restore(Owf owf, std::span<const std::uint8_t> bytes);

    /// Outputs the next chain element. Throws StateError when exhausted.
    StepResult step();

    /// variant (1 octet), k (1 octet), r (4 octets big-endian), then k + 1 slots
    /// low index first, each a presence octet (1 or 0) followed by width octets
    /// (all zero when absent).
    std::vector<std::uint8_t> save() const;

    bool exhausted() const { return state_.r >= (std::uint64_t{1} << (state_.k + 1)); }
    const InPlaceState& state() const { return state_; }
    const Owf& owf() const { return owf_; }

    /// Slots currently holding a value.
    std::size_t occupied() const;

    /// Hashes spent by the initial stage (zero for a restored pebbler).
    std::uint64_t init_hashes() const { return init_hashes_; }

    /// The value the next step() will output.
    const Value& peek() const;

private:
    InPlacePebbler(Owf owf, InPlaceState state) : owf_(std::move(owf)), state_(std::move(state)) {}

    static InPlacePebbler initialize(Owf owf, InPlaceVariant variant, unsigned k, const Value& seed);

    const Value& slot(unsigned i) const;
    std::uint64_t step_speed2();
    std::uint64_t step_optimal();

    Owf owf_;
    InPlaceState state_;
    std::uint64_t init_hashes_ = 0;
};

}  // namespace hashpebble
