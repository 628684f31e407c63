#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "hashpebble/half_seq.hpp"

namespace hashpebble {

enum class Family { rushing, speed1, speed2, optimal };

inline constexpr std::array<Family, 4> all_families{Family::rushing, Family::speed1, Family::speed2,
                                                    Family::optimal};

std::string_view to_string(Family family);

/// Throws ConfigError for anything but rushing, speed1, speed2, optimal.
Family parse_family(std::string_view name);

/// Bit length of n; bitlen(0) == 0.
constexpr unsigned bitlen(std::uint64_t n)
{
    return static_cast<unsigned>(std::bit_width(n));
}

constexpr std::uint64_t pow2(unsigned e)
{
    return std::uint64_t{1} << e;
}

/// Hashes t_{k,r} performed in initial round r, 1 <= r < 2^k.
std::uint64_t schedule_entry(Family family, unsigned k, std::uint64_t r);

/// Hashes performed in rounds [1, r) of the initial stage, 1 <= r <= 2^k.
/// O(k^2) for the optimal family, O(1) otherwise.
std::uint64_t hashes_before(Family family, unsigned k, std::uint64_t r);

/// Any rule assigning t_{k,r}; the framework pebbler accepts arbitrary rules.
using ScheduleRule = std::function<std::uint64_t(unsigned k, std::uint64_t r)>;

ScheduleRule rule_for(Family family);

struct Schedule {
    unsigned k = 0;
    Family family = Family::optimal;
    std::vector<std::uint64_t> t;  // t[r-1] = t_{k,r}

    std::uint64_t sum() const;
    /// Comma-separated integers.
    std::string to_string() const;
};

Schedule make_schedule(Family family, unsigned k);

// --- Optimal schedule over half-integers -----------------------------------

/// Unrounded t_{k,r} of the optimal schedule (zero before round 2^(k-1)).
/// Defined for k >= 1.
Half unrounded_optimal_entry(unsigned k, std::uint64_t r);

/// Recursively defined halves U_k, V_k of the unrounded optimal schedule, k >= 2.
HalfSeq u_seq(unsigned k);
HalfSeq v_seq(unsigned k);

/// {0}^(2^(k-1)-1) || U_k || V_k.
HalfSeq unrounded_optimal_recursive(unsigned k);
/// Same sequence from the explicit bit-length formula.
HalfSeq unrounded_optimal_explicit(unsigned k);
/// Computes both constructions and throws std::logic_error if they disagree. k >= 2.
HalfSeq unrounded_optimal(unsigned k);

/// Rounds each h_r to floor(((k + r) mod 2 + 2 h_r) / 2).
Schedule parity_round(const HalfSeq& h, unsigned k);

// --- Work ------------------------------------------------------------------

struct WorkSeq {
    unsigned k = 0;
    std::vector<std::uint64_t> w;  // w[j] = hashes in round 2^k + 1 + j

    std::uint64_t max() const;
    std::uint64_t sum() const;
};

/// W_0 = {}, W_k = T_{k-1} + W_{k-1} || {0} || W_{k-1}.
WorkSeq work_sequence(Family family, unsigned k);
WorkSeq work_sequence(const ScheduleRule& rule, unsigned k);

/// The same recurrence over the unrounded optimal schedules (T_0 = {}, T_1 = {1}).
HalfSeq work_sequence_half(unsigned k);

/// (U_k || V_k) + ({0} || W_{k-1}) == {(k+1)/2}^(2^(k-1)), exactly. k >= 2.
bool key_equation_holds(unsigned k);
bool key_equation_holds(const HalfSeq& u, const HalfSeq& v, const HalfSeq& w_prev, unsigned k);

/// tau_0 = 0, tau_n = exp(tau_{n-1} - 1): the expected number of n-th iterate
/// images, relative to the domain size, of a random function.
double tau(std::uint64_t n);

}  // namespace hashpebble
