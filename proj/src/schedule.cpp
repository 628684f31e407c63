#include "hashpebble/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hashpebble/errors.hpp"

namespace hashpebble {

namespace {

constexpr unsigned max_order = 62;

void check_round(unsigned k, std::uint64_t r)
{
    if (k > max_order)
        throw DomainError("schedule order too large");
    if (r < 1 || r >= pow2(k))
        throw DomainError("round " + std::to_string(r) + " outside initial stage of order " + std::to_string(k));
}

std::uint64_t optimal_entry(unsigned k, std::uint64_t r)
{
    if (r < pow2(k - 1))
        return 0;
    std::uint64_t parity = (k + r) & 1;
    std::uint64_t inner = (2 * r) & (pow2(bitlen(pow2(k) - r)) - 1);
    return (parity + k + 1 - bitlen(inner)) >> 1;
}

// Sum of the rounded optimal t_{k,r} over d = 2^k - r in [1, D], D <= 2^(k-1).
//
// Writing d in [2^(L-1), 2^L) and u = 2^L - d, the entry is
// floor((p + k + 1) / 2) when d is a power of two and floor((p + k - bitlen(u)) / 2)
// otherwise, with p = (k + u) mod 2. Within one bit length of u the entry only
// depends on the parity of u, so each block is summed by counting odd and even u.
std::uint64_t optimal_tail_sum(unsigned k, std::uint64_t D)
{
    std::uint64_t sum = 0;
    for (unsigned L = 1; L <= bitlen(D); ++L) {
        std::uint64_t lo = pow2(L - 1);
        std::uint64_t hi = std::min(pow2(L) - 1, D);
        sum += (((k + lo) & 1) + k + 1) >> 1;
        if (hi == lo)
            continue;
        std::uint64_t ua = pow2(L) - hi;
        std::uint64_t ub = pow2(L - 1) - 1;
        for (unsigned M = bitlen(ua); M <= bitlen(ub); ++M) {
            std::uint64_t a = std::max(ua, pow2(M - 1));
            std::uint64_t b = std::min(ub, pow2(M) - 1);
            std::uint64_t n_odd = ((b + 1) >> 1) - (a >> 1);
            std::uint64_t n_even = (b - a + 1) - n_odd;
            sum += n_odd * ((((k + 1) & 1) + k - M) >> 1) + n_even * (((k & 1) + k - M) >> 1);
        }
    }
    return sum;
}

}  // namespace

std::string_view to_string(Family family)
{
    switch (family) {
    case Family::rushing:
        return "rushing";
    case Family::speed1:
        return "speed1";
    case Family::speed2:
        return "speed2";
    case Family::optimal:
        return "optimal";
    }
    return "unknown";
}

Family parse_family(std::string_view name)
{
    for (auto family : all_families)
        if (to_string(family) == name)
            return family;
    throw ConfigError("unknown schedule family: " + std::string(name));
}

std::uint64_t schedule_entry(Family family, unsigned k, std::uint64_t r)
{
    check_round(k, r);
    switch (family) {
    case Family::rushing:
        return r == pow2(k) - 1 ? pow2(k) - 1 : 0;
    case Family::speed1:
        return 1;
    case Family::speed2:
        if (r < pow2(k - 1))
            return 0;
        return r < pow2(k) - 1 ? 2 : 1;
    case Family::optimal:
        return k == 1 ? 1 : optimal_entry(k, r);
    }
    throw std::logic_error("unhandled schedule family");
}

std::uint64_t hashes_before(Family family, unsigned k, std::uint64_t r)
{
    if (k > max_order || r < 1 || r > pow2(k))
        throw DomainError("round outside initial stage");
    if (r == pow2(k))
        return pow2(k) - 1;
    switch (family) {
    case Family::rushing:
        return 0;
    case Family::speed1:
        return r - 1;
    case Family::speed2:
        return r <= pow2(k - 1) ? 0 : 2 * (r - pow2(k - 1));
    case Family::optimal:
        if (r <= pow2(k - 1))
            return 0;
        return optimal_tail_sum(k, pow2(k - 1)) - optimal_tail_sum(k, pow2(k) - r);
    }
    throw std::logic_error("unhandled schedule family");
}

ScheduleRule rule_for(Family family)
{
    return [family](unsigned k, std::uint64_t r) { return schedule_entry(family, k, r); };
}

std::uint64_t Schedule::sum() const
{
    return std::accumulate(t.begin(), t.end(), std::uint64_t{0});
}

std::string Schedule::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i != 0)
            out += ',';
        out += std::to_string(t[i]);
    }
    return out;
}

Schedule make_schedule(Family family, unsigned k)
{
    if (k > max_order)
        throw DomainError("schedule order too large");
    Schedule s{k, family, {}};
    s.t.resize(pow2(k) - 1);
    for (std::uint64_t r = 1; r < pow2(k); ++r)
        s.t[r - 1] = schedule_entry(family, k, r);
    return s;
}

Half unrounded_optimal_entry(unsigned k, std::uint64_t r)
{
    check_round(k, r);
    if (r < pow2(k - 1))
        return Half{0};
    std::uint64_t inner = (2 * r) & (pow2(bitlen(pow2(k) - r)) - 1);
    return Half{static_cast<std::int64_t>(k + 1) - static_cast<std::int64_t>(bitlen(inner))};
}

HalfSeq u_seq(unsigned k)
{
    if (k < 2)
        throw DomainError("U_k is defined for k >= 2");
    if (k == 2)
        return HalfSeq({3});
    return u_seq(k - 1).plus_half() | HalfSeq::constant(pow2(k - 3), Half::integer(1));
}

HalfSeq v_seq(unsigned k)
{
    if (k < 2)
        throw DomainError("V_k is defined for k >= 2");
    if (k == 2)
        return HalfSeq({3});
    return u_seq(k - 1).plus_half() | v_seq(k - 1).plus_half();
}

HalfSeq unrounded_optimal_recursive(unsigned k)
{
    if (k < 2)
        throw DomainError("recursive optimal schedule is defined for k >= 2");
    return HalfSeq::constant(pow2(k - 1) - 1, Half{0}) | u_seq(k) | v_seq(k);
}

HalfSeq unrounded_optimal_explicit(unsigned k)
{
    if (k < 2)
        throw DomainError("explicit optimal schedule is defined for k >= 2");
    std::vector<std::int64_t> doubled(pow2(k) - 1);
    for (std::uint64_t r = 1; r < pow2(k); ++r)
        doubled[r - 1] = unrounded_optimal_entry(k, r).doubled;
    return HalfSeq(std::move(doubled));
}

HalfSeq unrounded_optimal(unsigned k)
{
    HalfSeq recursive = unrounded_optimal_recursive(k);
    HalfSeq explicit_form = unrounded_optimal_explicit(k);
    if (recursive != explicit_form)
        throw std::logic_error("recursive and explicit optimal schedules disagree at k = " + std::to_string(k));
    return recursive;
}

Schedule parity_round(const HalfSeq& h, unsigned k)
{
    if (k > max_order || h.size() != pow2(k) - 1)
        throw DomainError("sequence length does not match order");
    Schedule s{k, Family::optimal, std::vector<std::uint64_t>(h.size())};
    for (std::uint64_t r = 1; r <= h.size(); ++r) {
        std::int64_t doubled = h[r - 1].doubled;
        if (doubled < 0)
            throw DomainError("negative schedule entry");
        s.t[r - 1] = static_cast<std::uint64_t>(static_cast<std::int64_t>((k + r) & 1) + doubled) >> 1;
    }
    return s;
}

std::uint64_t WorkSeq::max() const
{
    return w.empty() ? 0 : *std::max_element(w.begin(), w.end());
}

std::uint64_t WorkSeq::sum() const
{
    return std::accumulate(w.begin(), w.end(), std::uint64_t{0});
}

WorkSeq work_sequence(const ScheduleRule& rule, unsigned k)
{
    if (k > 40)
        throw DomainError("work sequence order too large");
    std::vector<std::uint64_t> w;
    for (unsigned j = 1; j <= k; ++j) {
        std::vector<std::uint64_t> next;
        next.reserve(2 * w.size() + 1);
        for (std::uint64_t r = 1; r < pow2(j - 1); ++r)
            next.push_back(rule(j - 1, r) + w[r - 1]);
        next.push_back(0);
        next.insert(next.end(), w.begin(), w.end());
        w = std::move(next);
    }
    return WorkSeq{k, std::move(w)};
}

WorkSeq work_sequence(Family family, unsigned k)
{
    return work_sequence(rule_for(family), k);
}

HalfSeq work_sequence_half(unsigned k)
{
    HalfSeq w;
    for (unsigned j = 1; j <= k; ++j) {
        HalfSeq t;
        if (j - 1 == 1)
            t = HalfSeq({2});
        else if (j - 1 >= 2)
            t = unrounded_optimal(j - 1);
        w = (t + w) | HalfSeq({0}) | w;
    }
    return w;
}

bool key_equation_holds(const HalfSeq& u, const HalfSeq& v, const HalfSeq& w_prev, unsigned k)
{
    HalfSeq lhs = u | v;
    HalfSeq rhs = HalfSeq({0}) | w_prev;
    if (lhs.size() != pow2(k - 1) || rhs.size() != lhs.size())
        return false;
    return lhs + rhs == HalfSeq::constant(lhs.size(), Half{static_cast<std::int64_t>(k) + 1});
}

bool key_equation_holds(unsigned k)
{
    if (k < 2)
        throw DomainError("key equation is stated for k >= 2");
    return key_equation_holds(u_seq(k), v_seq(k), work_sequence_half(k - 1), k);
}

double tau(std::uint64_t n)
{
    double t = 0.0;
    for (std::uint64_t i = 0; i < n; ++i)
        t = std::exp(t - 1.0);
    return t;
}

}  // namespace hashpebble
