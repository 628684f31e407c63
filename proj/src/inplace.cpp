#include "hashpebble/inplace.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "hashpebble/errors.hpp"
#include "hashpebble/schedule.hpp"

namespace hashpebble {

namespace {

constexpr std::size_t header_size = 6;

Family family_of(InPlaceVariant variant)
{
    return variant == InPlaceVariant::speed2 ? Family::speed2 : Family::optimal;
}

}  // namespace

EatResult eat0(std::uint64_t c)
{
    if (c == 0)
        throw DomainError("eat0 of zero");
    auto n = static_cast<unsigned>(std::countr_zero(c));
    return {n, c >> n};
}

EatResult eat1(std::uint64_t c)
{
    auto n = static_cast<unsigned>(std::countr_one(c));
    return {n, n == 64 ? 0 : c >> n};
}

std::string_view to_string(Phase phase)
{
    switch (phase) {
    case Phase::idle:
        return "idle";
    case Phase::hashing:
        return "hashing";
    case Phase::first_output:
        return "first-output";
    }
    return "unknown";
}

std::vector<PebblerPhase> decode_states(unsigned k, std::uint64_t c)
{
    if (k > 62 || c == 0 || c >= pow2(k))
        throw DomainError("counter " + std::to_string(c) + " outside the output stage of P_" + std::to_string(k));
    std::vector<PebblerPhase> out;
    for (unsigned i = bitlen(c); i-- > 0;) {
        if (!(c >> i & 1))
            continue;
        std::uint64_t local = c & (pow2(i + 1) - 1);
        Phase phase = Phase::hashing;
        if (local == pow2(i))
            phase = Phase::first_output;
        else if (i >= 1 && local > pow2(i) + pow2(i - 1))
            phase = Phase::idle;
        out.push_back({i, phase, local});
    }
    return out;
}

std::vector<SegmentBudget> segment_budgets(unsigned k, std::uint64_t c)
{
    std::vector<unsigned> hashing;
    for (const auto& p : decode_states(k, c))
        if (p.phase == Phase::hashing)
            hashing.push_back(p.index);

    std::vector<SegmentBudget> out;
    for (std::size_t q = 0; q < hashing.size(); ++q) {
        unsigned i = hashing[q];
        unsigned length = q + 1 < hashing.size() ? i - hashing[q + 1] : i + 1;
        out.push_back({i, Half{static_cast<std::int64_t>(length)}});
    }
    return out;
}

InPlacePebbler InPlacePebbler::speed2(Owf owf, unsigned k, const Value& seed)
{
    return initialize(std::move(owf), InPlaceVariant::speed2, k, seed);
}

InPlacePebbler InPlacePebbler::optimal(Owf owf, unsigned k, const Value& seed)
{
    return initialize(std::move(owf), InPlaceVariant::optimal, k, seed);
}

// Runs rounds 1 .. 2^k - 1 with the variant's schedule. The slot being filled
// is read, the fill index moves down when its gap is used up, and the new value
// is written; z[i] ends up holding f^(2^k - 2^i)(seed).
InPlacePebbler InPlacePebbler::initialize(Owf owf, InPlaceVariant variant, unsigned k, const Value& seed)
{
    if (k > max_order)
        throw DomainError("in-place pebbler order must be at most " + std::to_string(max_order));
    if (seed.size() != owf.width())
        throw InvalidInput("seed width does not match one-way function");

    InPlaceState state{variant, k, pow2(k), std::vector<std::optional<Value>>(k + 1)};
    state.z[k] = seed;
    unsigned fill = k;
    std::uint64_t gap = 0;
    std::uint64_t hashes = 0;
    for (std::uint64_t r = 1; r < pow2(k); ++r) {
        for (std::uint64_t n = schedule_entry(family_of(variant), k, r); n > 0; --n) {
            const Value& source = *state.z[fill];
            if (gap == 0) {
                --fill;
                gap = pow2(fill);
            }
            state.z[fill] = owf(source);
            --gap;
            ++hashes;
        }
    }

    InPlacePebbler p(std::move(owf), std::move(state));
    p.init_hashes_ = hashes;
    return p;
}

const Value& InPlacePebbler::slot(unsigned i) const
{
    if (i >= state_.z.size() || !state_.z[i])
        throw std::logic_error("in-place pebbler read an empty slot z[" + std::to_string(i) + "]");
    return *state_.z[i];
}

const Value& InPlacePebbler::peek() const
{
    if (exhausted())
        throw StateError("in-place pebbler is exhausted");
    return slot(0);
}

std::size_t InPlacePebbler::occupied() const
{
    return std::count_if(state_.z.begin(), state_.z.end(), [](const auto& s) { return s.has_value(); });
}

StepResult InPlacePebbler::step()
{
    if (exhausted())
        throw StateError("in-place pebbler is exhausted");
    StepResult result{slot(0), 0};
    result.hashes = state_.variant == InPlaceVariant::speed2 ? step_speed2() : step_optimal();
    ++state_.r;
    return result;
}

// Line-by-line transcription of the in-place speed-2 round; z[0] has already
// been output. Both eat calls consume bits of c.
std::uint64_t InPlacePebbler::step_speed2()
{
    auto& z = state_.z;
    std::uint64_t hashes = 0;
    std::uint64_t c = pow2(state_.k + 1) - state_.r;

    auto e = eat0(c);
    unsigned i = e.count;
    c = e.rest;
    for (unsigned m = 0; m < i; ++m)
        z[m] = z[m + 1];
    i = i + 1;
    c = c / 2;
    unsigned q = i - 1;
    while (c != 0) {
        z[q] = owf_(slot(i));
        ++hashes;
        if (q != 0) {
            z[q] = owf_(slot(q));
            ++hashes;
        }
        auto zeros = eat0(c);
        auto ones = eat1(zeros.rest);
        c = ones.rest;
        i = i + zeros.count + ones.count;
        q = i;
    }
    return hashes;
}

// The countdown c names the live pebblers: its lowest set bit j is the one
// outputting now, whose values y_j..y_0 sit in z[j..0]. Shifting them down by
// one hands y_m to child P_(m-1) as its seed and frees z[j]. Every hashing
// pebbler P_i keeps y_i in z[i] and fills z[i-1], z[i-2], ... in turn; its
// progress follows from the hashes its schedule spent before this round.
std::uint64_t InPlacePebbler::step_optimal()
{
    auto& z = state_.z;
    const unsigned k = state_.k;
    const std::uint64_t c = pow2(k + 1) - state_.r;
    const unsigned j = static_cast<unsigned>(std::countr_zero(c));

    for (unsigned m = 0; m < j; ++m)
        z[m] = std::move(z[m + 1]);
    z[j].reset();

    if (c == pow2(k))
        return 0;

    std::uint64_t hashes = 0;
    for (const auto& seg : segment_budgets(k, c)) {
        const unsigned i = seg.index;
        const std::uint64_t local_round = pow2(i + 1) - (c & (pow2(i + 1) - 1));
        const std::uint64_t parity = (i + local_round) & 1;
        const std::uint64_t budget = (parity + static_cast<std::uint64_t>(seg.budget.doubled)) >> 1;
        const std::uint64_t done = hashes_before(Family::optimal, i, local_round);

        for (std::uint64_t n = done + 1; n <= done + budget; ++n) {
            // Hash number n of P_i lands in slot m with 2^i - 2^(m+1) < n <= 2^i - 2^m.
            const unsigned m = bitlen(pow2(i) - n) - 1;
            if (n == pow2(i) - pow2(m + 1) + 1) {
                if (z[m])
                    throw std::logic_error("slot z[" + std::to_string(m) + "] still in use");
                z[m] = owf_(slot(m + 1));
            } else {
                z[m] = owf_(slot(m));
            }
        }
        hashes += budget;
    }
    return hashes;
}

std::vector<std::uint8_t> InPlacePebbler::save() const
{
    const std::size_t width = owf_.width();
    std::vector<std::uint8_t> out;
    out.reserve(header_size + state_.z.size() * (1 + width));
    out.push_back(static_cast<std::uint8_t>(state_.variant));
    out.push_back(static_cast<std::uint8_t>(state_.k));
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(state_.r >> shift));
    for (const auto& s : state_.z) {
        out.push_back(s ? 1 : 0);
        if (s) {
            auto b = s->bytes();
            out.insert(out.end(), b.begin(), b.end());
        } else {
            out.insert(out.end(), width, 0);
        }
    }
    return out;
}

InPlacePebbler InPlacePebbler::restore(Owf owf, std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < header_size)
        throw DecodeError("in-place state too short");
    auto variant = static_cast<InPlaceVariant>(bytes[0]);
    if (variant != InPlaceVariant::speed2 && variant != InPlaceVariant::optimal)
        throw DecodeError("unknown in-place variant " + std::to_string(bytes[0]));
    unsigned k = bytes[1];
    if (k > max_order)
        throw DecodeError("in-place order out of range");
    std::uint64_t r = 0;
    for (std::size_t i = 2; i < header_size; ++i)
        r = (r << 8) | bytes[i];
    if (r < pow2(k) || r > pow2(k + 1))
        throw DecodeError("round counter out of range");

    const std::size_t width = owf.width();
    if (bytes.size() != header_size + (k + 1) * (1 + width))
        throw DecodeError("in-place state has wrong length for " + owf.name());

    InPlaceState state{variant, k, r, std::vector<std::optional<Value>>(k + 1)};
    auto pos = bytes.begin() + header_size;
    for (unsigned i = 0; i <= k; ++i) {
        std::uint8_t flag = *pos++;
        auto body = std::span<const std::uint8_t>(&*pos, width);
        pos += static_cast<std::ptrdiff_t>(width);
        if (flag == 1)
            state.z[i] = Value(std::vector<std::uint8_t>(body.begin(), body.end()));
        else if (flag != 0 || std::any_of(body.begin(), body.end(), [](std::uint8_t b) { return b != 0; }))
            throw DecodeError("malformed slot " + std::to_string(i));
    }
    return InPlacePebbler(std::move(owf), std::move(state));
}

}  // namespace hashpebble
