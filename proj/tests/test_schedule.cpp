#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hashpebble/errors.hpp"
#include "hashpebble/schedule.hpp"

using namespace hashpebble;

namespace {

using U = std::vector<std::uint64_t>;

HalfSeq halves(std::vector<std::int64_t> doubled)
{
    return HalfSeq(std::move(doubled));
}

}  // namespace

TEST_CASE("bitlen")
{
    CHECK(bitlen(0) == 0);
    CHECK(bitlen(1) == 1);
    CHECK(bitlen(7) == 3);
    CHECK(bitlen(8) == 4);
}

TEST_CASE("optimal schedules for k = 0..4")
{
    CHECK(make_schedule(Family::optimal, 0).t.empty());
    CHECK(make_schedule(Family::optimal, 1).t == U{1});
    CHECK(make_schedule(Family::optimal, 2).t == U{0, 1, 2});
    CHECK(make_schedule(Family::optimal, 3).t == U{0, 0, 0, 2, 1, 2, 2});
    CHECK(make_schedule(Family::optimal, 4).t == U{0, 0, 0, 0, 0, 0, 0, 2, 2, 1, 1, 2, 2, 2, 3});
    CHECK(make_schedule(Family::optimal, 4).to_string() == "0,0,0,0,0,0,0,2,2,1,1,2,2,2,3");
}

TEST_CASE("the closed formula needs bitlen(0) = 0 at k = 4, r = 8")
{
    // (2*8) mod 2^bitlen(8) = 0; the entry 2 only comes out with bitlen(0) = 0.
    CHECK(((2 * 8) & (pow2(bitlen(16 - 8)) - 1)) == 0);
    CHECK(schedule_entry(Family::optimal, 4, 8) == 2);
}

TEST_CASE("other families")
{
    CHECK(make_schedule(Family::speed2, 4).t == U{0, 0, 0, 0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 1});
    CHECK(make_schedule(Family::speed1, 3).t == U(7, 1));
    CHECK(make_schedule(Family::rushing, 3).t == U{0, 0, 0, 0, 0, 0, 7});
    for (auto family : all_families)
        CHECK(make_schedule(family, 1).t == U{1});
}

TEST_CASE("every schedule sums to 2^k - 1")
{
    for (auto family : all_families)
        for (unsigned k = 0; k <= 20; ++k)
            CHECK(make_schedule(family, k).sum() == pow2(k) - 1);
}

TEST_CASE("schedule_entry rejects rounds outside the initial stage")
{
    CHECK_THROWS_AS(schedule_entry(Family::optimal, 4, 0), DomainError);
    CHECK_THROWS_AS(schedule_entry(Family::optimal, 4, 16), DomainError);
    CHECK_THROWS_AS(schedule_entry(Family::speed1, 0, 1), DomainError);
}

TEST_CASE("hashes_before matches the running sum of the schedule")
{
    for (auto family : all_families) {
        for (unsigned k = 0; k <= 14; ++k) {
            std::uint64_t running = 0;
            for (std::uint64_t r = 1; r <= pow2(k); ++r) {
                REQUIRE(hashes_before(family, k, r) == running);
                if (r < pow2(k))
                    running += schedule_entry(family, k, r);
            }
        }
    }
}

TEST_CASE("hashes_before stays exact for large orders")
{
    const unsigned k = 40;
    CHECK(hashes_before(Family::optimal, k, pow2(k - 1)) == 0);
    CHECK(hashes_before(Family::optimal, k, pow2(k)) == pow2(k) - 1);
    std::uint64_t r = pow2(k) - 5;
    std::uint64_t tail = 0;
    for (std::uint64_t s = r; s < pow2(k); ++s)
        tail += schedule_entry(Family::optimal, k, s);
    CHECK(hashes_before(Family::optimal, k, r) + tail == pow2(k) - 1);
}

TEST_CASE("U_k and V_k rows for k = 2..5")
{
    CHECK(u_seq(2) == halves({3}));
    CHECK(v_seq(2) == halves({3}));
    CHECK(u_seq(3) == halves({4, 2}));
    CHECK(v_seq(3) == halves({4, 4}));
    CHECK(u_seq(4) == halves({5, 3, 2, 2}));
    CHECK(v_seq(4) == halves({5, 3, 5, 5}));
    CHECK(u_seq(5) == halves({6, 4, 3, 3, 2, 2, 2, 2}));
    CHECK(v_seq(5) == halves({6, 4, 3, 3, 6, 4, 6, 6}));
    CHECK(u_seq(4).to_string() == "5/2,3/2,1,1");
    CHECK_THROWS_AS(u_seq(1), DomainError);
    CHECK_THROWS_AS(v_seq(0), DomainError);
}

TEST_CASE("unrounded optimal schedule")
{
    CHECK(unrounded_optimal(2) == halves({0, 3, 3}));
    CHECK(unrounded_optimal(3) == HalfSeq::from_integers({0, 0, 0, 2, 1, 2, 2}));
    CHECK(unrounded_optimal(6).sum() == Half::integer(63));
    CHECK_THROWS_AS(unrounded_optimal(1), DomainError);
}

TEST_CASE("recursive and explicit constructions agree")
{
    for (unsigned k = 2; k <= 14; ++k)
        CHECK(unrounded_optimal_recursive(k) == unrounded_optimal_explicit(k));
}

TEST_CASE("parity rounding")
{
    Schedule t4 = parity_round(unrounded_optimal(4), 4);
    CHECK(t4.t[8 - 1] == 2);
    CHECK(t4.t[15 - 1] == 3);
    for (unsigned k = 2; k <= 14; ++k) {
        HalfSeq h = unrounded_optimal(k);
        Schedule rounded = parity_round(h, k);
        REQUIRE(rounded.t == make_schedule(Family::optimal, k).t);
        for (std::size_t i = 0; i < h.size(); ++i) {
            auto diff = 2 * static_cast<std::int64_t>(rounded.t[i]) - h[i].doubled;
            REQUIRE(std::abs(diff) <= 1);
            if (h[i].is_integral())
                REQUIRE(diff == 0);
        }
    }
    CHECK_THROWS_AS(parity_round(unrounded_optimal(4), 3), DomainError);
}

TEST_CASE("work sequences")
{
    CHECK(work_sequence(Family::rushing, 4).w == U{1, 0, 3, 0, 1, 0, 7, 0, 1, 0, 3, 0, 1, 0, 0});
    CHECK(work_sequence(Family::speed1, 4).w == U{3, 2, 2, 1, 2, 1, 1, 0, 2, 1, 1, 0, 1, 0, 0});
    CHECK(work_sequence(Family::speed2, 4).w == U{1, 2, 1, 2, 3, 2, 1, 0, 1, 2, 1, 0, 1, 0, 0});
    CHECK(work_sequence(Family::optimal, 4).w == U{1, 1, 2, 2, 2, 2, 2, 0, 1, 1, 2, 0, 1, 0, 0});
    // round 23 is the 7th of the last 15 rounds, round 21 the 5th
    CHECK(work_sequence(Family::rushing, 4).w[23 - 17] == 7);
    CHECK(work_sequence(Family::speed2, 4).w[21 - 17] == 3);
    CHECK(work_sequence(Family::optimal, 4).max() == 2);
    for (auto family : all_families) {
        CHECK(work_sequence(family, 0).w.empty());
        CHECK(work_sequence(family, 1).w == U{0});
    }
}

TEST_CASE("work bounds")
{
    for (unsigned k = 1; k <= 14; ++k) {
        CHECK(work_sequence(Family::speed1, k).max() == k - 1);
        CHECK(work_sequence(Family::speed2, k).max() == k - 1);
        if (k >= 2) {
            CHECK(work_sequence(Family::optimal, k).max() == (k + 1) / 2);
            for (auto family : all_families)
                CHECK(work_sequence(family, k).max() >= (k + 1) / 2);
        }
    }
}

TEST_CASE("unrounded work sequences")
{
    CHECK(work_sequence_half(0).empty());
    CHECK(work_sequence_half(1) == halves({0}));
    CHECK(work_sequence_half(2) == halves({2, 0, 0}));
    CHECK(work_sequence_half(3) == halves({2, 3, 3, 0, 2, 0, 0}));
    CHECK(work_sequence_half(3).to_string() == "1,3/2,3/2,0,1,0,0");
}

TEST_CASE("rounding the unrounded work sequence elementwise")
{
    // W is indexed by round 2^k + 1 + j. Rounding by the parity of the round
    // alone reproduces the integer work sequence; the schedule's (k + r) parity
    // only does so for even k.
    auto rounded_matches = [](unsigned k, unsigned parity_offset) {
        HalfSeq h = work_sequence_half(k);
        auto w = work_sequence(Family::optimal, k).w;
        for (std::size_t j = 0; j < w.size(); ++j) {
            std::uint64_t round = pow2(k) + 1 + j;
            auto p = static_cast<std::int64_t>((parity_offset + round) & 1);
            if (((p + h[j].doubled) >> 1) != static_cast<std::int64_t>(w[j]))
                return false;
        }
        return true;
    };
    for (unsigned k = 1; k <= 14; ++k) {
        CAPTURE(k);
        CHECK(rounded_matches(k, 0));
        if (k >= 3)
            CHECK(rounded_matches(k, k) == (k % 2 == 0));
    }
}

TEST_CASE("key equation")
{
    CHECK(key_equation_holds(u_seq(2), v_seq(2), halves({0}), 2));
    for (unsigned k = 2; k <= 14; ++k)
        CHECK(key_equation_holds(k));

    HalfSeq u = u_seq(4);
    HalfSeq v = v_seq(4);
    HalfSeq w = work_sequence_half(3);
    CHECK(((u | v) + (HalfSeq({0}) | w)) == HalfSeq::constant(8, Half{5}));
    for (std::size_t i = 0; i < v.size(); ++i) {
        HalfSeq broken = v;
        broken.set(i, broken[i] + Half{1});
        CHECK_FALSE(key_equation_holds(u, broken, w, 4));
    }
    CHECK_THROWS_AS(key_equation_holds(1), DomainError);
}

TEST_CASE("tau recurrence")
{
    CHECK(tau(0) == 0.0);
    CHECK(tau(1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(std::abs(tau(1) - 0.3678794) < 1e-6);
    double prev = tau(0);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        double t = tau(n);
        REQUIRE(t > prev);
        REQUIRE(t < 1.0);
        prev = t;
    }
}

TEST_CASE("family names")
{
    for (auto family : all_families)
        CHECK(parse_family(to_string(family)) == family);
    CHECK_THROWS_AS(parse_family("speed3"), ConfigError);
}
