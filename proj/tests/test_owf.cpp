#include <doctest.h>

#include <random>
#include <unordered_set>

#include "hashpebble/errors.hpp"
#include "hashpebble/owf.hpp"

using namespace hashpebble;

// Reference digests were produced by Python's hashlib and the `cryptography`
// package (tests/oracles/reference_oracles.py).

TEST_CASE("md5 evaluates the digest of its 16-byte input")
{
    Owf md5 = builtin("md5");
    CHECK(md5.width() == 16);
    Value v = Value::from_hex("d41d8cd98f00b204e9800998ecf8427e");
    CHECK(evaluate(md5, v).hex() == "59adb24ef3cdbe0297f05b395827453f");
    CHECK(evaluate(md5, v).size() == 16);
}

TEST_CASE("default md5 seed is the digest of the empty string")
{
    CHECK(default_seed(builtin("md5")).hex() == "d41d8cd98f00b204e9800998ecf8427e");
}

TEST_CASE("davies-meyer-aes128 encrypts the zero block under the input as key")
{
    Owf aes = builtin("davies-meyer-aes128");
    CHECK(aes.width() == 16);
    CHECK(aes(Value::zeros(16)).hex() == "66e94bd4ef8a2c3b884cfa59ca342b2e");
    CHECK(aes(Value::from_hex("d41d8cd98f00b204e9800998ecf8427e")).hex() == "6919eddacf87a2c03f1938884540e46d");
}

TEST_CASE("testmix64 is deterministic and 8 bytes wide")
{
    Owf mix = builtin("testmix64");
    CHECK(mix.width() == 8);
    Value v = Value::from_hex("0123456789abcdef");
    CHECK(mix(v) == mix(v));
    CHECK(mix(v) != v);
}

TEST_CASE("testmix64 has no collisions among 2^20 distinct inputs")
{
    Owf mix = builtin("testmix64");
    std::unordered_set<std::string> seen;
    std::mt19937_64 rng(7);
    std::unordered_set<std::uint64_t> inputs;
    while (inputs.size() < (1u << 20))
        inputs.insert(rng());
    for (std::uint64_t x : inputs) {
        std::vector<std::uint8_t> bytes(8);
        for (int i = 7; i >= 0; --i, x >>= 8)
            bytes[i] = static_cast<std::uint8_t>(x);
        seen.insert(mix(Value(bytes)).hex());
    }
    CHECK(seen.size() == inputs.size());
}

TEST_CASE("evaluation rejects values of the wrong width")
{
    CHECK_THROWS_AS(builtin("md5")(Value::zeros(8)), InvalidInput);
    CHECK_THROWS_AS(builtin("testmix64")(Value::zeros(16)), InvalidInput);
    CHECK_THROWS_AS(iterate(builtin("md5"), Value::zeros(3), 0), InvalidInput);
}

TEST_CASE("unknown one-way function names are configuration errors")
{
    CHECK_THROWS_AS(builtin("sha1"), ConfigError);
    CHECK(builtin_names().size() == 3);
}

TEST_CASE("iterate composes")
{
    for (auto name : builtin_names()) {
        Owf f = builtin(name);
        Value x = default_seed(f);
        CHECK(iterate(f, x, 0) == x);
        CHECK(iterate(f, x, 8) == iterate(f, iterate(f, x, 3), 5));
        CHECK(iterate(f, x, 1) == f(x));
    }
}

TEST_CASE("a length-4 chain is x_0 -> f(x_0) -> ... -> x_4")
{
    Owf f = builtin("md5");
    Value x0 = default_seed(f);
    std::vector<Value> chain;
    for (int i = 0; i <= 4; ++i)
        chain.push_back(iterate(f, x0, i));
    for (int i = 0; i < 4; ++i)
        CHECK(f(chain[i]) == chain[i + 1]);
}

TEST_CASE("hex round-trips and is lowercase")
{
    Value v = Value::from_hex("00FFa1");
    CHECK(v.hex() == "00ffa1");
    CHECK(Value::from_hex(v.hex()) == v);
    CHECK_THROWS_AS(Value::from_hex("abc"), InvalidInput);
    CHECK_THROWS_AS(Value::from_hex("zz"), InvalidInput);
}
