#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "hashpebble/inplace.hpp"
#include "hashpebble/owf.hpp"
#include "hashpebble/pebbler.hpp"

namespace hashpebble {

/// Which pebbler a prover reverses its chain with.
struct ProverBackend {
    enum class Kind { framework, inplace_speed2, inplace_optimal };

    Kind kind = Kind::framework;
    Family family = Family::optimal;  // framework only

    static ProverBackend framework(Family f) { return {Kind::framework, f}; }
    static ProverBackend inplace_speed2() { return {Kind::inplace_speed2, Family::speed2}; }
    static ProverBackend inplace_optimal() { return {Kind::inplace_optimal, Family::optimal}; }
};

struct Release {
    Value value;
    std::uint64_t hashes = 0;  // evaluations spent producing this preimage
};

/// Holds a length-2^k chain and releases its elements from the end backward,
/// one per identification round.
class Prover {
public:
    Prover(Owf owf, unsigned k, const Value& seed, ProverBackend backend = ProverBackend::framework(Family::optimal));

    /// f^(2^k)(seed); to be registered with the verifier once, out of band.
    const Value& endpoint() const { return endpoint_; }

    /// Next preimage x_(n-1), x_(n-2), ..., x_0. Throws ExhaustedError after n releases.
    Release next();

    std::uint64_t chain_length() const { return pow2(k_); }
    std::uint64_t released() const { return released_; }
    std::uint64_t remaining() const { return chain_length() - released_; }

private:
    Owf owf_;
    unsigned k_;
    std::uint64_t released_ = 0;
    std::variant<FrameworkPebbler, InPlacePebbler> pebbler_;
    Value endpoint_;
};

enum class Verdict { accept, reject };

std::string_view to_string(Verdict v);

/// Keeps only the latest accepted chain element.
class Verifier {
public:
    explicit Verifier(Value endpoint) : anchor_(std::move(endpoint)) {}

    /// Accepts iff f(candidate) equals the anchor; the candidate then becomes
    /// the anchor. A reject leaves the state untouched.
    Verdict check(const Owf& owf, const Value& candidate);

    const Value& anchor() const { return anchor_; }
    std::uint64_t verified() const { return verified_; }

private:
    Value anchor_;
    std::uint64_t verified_ = 0;
};

}  // namespace hashpebble
