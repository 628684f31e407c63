#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hashpebble/owf.hpp"
#include "hashpebble/protocol.hpp"

namespace hashpebble::wire {

// Line protocol, one LF-terminated message per line:
//   client -> server   REGISTER <k> <hex-endpoint>
//                      AUTH <hex-value>
//   server -> client   OK <verified-count> | FAIL | ERR <reason>
// An ERR reply ends the session.

std::string register_line(unsigned k, const Value& endpoint);
std::string auth_line(const Value& value);

struct Reply {
    enum class Kind { ok, fail, err };

    Kind kind = Kind::err;
    std::uint64_t count = 0;  // ok only
    std::string reason;       // err only

    std::string to_line() const;
    static Reply ok(std::uint64_t count) { return {Kind::ok, count, {}}; }
    static Reply fail() { return {Kind::fail, 0, {}}; }
    static Reply err(std::string reason) { return {Kind::err, 0, std::move(reason)}; }
};

/// Parses a server line; unparseable input yields ERR bad-reply.
Reply parse_reply(std::string_view line);

/// Strict lowercase hex of exactly 2 * width characters.
std::optional<Value> parse_value(std::string_view hex, std::size_t width);

/// Verifier side of one connection.
class VerifierSession {
public:
    explicit VerifierSession(Owf owf) : owf_(std::move(owf)) {}

    /// Handles one line (without its terminator) and returns the reply.
    Reply handle(std::string_view line);

    bool closed() const { return closed_; }
    const Verifier* verifier() const { return verifier_ ? &*verifier_ : nullptr; }

private:
    Reply error(std::string reason);

    Owf owf_;
    std::optional<Verifier> verifier_;
    std::uint64_t chain_length_ = 0;
    bool closed_ = false;
};

}  // namespace hashpebble::wire
