#include "hashpebble/wire.hpp"

#include <charconv>
#include <vector>

namespace hashpebble::wire {

namespace {

constexpr unsigned max_wire_order = 62;

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t next = line.find(' ', pos);
        if (next == std::string_view::npos)
            next = line.size();
        parts.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return parts;
}

template <typename T>
std::optional<T> parse_uint(std::string_view s)
{
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return value;
}

std::string_view strip_cr(std::string_view line)
{
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    return line;
}

}  // namespace

std::string register_line(unsigned k, const Value& endpoint)
{
    return "REGISTER " + std::to_string(k) + " " + endpoint.hex();
}

std::string auth_line(const Value& value)
{
    return "AUTH " + value.hex();
}

std::string Reply::to_line() const
{
    switch (kind) {
    case Kind::ok:
        return "OK " + std::to_string(count);
    case Kind::fail:
        return "FAIL";
    case Kind::err:
        break;
    }
    return "ERR " + reason;
}

Reply parse_reply(std::string_view line)
{
    auto parts = split(strip_cr(line));
    if (parts.size() == 2 && parts[0] == "OK") {
        if (auto n = parse_uint<std::uint64_t>(parts[1]))
            return Reply::ok(*n);
    } else if (parts.size() == 1 && parts[0] == "FAIL") {
        return Reply::fail();
    } else if (parts.size() >= 2 && parts[0] == "ERR") {
        return Reply::err(std::string(strip_cr(line).substr(4)));
    }
    return Reply::err("bad-reply");
}

std::optional<Value> parse_value(std::string_view hex, std::size_t width)
{
    if (hex.size() != 2 * width)
        return std::nullopt;
    for (char ch : hex)
        if (!((ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f')))
            return std::nullopt;
    return Value::from_hex(hex);
}

Reply VerifierSession::error(std::string reason)
{
    closed_ = true;
    return Reply::err(std::move(reason));
}

Reply VerifierSession::handle(std::string_view raw)
{
    if (closed_)
        return Reply::err("session-closed");
    auto parts = split(strip_cr(raw));

    if (parts[0] == "REGISTER") {
        if (parts.size() != 3)
            return error("bad-arguments");
        if (verifier_)
            return error("already-registered");
        auto k = parse_uint<unsigned>(parts[1]);
        if (!k || *k > max_wire_order)
            return error("bad-order");
        auto endpoint = parse_value(parts[2], owf_.width());
        if (!endpoint)
            return error("bad-value");
        verifier_.emplace(std::move(*endpoint));
        chain_length_ = std::uint64_t{1} << *k;
        return Reply::ok(0);
    }

    if (parts[0] == "AUTH") {
        if (parts.size() != 2)
            return error("bad-arguments");
        if (!verifier_)
            return error("not-registered");
        auto candidate = parse_value(parts[1], owf_.width());
        if (!candidate)
            return error("bad-value");
        if (verifier_->verified() >= chain_length_)
            return error("exhausted");
        if (verifier_->check(owf_, *candidate) == Verdict::reject)
            return Reply::fail();
        return Reply::ok(verifier_->verified());
    }

    return error("unknown-command");
}

}  // namespace hashpebble::wire
