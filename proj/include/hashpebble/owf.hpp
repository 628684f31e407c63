#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hashpebble {

/// A fixed-width hash-chain element. Opaque: only bytewise equality is defined.
class Value {
public:
    Value() = default;
    explicit Value(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

    static Value zeros(std::size_t width) { return Value(std::vector<std::uint8_t>(width, 0)); }

    /// Parses lowercase or uppercase hex, two characters per octet, no prefix.
    /// Throws InvalidInput on odd length or non-hex characters.
    static Value from_hex(std::string_view hex);

    /// Lowercase hex, two characters per octet.
    std::string hex() const;

    std::size_t size() const { return bytes_.size(); }
    std::span<const std::uint8_t> bytes() const { return bytes_; }
    std::span<std::uint8_t> bytes() { return bytes_; }

    friend bool operator==(const Value&, const Value&) = default;

private:
    std::vector<std::uint8_t> bytes_;
};

/// A length-preserving one-way function f: {0,1}^(8*width) -> {0,1}^(8*width).
///
/// Handles are immutable and cheap to copy; copies share the same kernel.
class Owf {
public:
    using Kernel = std::function<void(std::span<const std::uint8_t> in, std::span<std::uint8_t> out)>;

    Owf(std::string name, std::size_t width, Kernel kernel);

    const std::string& name() const { return impl_->name; }
    std::size_t width() const { return impl_->width; }

    /// f(v). Throws InvalidInput if v does not have the declared width.
    Value operator()(const Value& v) const;

private:
    struct Impl {
        std::string name;
        std::size_t width;
        Kernel kernel;
    };
    std::shared_ptr<const Impl> impl_;
};

Value evaluate(const Owf& owf, const Value& v);

/// f^m(v) by m sequential evaluations; iterate(owf, v, 0) == v.
Value iterate(const Owf& owf, Value v, std::uint64_t m);

/// One of "md5", "davies-meyer-aes128", "testmix64". Throws ConfigError otherwise.
Owf builtin(std::string_view name);

std::vector<std::string_view> builtin_names();

/// Reproducible default chain seed: MD5 of the empty string for md5,
/// otherwise f applied to the all-zero value.
Value default_seed(const Owf& owf);

}  // namespace hashpebble
