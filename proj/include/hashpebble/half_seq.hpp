#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hashpebble {

/// A half-integer, stored doubled so arithmetic stays exact.
struct Half {
    std::int64_t doubled = 0;

    static constexpr Half integer(std::int64_t n) { return Half{2 * n}; }
    constexpr bool is_integral() const { return doubled % 2 == 0; }

    friend constexpr Half operator+(Half a, Half b) { return Half{a.doubled + b.doubled}; }
    friend constexpr bool operator==(Half, Half) = default;
    friend constexpr auto operator<=>(Half, Half) = default;

    /// "n" when integral, "n/2" otherwise.
    std::string to_string() const;
};

/// A sequence over half-integers with exact elementwise arithmetic.
class HalfSeq {
public:
    HalfSeq() = default;
    explicit HalfSeq(std::vector<std::int64_t> doubled) : doubled_(std::move(doubled)) {}

    static HalfSeq from_integers(const std::vector<std::int64_t>& values);
    static HalfSeq constant(std::size_t n, Half value);

    std::size_t size() const { return doubled_.size(); }
    bool empty() const { return doubled_.empty(); }
    Half operator[](std::size_t i) const { return Half{doubled_[i]}; }
    void set(std::size_t i, Half h) { doubled_[i] = h.doubled; }
    const std::vector<std::int64_t>& doubled() const { return doubled_; }

    /// Every element plus 1/2.
    HalfSeq plus_half() const;
    /// Elementwise sum over the common prefix length; throws DomainError if lengths differ.
    HalfSeq operator+(const HalfSeq& other) const;
    /// Concatenation.
    HalfSeq operator|(const HalfSeq& other) const;

    Half sum() const;
    Half max() const;

    friend bool operator==(const HalfSeq&, const HalfSeq&) = default;

    /// Comma-separated, halves printed as "n/2".
    std::string to_string() const;

private:
    std::vector<std::int64_t> doubled_;
};

}  // namespace hashpebble
