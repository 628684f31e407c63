#include "hashpebble/half_seq.hpp"

#include <algorithm>
#include <numeric>

#include "hashpebble/errors.hpp"

namespace hashpebble {

std::string Half::to_string() const
{
    if (is_integral())
        return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

HalfSeq HalfSeq::from_integers(const std::vector<std::int64_t>& values)
{
    std::vector<std::int64_t> doubled(values.size());
    std::transform(values.begin(), values.end(), doubled.begin(), [](std::int64_t v) { return 2 * v; });
    return HalfSeq(std::move(doubled));
}

HalfSeq HalfSeq::constant(std::size_t n, Half value)
{
    return HalfSeq(std::vector<std::int64_t>(n, value.doubled));
}

HalfSeq HalfSeq::plus_half() const
{
    std::vector<std::int64_t> out(doubled_);
    for (auto& d : out)
        d += 1;
    return HalfSeq(std::move(out));
}

HalfSeq HalfSeq::operator+(const HalfSeq& other) const
{
    if (size() != other.size())
        throw DomainError("elementwise sum of sequences with different lengths");
    std::vector<std::int64_t> out(size());
    for (std::size_t i = 0; i < size(); ++i)
        out[i] = doubled_[i] + other.doubled_[i];
    return HalfSeq(std::move(out));
}

HalfSeq HalfSeq::operator|(const HalfSeq& other) const
{
    std::vector<std::int64_t> out;
    out.reserve(size() + other.size());
    out.insert(out.end(), doubled_.begin(), doubled_.end());
    out.insert(out.end(), other.doubled_.begin(), other.doubled_.end());
    return HalfSeq(std::move(out));
}

Half HalfSeq::sum() const
{
    return Half{std::accumulate(doubled_.begin(), doubled_.end(), std::int64_t{0})};
}

Half HalfSeq::max() const
{
    if (doubled_.empty())
        return Half{0};
    return Half{*std::max_element(doubled_.begin(), doubled_.end())};
}

std::string HalfSeq::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (i != 0)
            out += ',';
        out += (*this)[i].to_string();
    }
    return out;
}

}  // namespace hashpebble
