#include "hashpebble/pebbler.hpp"

#include <algorithm>
#include <stdexcept>

#include "hashpebble/errors.hpp"

namespace hashpebble {

namespace {

constexpr unsigned max_pebbler_order = 62;

}  // namespace

FrameworkPebbler::FrameworkPebbler(Owf owf, Family family, unsigned k, Value seed, ChildOrder child_order)
    : FrameworkPebbler(std::move(owf), rule_for(family), k, std::move(seed), child_order)
{
}

FrameworkPebbler::FrameworkPebbler(Owf owf, ScheduleRule rule, unsigned k, Value seed, ChildOrder child_order)
    : FrameworkPebbler(std::make_shared<const Shared>(Shared{std::move(owf), std::move(rule), child_order}), k,
                       std::move(seed))
{
}

FrameworkPebbler::FrameworkPebbler(std::shared_ptr<const Shared> shared, unsigned k, Value seed)
    : shared_(std::move(shared)), k_(k), slots_(), fill_(k)
{
    if (k > max_pebbler_order)
        throw DomainError("pebbler order too large");
    if (seed.size() != shared_->owf.width())
        throw InvalidInput("seed width does not match one-way function");
    slots_.resize(k + 1);
    slots_[k] = std::move(seed);
}

void FrameworkPebbler::hash_once()
{
    const Value& source = *slots_[fill_];
    if (gap_ == 0) {
        if (fill_ == 0)
            throw std::logic_error("schedule performs more than 2^k - 1 hashes");
        --fill_;
        gap_ = pow2(fill_);
    }
    slots_[fill_] = shared_->owf(source);
    --gap_;
}

RoundResult FrameworkPebbler::step()
{
    if (exhausted())
        throw StateError("pebbler P_" + std::to_string(k_) + " has no rounds left");

    RoundResult result{round_, 0, std::nullopt};
    const std::uint64_t half = pow2(k_);

    if (round_ < half) {
        std::uint64_t t = shared_->rule(k_, round_);
        for (std::uint64_t i = 0; i < t; ++i)
            hash_once();
        result.hashes = t;
    } else if (round_ == half) {
        if (fill_ != 0 || gap_ != 0)
            throw std::logic_error("schedule performs fewer than 2^k - 1 hashes");
        result.output = std::move(*slots_[0]);
        slots_[0].reset();
        children_.reserve(k_);
        for (unsigned i = k_; i >= 1; --i) {
            children_.push_back(FrameworkPebbler(shared_, i - 1, std::move(*slots_[i])));
            slots_[i].reset();
        }
    } else {
        auto run_child = [&result](FrameworkPebbler& child) {
            RoundResult r = child.step();
            result.hashes += r.hashes;
            if (r.output) {
                if (result.output)
                    throw std::logic_error("two pebblers produced output in one round");
                result.output = std::move(r.output);
            }
        };
        if (shared_->child_order == ChildOrder::descending)
            std::for_each(children_.begin(), children_.end(), run_child);
        else
            std::for_each(children_.rbegin(), children_.rend(), run_child);
        std::erase_if(children_, [](const FrameworkPebbler& c) { return c.exhausted(); });
        if (!result.output)
            throw std::logic_error("no pebbler produced output in an output round");
    }

    ++round_;
    return result;
}

std::size_t FrameworkPebbler::storage() const
{
    std::size_t n = std::count_if(slots_.begin(), slots_.end(), [](const auto& s) { return s.has_value(); });
    for (const auto& child : children_)
        n += child.storage();
    return n;
}

const Value* FrameworkPebbler::pending_output() const
{
    if (round_ != pow2(k_) || !slots_[0])
        return nullptr;
    return &*slots_[0];
}

void FrameworkPebbler::collect_active(std::vector<ActivePebbler>& out) const
{
    if (exhausted())
        return;
    if (round_ <= pow2(k_)) {
        out.push_back({k_, round_});
        return;
    }
    for (const auto& child : children_)
        child.collect_active(out);
}

std::vector<Value> run_outputs(const Owf& owf, Family family, unsigned k, const Value& seed)
{
    FrameworkPebbler p(owf, family, k, seed);
    std::vector<Value> out;
    out.reserve(pow2(k));
    while (!p.exhausted()) {
        RoundResult r = p.step();
        if (r.output)
            out.push_back(std::move(*r.output));
    }
    return out;
}

std::vector<Value> reverse_oracle(const Owf& owf, unsigned k, const Value& seed)
{
    if (k > 24)
        throw DomainError("reverse oracle would materialize too many values");
    std::vector<Value> chain;
    chain.reserve(pow2(k));
    chain.push_back(seed);
    for (std::uint64_t i = 1; i < pow2(k); ++i)
        chain.push_back(owf(chain.back()));
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace hashpebble
