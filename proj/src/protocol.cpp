#include "hashpebble/protocol.hpp"

#include "hashpebble/errors.hpp"

namespace hashpebble {

namespace {

std::variant<FrameworkPebbler, InPlacePebbler> make_pebbler(const Owf& owf, unsigned k, const Value& seed,
                                                            ProverBackend backend)
{
    switch (backend.kind) {
    case ProverBackend::Kind::inplace_speed2:
        return InPlacePebbler::speed2(owf, k, seed);
    case ProverBackend::Kind::inplace_optimal:
        return InPlacePebbler::optimal(owf, k, seed);
    case ProverBackend::Kind::framework:
        break;
    }
    FrameworkPebbler p(owf, backend.family, k, seed);
    while (p.next_round() < pow2(k))
        p.step();
    return p;
}

const Value& first_output(const std::variant<FrameworkPebbler, InPlacePebbler>& pebbler)
{
    if (const auto* fw = std::get_if<FrameworkPebbler>(&pebbler))
        return *fw->pending_output();
    return std::get<InPlacePebbler>(pebbler).peek();
}

}  // namespace

Prover::Prover(Owf owf, unsigned k, const Value& seed, ProverBackend backend)
    : owf_(std::move(owf)),
      k_(k),
      pebbler_(make_pebbler(owf_, k, seed, backend)),
      endpoint_(owf_(first_output(pebbler_)))
{
}

Release Prover::next()
{
    if (released_ >= chain_length())
        throw ExhaustedError("all " + std::to_string(chain_length()) + " chain elements have been released");
    Release release;
    if (auto* fw = std::get_if<FrameworkPebbler>(&pebbler_)) {
        RoundResult r = fw->step();
        release = {std::move(*r.output), r.hashes};
    } else {
        StepResult r = std::get<InPlacePebbler>(pebbler_).step();
        release = {std::move(r.output), r.hashes};
    }
    ++released_;
    return release;
}

std::string_view to_string(Verdict v)
{
    return v == Verdict::accept ? "accept" : "reject";
}

Verdict Verifier::check(const Owf& owf, const Value& candidate)
{
    if (candidate.size() != owf.width() || owf(candidate) != anchor_)
        return Verdict::reject;
    anchor_ = candidate;
    ++verified_;
    return Verdict::accept;
}

}  // namespace hashpebble
