#include "qbloch/fields.hpp"

#include <cmath>
#include <sstream>

namespace qbloch {

namespace {

void validate_pulse(const Pulse& pulse)
{
    if (const auto* g = std::get_if<GaussianEnvelope>(&pulse.envelope)) {
        if (!(g->width > 0.0)) {
            std::ostringstream os;
            os << "gaussian envelope width must be > 0, got " << g->width;
            throw ValidationError(os.str());
        }
    } else if (const auto* r = std::get_if<RectangularEnvelope>(&pulse.envelope)) {
        if (!(r->start < r->stop)) {
            std::ostringstream os;
            os << "rectangular envelope needs start < stop, got [" << r->start << ", " << r->stop << ")";
            throw ValidationError(os.str());
        }
    }
}

struct EnvelopeAt {
    double t;
    double operator()(const ConstantEnvelope&) const { return 1.0; }
    double operator()(const GaussianEnvelope& g) const
    {
        const double x = (t - g.center) / g.width;
        return std::exp(-0.5 * x * x);
    }
    double operator()(const RectangularEnvelope& r) const
    {
        return (t >= r.start && t < r.stop) ? 1.0 : 0.0;
    }
};

} // namespace

double envelope_value(const Envelope& envelope, double t)
{
    return std::visit(EnvelopeAt{t}, envelope);
}

FieldProfile::FieldProfile(std::vector<Pulse> pulses) : pulses_(std::move(pulses))
{
    for (const auto& p : pulses_)
        validate_pulse(p);
}

void FieldProfile::add(const Pulse& pulse)
{
    validate_pulse(pulse);
    pulses_.push_back(pulse);
}

Vec3c FieldProfile::evaluate(double t) const
{
    Vec3c out{};
    for (const auto& p : pulses_) {
        const double env = envelope_value(p.envelope, t);
        if (env == 0.0)
            continue;
        const cplx w = env * std::exp(-I * (p.carrier_frequency * t + p.phase));
        for (int a = 0; a < 3; ++a)
            out[a] += p.amplitude[a] * w;
    }
    return out;
}

} // namespace qbloch
