#pragma once

#include <variant>
#include <vector>

#include "qbloch/types.hpp"

namespace qbloch {

struct ConstantEnvelope {
    friend bool operator==(const ConstantEnvelope&, const ConstantEnvelope&) = default;
};

/// exp(-(t - center)^2 / (2 width^2)); peak value 1 at the center.
struct GaussianEnvelope {
    double center = 0.0;
    double width = 1.0;
    friend bool operator==(const GaussianEnvelope&, const GaussianEnvelope&) = default;
};

/// 1 on [start, stop), 0 elsewhere.
struct RectangularEnvelope {
    double start = 0.0;
    double stop = 1.0;
    friend bool operator==(const RectangularEnvelope&, const RectangularEnvelope&) = default;
};

using Envelope = std::variant<ConstantEnvelope, GaussianEnvelope, RectangularEnvelope>;

double envelope_value(const Envelope& envelope, double t);

/// amplitude * envelope(t) * exp(-i (carrier_frequency t + phase)).
struct Pulse {
    Vec3c amplitude{};
    double carrier_frequency = 0.0;
    double phase = 0.0;
    Envelope envelope = ConstantEnvelope{};

    friend bool operator==(const Pulse&, const Pulse&) = default;
};

class FieldProfile {
public:
    FieldProfile() = default;
    /// Throws ValidationError for width <= 0 or start >= stop.
    explicit FieldProfile(std::vector<Pulse> pulses);

    void add(const Pulse& pulse);

    const std::vector<Pulse>& pulses() const { return pulses_; }
    bool empty() const { return pulses_.empty(); }

    Vec3c evaluate(double t) const;
    Vec3c operator()(double t) const { return evaluate(t); }

    friend bool operator==(const FieldProfile&, const FieldProfile&) = default;

private:
    std::vector<Pulse> pulses_;
};

} // namespace qbloch
