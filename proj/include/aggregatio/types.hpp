#pragma once

#include <string>

#include "aggregatio/errors.hpp"

namespace aggregatio {

/// Binary state of the world.
enum class State { A, B };

/// Binary private signal; signal A points toward state A.
enum class Signal { A, B };

/// Binary action (vote or restaurant choice).
enum class Choice { A, B };

inline const char* to_string(State s) { return s == State::A ? "A" : "B"; }
inline const char* to_string(Signal s) { return s == Signal::A ? "a" : "b"; }
inline const char* to_string(Choice c) { return c == Choice::A ? "A" : "B"; }

/// Weight an agent places on the motivating belief, in [0, 1].
/// The complementary truth-seeking weight (1 - w) is always derived.
class MotivationWeight {
public:
    explicit MotivationWeight(double w) : w_(w) {
        if (!(w >= 0.0 && w <= 1.0))
            throw InvalidParameter("motivation weight must lie in [0, 1], got " +
                                   std::to_string(w));
    }
    double value() const { return w_; }

private:
    double w_;
};

}  // namespace aggregatio
