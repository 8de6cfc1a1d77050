#pragma once

#include <stdexcept>

#include "ncf/rational.hpp"

namespace ncf {

// An interval over an ordered, subtractable endpoint type (exact rationals
// here; Ball already carries its own enclosure semantics).
template <class T>
struct BasicInterval {
    T lo;
    T hi;
    bool lo_open = false;
    bool hi_open = false;

    BasicInterval(T lo_, T hi_, bool lo_open_ = false, bool hi_open_ = false)
        : lo(std::move(lo_)), hi(std::move(hi_)), lo_open(lo_open_), hi_open(hi_open_) {
        if (hi < lo) throw std::invalid_argument("interval with lo > hi");
    }

    T width() const { return hi - lo; }

    bool contains(const T& x) const {
        if (x < lo || hi < x) return false;
        if (x == lo && lo_open) return false;
        if (x == hi && hi_open) return false;
        return true;
    }
};

using RationalInterval = BasicInterval<Rational>;

inline RationalInterval unit_interval() { return RationalInterval(Rational(0), Rational(1)); }

}  // namespace ncf
