// A time-indexed sequence of complex fields on a fixed grid, as produced by
// the evolution loop. Sample times are strictly increasing.
#pragma once

#include <stdexcept>
#include <vector>

#include "imlab/field.hpp"

namespace imlab {

struct Trajectory {
    Grid grid;
    std::vector<double> times;
    std::vector<Field> fields;

    std::size_t size() const { return times.size(); }

    void append(double t, Field f) {
        if (!(f.grid == grid)) throw std::invalid_argument("Trajectory::append: grid mismatch");
        if (!times.empty() && !(t > times.back()))
            throw std::invalid_argument("Trajectory::append: sample times must increase");
        times.push_back(t);
        fields.push_back(std::move(f));
    }
};

}  // namespace imlab
