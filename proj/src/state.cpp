#include "qgsw/state.hpp"

#include <cmath>

#include "qgsw/error.hpp"

namespace qgsw {

std::vector<double> Grid::points() const {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = this->x(j);
    return x;
}

void Grid::validate() const {
    if (n < 4 || (n & (n - 1)) != 0) throw ShapeError("grid size must be a power of two >= 4, got " + std::to_string(n));
    if (!(half_length > 0.0) || !std::isfinite(half_length)) throw ShapeError("grid half-length must be positive");
}

std::string to_string(Frame f) { return f == Frame::lab ? "lab" : "moving"; }

Frame frame_from_string(const std::string& s) {
    if (s == "lab") return Frame::lab;
    if (s == "moving") return Frame::moving;
    throw ConfigError("frame", "expected 'lab' or 'moving', got '" + s + "'");
}

void FrontState::validate() const {
    grid.validate();
    if (int(values.size()) != grid.n) throw ShapeError("front values do not match grid size");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("front values must be finite");
}

}  // namespace qgsw
