#pragma once

#include <numbers>
#include <string>
#include <vector>

namespace qgsw {

// Uniform periodic grid x_j = -L + j dx on [-L, L), dx = 2L/N.
struct Grid {
    int n = 256;
    double half_length = 16.0 * std::numbers::pi;

    double dx() const { return 2.0 * half_length / n; }
    double x(int j) const { return -half_length + j * dx(); }
    // Frequency spacing pi/L.
    double dxi() const { return std::numbers::pi / half_length; }
    // Signed frequency of the FFT-ordered index m (index n/2 is the Nyquist
    // mode, reported as negative).
    double xi(int m) const { return dxi() * signed_index(m); }
    int signed_index(int m) const { return m < n / 2 ? m : m - n; }
    double xi_max() const { return dxi() * (n / 2); }
    std::vector<double> points() const;

    void validate() const;
    bool operator==(const Grid&) const = default;
};

// moving: the transport term 2*pi*phi_x has been removed.
enum class Frame { lab, moving };

std::string to_string(Frame f);
Frame frame_from_string(const std::string& s);

struct FrontState {
    Grid grid;
    std::vector<double> values;
    double time = 0.0;
    Frame frame = Frame::moving;
    double jump = 1.0 / std::numbers::pi;

    void validate() const;
};

}  // namespace qgsw
