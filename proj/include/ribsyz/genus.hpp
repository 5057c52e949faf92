#pragma once

#include <stdexcept>
#include <string>

namespace ribsyz {

/// Odd genus g = 2k + 1 of the balanced ribbon, g >= 5.
///
/// Wedge labels are stored as 64-bit masks, so g is also capped at 63.
class Genus {
public:
    static constexpr int max_genus = 63;

    explicit Genus(int g) : g_(g)
    {
        if (g < 5 || g % 2 == 0) {
            throw std::invalid_argument("genus must be odd and >= 5, got " + std::to_string(g));
        }
        if (g > max_genus) {
            throw std::invalid_argument("genus " + std::to_string(g) + " exceeds supported maximum "
                                        + std::to_string(max_genus));
        }
    }

    int g() const noexcept { return g_; }
    int k() const noexcept { return (g_ - 1) / 2; }
    /// Largest index of a basis section x_0, ..., x_{2k}.
    int top_index() const noexcept { return g_ - 1; }

    friend bool operator==(const Genus&, const Genus&) = default;

private:
    int g_;
};

} // namespace ribsyz
