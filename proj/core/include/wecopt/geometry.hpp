#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace wecopt {

struct Position {
    double x = 0.0;  // m
    double y = 0.0;  // m

    friend bool operator==(const Position&, const Position&) = default;
};

inline double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Buoy positions in placement order. Order matters to the sequential
// heuristics and is preserved everywhere.
class Layout {
public:
    Layout() = default;
    Layout(std::initializer_list<Position> positions) : positions_(positions) {}
    explicit Layout(std::vector<Position> positions) : positions_(std::move(positions)) {}

    std::size_t size() const noexcept { return positions_.size(); }
    bool empty() const noexcept { return positions_.empty(); }

    const Position& operator[](std::size_t i) const { return positions_[i]; }
    Position& operator[](std::size_t i) { return positions_[i]; }

    void push_back(const Position& p) { positions_.push_back(p); }
    void pop_back() { positions_.pop_back(); }
    const Position& back() const { return positions_.back(); }
    Position& back() { return positions_.back(); }

    const std::vector<Position>& positions() const noexcept { return positions_; }

    auto begin() const noexcept { return positions_.begin(); }
    auto end() const noexcept { return positions_.end(); }

    friend bool operator==(const Layout&, const Layout&) = default;

    bool all_finite() const {
        for (const auto& p : positions_) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
        }
        return true;
    }

private:
    std::vector<Position> positions_;
};

// Axis-aligned rectangle, used both for the farm square and refiner bounds.
struct Box {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;

    static Box square(double side) { return {0.0, side, 0.0, side}; }

    bool contains(const Position& p) const {
        return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
    }

    Position clamp(const Position& p) const {
        return {std::fmin(std::fmax(p.x, x_lo), x_hi), std::fmin(std::fmax(p.y, y_lo), y_hi)};
    }
};

}  // namespace wecopt
