#pragma once

#include <cstdint>

#include "qwalk/errors.hpp"

namespace qwalk {

/// Walk support: a line segment holding every site reachable within `horizon`
/// steps of the origin (x in [-horizon, +horizon]), or a cycle of `size`
/// sites (x in {0, ..., size-1}). Line walks are truncated at the horizon with
/// steps <= horizon enforced upstream, so truncation is exact: the walker can
/// never feel the boundary.
struct Lattice {
    enum class Kind { Line, Cycle };

    Kind kind = Kind::Line;
    int64_t extent = 1;  // Line: horizon; Cycle: size

    static Lattice line(int64_t horizon) {
        if (horizon < 1) throw InvalidConfig("line horizon must be >= 1");
        return Lattice{Kind::Line, horizon};
    }
    static Lattice cycle(int64_t size) {
        if (size < 3) throw InvalidConfig("cycle size must be >= 3");
        return Lattice{Kind::Cycle, size};
    }

    bool is_line() const { return kind == Kind::Line; }
    bool is_cycle() const { return kind == Kind::Cycle; }

    int64_t n_pos() const { return is_line() ? 2 * extent + 1 : extent; }
    int64_t min_x() const { return is_line() ? -extent : 0; }
    int64_t max_x() const { return is_line() ? extent : extent - 1; }
    bool contains(int64_t x) const { return x >= min_x() && x <= max_x(); }

    /// Position -> storage offset in [0, n_pos).
    int64_t offset_of(int64_t x) const { return x - min_x(); }
    int64_t x_of(int64_t offset) const { return offset + min_x(); }

    friend bool operator==(const Lattice&, const Lattice&) = default;
};

/// Basis labeling |x, c> with c in {-1, +1}. The flat storage index is
/// 2 * offset(x) + bit(c) with bit 0 <-> c = -1 and bit 1 <-> c = +1; this
/// coin encoding is fixed project-wide.
struct BasisIndex {
    int64_t position = 0;
    int coin = -1;  // -1 or +1

    int coin_bit() const { return coin > 0 ? 1 : 0; }

    int64_t flat(const Lattice& lat) const { return 2 * lat.offset_of(position) + coin_bit(); }

    static BasisIndex from_flat(const Lattice& lat, int64_t index) {
        return BasisIndex{lat.x_of(index / 2), (index % 2) ? +1 : -1};
    }
};

}  // namespace qwalk
