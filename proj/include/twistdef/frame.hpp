#ifndef TWISTDEF_FRAME_HPP
#define TWISTDEF_FRAME_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace twistdef {

/// Strictly increasing index tuple, stored as a bit set.
using Frame = std::uint32_t;

inline int frame_size(Frame f) { return std::popcount(f); }
inline bool frame_has(Frame f, std::size_t i) { return (f >> i) & 1u; }
inline Frame frame_bit(std::size_t i) { return Frame{1} << i; }

/// Canonical order: by size, then lexicographically by sorted indices.
inline bool frame_less(Frame a, Frame b)
{
    const int sa = std::popcount(a), sb = std::popcount(b);
    if (sa != sb) return sa < sb;
    const Frame d = a ^ b;
    if (d == 0) return false;
    return (a & (d & (~d + 1))) != 0;
}

/// Parity of the reordering that sorts the concatenation (a, b).
inline int wedge_parity(Frame a, Frame b)
{
    int parity = 0;
    for (Frame rest = b; rest != 0; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        const Frame above = (j >= 31) ? 0u : (a & ~((Frame{2} << j) - 1));
        parity ^= std::popcount(above) & 1;
    }
    return parity;
}

/// Number of elements of f strictly below i.
inline int count_below(Frame f, std::size_t i)
{
    return std::popcount(f & (frame_bit(i) - 1));
}

inline int count_above(Frame f, std::size_t i)
{
    return std::popcount(f & ~((frame_bit(i) << 1) - 1));
}

std::vector<std::size_t> frame_indices(Frame f);
/// Throws std::invalid_argument unless `idx` is strictly increasing and < nvars.
Frame frame_from_indices(const std::vector<std::size_t> &idx, std::size_t nvars);
/// All frames over nvars indices of size <= max_size in canonical order.
std::vector<Frame> frames_up_to(std::size_t nvars, int max_size);

} // namespace twistdef

#endif
