#ifndef TWISTDEF_KOSZUL_HPP
#define TWISTDEF_KOSZUL_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace twistdef {

/// Sign of reordering graded objects. `perm[i]` names the original position
/// of the object placed at slot i. Each inversion of two objects of degrees
/// p and q contributes (-1)^{pq}. Throws std::invalid_argument on a length
/// mismatch or when perm is not a permutation.
int koszul_sign(std::span<const int> degrees, std::span<const std::size_t> perm);

/// Plain sign of a permutation (all degrees odd).
int permutation_sign(std::span<const std::size_t> perm);

/// Sign of the unshuffle that moves the positions in `first` (ascending)
/// ahead of the remaining positions, keeping relative order in each block.
/// Only parities of `degrees` matter.
int unshuffle_sign(std::span<const int> degrees, std::span<const std::size_t> first);

} // namespace twistdef

#endif
