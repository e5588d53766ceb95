#include <twistdef/koszul.hpp>

#include <stdexcept>

namespace twistdef {

int koszul_sign(std::span<const int> degrees, std::span<const std::size_t> perm)
{
    if (degrees.size() != perm.size()) throw std::invalid_argument("koszul_sign: permutation length does not match signature");
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t p : perm) {
        if (p >= perm.size() || seen[p]) throw std::invalid_argument("koszul_sign: not a permutation");
        seen[p] = true;
    }
    int parity = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) parity ^= (degrees[perm[i]] & 1) & (degrees[perm[j]] & 1);
    return parity ? -1 : 1;
}

int permutation_sign(std::span<const std::size_t> perm)
{
    std::vector<int> ones(perm.size(), 1);
    return koszul_sign(ones, perm);
}

int unshuffle_sign(std::span<const int> degrees, std::span<const std::size_t> first)
{
    // Every element of `first` jumps over the non-selected elements that
    // precede it.
    int parity = 0;
    int odd_skipped = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const int odd = degrees[i] & 1;
        if (k < first.size() && first[k] == i) {
            parity ^= odd & (odd_skipped & 1);
            ++k;
        } else {
            odd_skipped += odd;
        }
    }
    return parity ? -1 : 1;
}

} // namespace twistdef
