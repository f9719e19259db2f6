#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace embgc {

// Koszul sign of the permutation sending element i to position target_pos[i],
// where element i has degree of parity parities[i]. Transposing two adjacent
// elements of degrees d_a, d_b contributes (-1)^{d_a d_b}, so only inversions
// between odd-degree elements matter.
inline int koszul_sign(const std::vector<int>& target_pos, const std::vector<int>& parities) {
    if (target_pos.size() != parities.size())
        throw std::invalid_argument("koszul_sign: length mismatch");
    std::vector<int> odd;
    odd.reserve(target_pos.size());
    for (std::size_t i = 0; i < target_pos.size(); ++i)
        if (parities[i] & 1) odd.push_back(target_pos[i]);
    long inv = 0;
    for (std::size_t i = 0; i < odd.size(); ++i)
        for (std::size_t j = i + 1; j < odd.size(); ++j)
            if (odd[i] > odd[j]) ++inv;
    return (inv & 1) ? -1 : 1;
}

// Plain permutation sign (all elements odd).
inline int permutation_sign(const std::vector<int>& target_pos) {
    return koszul_sign(target_pos, std::vector<int>(target_pos.size(), 1));
}

}  // namespace embgc
