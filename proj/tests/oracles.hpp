#pragma once
// Reference implementations used only by tests. Each one recomputes a
// quantity by a route independent of the library code it checks.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "polarbp/polar_code.hpp"

namespace test_oracles {

// F^{(x)m} built by literal Kronecker doubling: M_{2s} = [[M,0],[M,M]].
inline std::vector<polarbp::Bits> kronecker_rows(int m) {
    std::vector<polarbp::Bits> rows{{1}};
    for (int level = 0; level < m; ++level) {
        const size_t s = rows.size();
        std::vector<polarbp::Bits> next(2 * s, polarbp::Bits(2 * s, 0));
        for (size_t i = 0; i < s; ++i) {
            for (size_t j = 0; j < s; ++j) {
                next[i][j] = rows[i][j];
                next[s + i][j] = rows[i][j];
                next[s + i][s + j] = rows[i][j];
            }
        }
        rows = std::move(next);
    }
    return rows;
}

// x = u * M as the XOR of the rows selected by u.
inline polarbp::Bits kron_encode(const std::vector<polarbp::Bits>& rows,
                                 const polarbp::Bits& u) {
    polarbp::Bits x(u.size(), 0);
    for (size_t i = 0; i < u.size(); ++i) {
        if (!u[i]) continue;
        for (size_t j = 0; j < x.size(); ++j) x[j] ^= rows[i][j];
    }
    return x;
}

// Bhattacharyya parameters by the textbook recursion written recursively:
// the worse half (2z - z^2) occupies the lower indices of each split.
inline void bhatt_fill(std::vector<double>& out, int base, int len, double z) {
    if (len == 1) {
        out[base] = z;
        return;
    }
    bhatt_fill(out, base, len / 2, 2.0 * z - z * z);
    bhatt_fill(out, base + len / 2, len / 2, z * z);
}

inline std::vector<double> bhatt_reference(int n, double z0) {
    std::vector<double> out(n);
    bhatt_fill(out, 0, n, z0);
    return out;
}

inline polarbp::Bits reference_frozen_mask(int n, int k, double z0) {
    const std::vector<double> z = bhatt_reference(n, z0);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&z](int a, int b) {
        if (z[a] != z[b]) return z[a] > z[b];
        return a < b;
    });
    polarbp::Bits mask(n, 0);
    for (int i = 0; i < n - k; ++i) mask[order[i]] = 1;
    return mask;
}

}  // namespace test_oracles
