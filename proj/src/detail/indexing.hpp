#pragma once

// Mixed-radix index helpers. Site 0 is the most significant digit, matching kron order.

#include "tpsd/errors.hpp"
#include "tpsd/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace tpsd::detail {

inline std::vector<std::int64_t> strides(std::span<const int> dims) {
    std::vector<std::int64_t> s(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
    return s;
}

inline std::int64_t digit(std::int64_t index, const std::vector<std::int64_t>& strides,
                          std::span<const int> dims, int site) {
    return (index / strides[site]) % dims[site];
}

/// Splits full indices into (kept, rest) multi-indices for a set of kept sites.
class SiteSplit {
public:
    SiteSplit(std::span<const int> dims, std::span<const int> keep) {
        const int m = static_cast<int>(dims.size());
        std::vector<bool> kept(m, false);
        for (int s : keep) {
            if (s < 0 || s >= m) throw ShapeError("site index out of range");
            if (kept[s]) throw ShapeError("duplicate site index");
            kept[s] = true;
        }
        const auto st = strides(dims);
        std::int64_t d = 1;
        for (int q : dims) d *= q;
        kept_dim_ = 1;
        for (int s = 0; s < m; ++s)
            if (kept[s]) kept_dim_ *= dims[s];
        rest_dim_ = d / kept_dim_;
        table_.assign(static_cast<std::size_t>(d), 0);
        for (std::int64_t x = 0; x < d; ++x) {
            std::int64_t k = 0, r = 0;
            for (int s = 0; s < m; ++s) {
                const std::int64_t dg = (x / st[s]) % dims[s];
                if (kept[s])
                    k = k * dims[s] + dg;
                else
                    r = r * dims[s] + dg;
            }
            table_[static_cast<std::size_t>(r * kept_dim_ + k)] = x;
        }
    }

    Index kept_dim() const { return kept_dim_; }
    Index rest_dim() const { return rest_dim_; }
    Index full_index(Index kept, Index rest) const {
        return table_[static_cast<std::size_t>(rest * kept_dim_ + kept)];
    }

private:
    Index kept_dim_ = 1;
    Index rest_dim_ = 1;
    std::vector<Index> table_;
};

} // namespace tpsd::detail
