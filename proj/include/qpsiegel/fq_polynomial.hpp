#pragma once

#include <vector>

#include "qpsiegel/finite_field.hpp"

namespace qps {

// Minimal F_p[x] arithmetic for the enumeration oracles: a polynomial is
// its coefficient vector (index = degree, trailing zeros allowed).
using FqPoly = std::vector<int>;

inline int fq_eval(const FqPoly& f, int x, int p) {
    long acc = 0;
    for (std::size_t i = f.size(); i-- > 0;)
        acc = (acc * x + f[i]) % p;
    return static_cast<int>(acc);
}

inline bool fq_is_zero(const FqPoly& f) {
    for (int c : f)
        if (c != 0)
            return false;
    return true;
}

inline int fq_deg(const FqPoly& f) {
    for (std::size_t i = f.size(); i-- > 0;)
        if (f[i] != 0)
            return static_cast<int>(i);
    return -1;
}

inline FqPoly fq_mul(const FqPoly& a, const FqPoly& b, int p) {
    if (a.empty() || b.empty())
        return {};
    FqPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = mod_norm(out[i + j] + static_cast<long>(a[i]) * b[j], p);
    }
    return out;
}

inline FqPoly fq_add(const FqPoly& a, const FqPoly& b, int p) {
    FqPoly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int x = i < a.size() ? a[i] : 0;
        const int y = i < b.size() ? b[i] : 0;
        out[i] = mod_norm(x + y, p);
    }
    return out;
}

inline FqPoly fq_sub(const FqPoly& a, const FqPoly& b, int p) {
    FqPoly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int x = i < a.size() ? a[i] : 0;
        const int y = i < b.size() ? b[i] : 0;
        out[i] = mod_norm(x - y, p);
    }
    return out;
}

} // namespace qps
