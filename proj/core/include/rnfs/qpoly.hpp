// Exact rational polynomial arithmetic (small degrees only).
#pragma once

#include <gmpxx.h>

#include <vector>

#include "rnfs/int.hpp"

namespace rnfs {

using Rat = mpq_class;
using QPoly = std::vector<Rat>;  // ascending coefficients

inline void qpoly_trim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int qpoly_deg(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

inline QPoly qpoly_from_int(const std::vector<Int>& v) {
    QPoly r(v.begin(), v.end());
    qpoly_trim(r);
    return r;
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qpoly_trim(r);
    return r;
}

inline QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    qpoly_trim(r);
    return r;
}

// Divide a by b, returning (quotient, remainder).
inline std::pair<QPoly, QPoly> qpoly_divmod(QPoly a, const QPoly& b) {
    QPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
    while (!a.empty() && a.size() >= b.size()) {
        Rat c = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        q[off] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        qpoly_trim(a);
    }
    qpoly_trim(q);
    return {q, a};
}

inline QPoly qpoly_mod(const QPoly& a, const QPoly& b) { return qpoly_divmod(a, b).second; }

inline QPoly qpoly_gcd(QPoly a, QPoly b) {
    qpoly_trim(a);
    qpoly_trim(b);
    while (!b.empty()) {
        QPoly r = qpoly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// Clear denominators and divide by content: primitive integer image.
inline std::vector<Int> qpoly_primitive(const QPoly& f) {
    Int den = 1;
    for (const auto& c : f) {
        Int d = c.get_den();
        den = den / gcd(den, d) * d;
    }
    std::vector<Int> v;
    v.reserve(f.size());
    for (const auto& c : f) {
        Rat scaled = c * Rat(den);
        v.push_back(Int(scaled.get_num()));
    }
    Int content = 0;
    for (const auto& x : v) content = gcd(content, x);
    if (content > 1)
        for (auto& x : v) x /= content;
    return v;
}

}  // namespace rnfs
