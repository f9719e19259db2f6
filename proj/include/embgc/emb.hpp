#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace embgc {

// Rational homotopy bookkeeping for the passage from the homotopy fiber over
// immersions back to the embedding space itself: the Stiefel manifold of
// isometric injections, the image of the connecting homomorphism, and the
// resulting rank corrections.

enum class StiefelClass { Euler, Pontryagin };

struct DegreeList {
    std::vector<std::pair<int, StiefelClass>> classes;  // (degree, label)
};

// Rational homotopy of the Stiefel manifold of injections R^m -> R^n,
// n > 2m >= 2, by parity case. Euler classes sit in degrees n-1 and n-m;
// Pontryagin classes in degrees 4l-1.
inline DegreeList stiefel_homotopy(int m, int n) {
    if (!(n > 2 * m && m >= 1)) throw std::out_of_range("stiefel_homotopy: need n > 2m >= 2");
    DegreeList out;
    const bool modd = m & 1, nodd = n & 1;
    auto pont = [&](int top, int kmax) {
        for (int k = 0; k <= kmax; ++k) out.classes.push_back({top - 4 * k, StiefelClass::Pontryagin});
    };
    if (modd && nodd) {
        out.classes.push_back({n - m, StiefelClass::Euler});
        pont(2 * n - 3, (m - 1) / 2);
    } else if (modd && !nodd) {
        out.classes.push_back({n - 1, StiefelClass::Euler});
        pont(2 * n - 5, (m - 3) / 2);
    } else if (!modd && nodd) {
        pont(2 * n - 3, (m - 2) / 2);
    } else {
        out.classes.push_back({n - 1, StiefelClass::Euler});
        out.classes.push_back({n - m, StiefelClass::Euler});
        pont(2 * n - 5, (m - 2) / 2);
    }
    std::erase_if(out.classes, [&](auto& c) { return c.first < 1; });  // empty k-ranges
    std::sort(out.classes.begin(), out.classes.end());
    return out;
}

enum class ConnectingClass { Segment, Tadpole, Theta };

struct ConnectingImage {
    // (class, degree, complexity); Hodge degrees are 2, 1, 1 respectively
    std::vector<std::tuple<ConnectingClass, int, int>> classes;
};

// The image of the connecting homomorphism in rational homotopy: up to three
// classes, depending only on the parities.
inline ConnectingImage connecting_image(int m, int n) {
    if (n < 2 * m + 2) throw std::out_of_range("connecting_image: need n >= 2m+2");
    ConnectingImage out;
    if ((n - m) % 2 == 0) out.classes.push_back({ConnectingClass::Segment, n - 2 * m - 1, 1});
    if (n % 2 == 0) out.classes.push_back({ConnectingClass::Tadpole, n - m - 2, 1});
    if (n % 2 == 1) out.classes.push_back({ConnectingClass::Theta, 2 * n - m - 4, 2});
    return out;
}

// (s, t) of the graph representing each connecting-image class.
inline std::pair<int, int> connecting_class_slice(ConnectingClass c) {
    switch (c) {
        case ConnectingClass::Segment: return {2, 1};
        case ConnectingClass::Tadpole: return {1, 1};
        case ConnectingClass::Theta: return {1, 2};
    }
    throw std::logic_error("connecting_class_slice");
}

// Rank adjustments relating the rational homotopy of the embedding space to
// that of the homotopy fiber: +1 at the surviving Pontryagin degrees (shifted
// by the m-fold loops), -1 at the connecting-image degrees.
inline std::map<int, long long> emb_rank_adjust(int m, int n, const std::map<int, long long>& bar) {
    if (n < 2 * m + 2) throw std::out_of_range("emb_rank_adjust: need n >= 2m+2");
    for (auto& [d, r] : bar)
        if (r < 0) throw std::invalid_argument("emb_rank_adjust: negative input rank");
    std::map<int, long long> out = bar;
    const bool modd = m & 1, nodd = n & 1;
    auto add = [&](int degree, long long delta) {
        out[degree] += delta;
        if (out[degree] < 0)
            throw std::invalid_argument("emb_rank_adjust: adjustment drives degree " +
                                        std::to_string(degree) + " negative");
        if (out[degree] == 0) out.erase(degree);
    };
    if (modd && nodd) {
        for (int k = 0; k <= (m - 3) / 2; ++k) add(2 * n - m - 7 - 4 * k, +1);
        add(2 * n - m - 4, -1);
        add(n - 2 * m - 1, -1);
    } else if (modd && !nodd) {
        for (int k = 0; k <= (m - 3) / 2; ++k) add(2 * n - m - 5 - 4 * k, +1);
        add(n - m - 2, -1);
    } else if (!modd && nodd) {
        for (int k = 0; k <= (m - 4) / 2; ++k) add(2 * n - m - 7 - 4 * k, +1);
        add(2 * n - m - 4, -1);
    } else {
        for (int k = 0; k <= (m - 2) / 2; ++k) add(2 * n - m - 5 - 4 * k, +1);
        add(n - m - 2, -1);
        add(n - 2 * m - 1, -1);
    }
    return out;
}

// The first linearly independent homotopy generators of the fiber, with their
// (s, t); every other generator has degree >= 4n - 3m - 9.
struct SummaryEntry {
    int degree;
    int s, t;
};

inline std::vector<SummaryEntry> summary_generator_dims(int m, int n) {
    const bool modd = m & 1, nodd = n & 1;
    std::vector<SummaryEntry> out;
    if (modd && nodd)
        out = {{n - 2 * m - 1, 2, 1}, {2 * n - 2 * m - 4, 2, 2}, {2 * n - m - 4, 1, 2},
               {3 * n - 2 * m - 7, 2, 3}, {3 * n - m - 7, 1, 3}, {4 * n - 4 * m - 8, 4, 4}};
    else if (modd && !nodd)
        out = {{n - m - 2, 1, 1}, {2 * n - 3 * m - 3, 3, 2}, {3 * n - 2 * m - 7, 2, 3},
               {3 * n - m - 7, 1, 3}};
    else if (!modd && nodd)
        out = {{2 * n - 3 * m - 3, 3, 2}, {2 * n - m - 4, 1, 2}, {3 * n - 3 * m - 6, 3, 3},
               {3 * n - m - 7, 1, 3}};
    else
        out = {{n - 2 * m - 1, 2, 1}, {n - m - 2, 1, 1}, {3 * n - 3 * m - 6, 3, 3},
               {3 * n - m - 7, 1, 3}};
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.degree < b.degree; });
    return out;
}

inline int summary_bound(int m, int n) { return 4 * n - 3 * m - 9; }

}  // namespace embgc
