// Copyright 2026 The Stylo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stylo/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "stylo/error.hpp"

namespace stylo {

std::string_view to_string(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::cosine: return "cosine";
        case DistanceKind::euclidean: return "euclidean";
        case DistanceKind::manhattan: return "manhattan";
    }
    throw Error("invalid distance kind");
}

DistanceKind distance_kind_from_string(std::string_view name) {
    if (name == "cosine") return DistanceKind::cosine;
    if (name == "euclidean") return DistanceKind::euclidean;
    if (name == "manhattan") return DistanceKind::manhattan;
    throw Error("unknown distance kind: " + std::string(name));
}

AlignedPair align(const std::map<std::string, double>& a,
                  const std::map<std::string, double>& b) {
    if (a.empty() && b.empty()) throw Error("align: both operands are empty");

    AlignedPair pair;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            pair.u.push_back(ia->second);
            pair.v.push_back(0.0);
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            pair.u.push_back(0.0);
            pair.v.push_back(ib->second);
            ++ib;
        } else {
            pair.u.push_back(ia->second);
            pair.v.push_back(ib->second);
            ++ia;
            ++ib;
        }
    }
    return pair;
}

AlignedPair align(const NGramVector& a, const NGramVector& b) {
    return align(a.frequencies(), b.frequencies());
}

double distance(std::span<const double> u, std::span<const double> v, DistanceKind kind) {
    if (u.size() != v.size()) throw Error("distance: operand lengths differ");
    if (u.empty()) throw Error("distance: empty operands");

    switch (kind) {
        case DistanceKind::cosine: {
            double dot = 0.0;
            double nu = 0.0;
            double nv = 0.0;
            bool identical = true;
            for (std::size_t i = 0; i < u.size(); ++i) {
                dot += u[i] * v[i];
                nu += u[i] * u[i];
                nv += v[i] * v[i];
                identical = identical && u[i] == v[i];
            }
            if (nu == 0.0 && nv == 0.0) {
                throw Error("cosine distance undefined for two zero vectors");
            }
            if (identical) return 0.0;
            if (nu == 0.0 || nv == 0.0) return 1.0;
            // sqrt rounding can push the ratio a hair past 1; the true value
            // never is (Cauchy-Schwarz), so clamp instead of going negative.
            return std::max(0.0, 1.0 - dot / (std::sqrt(nu) * std::sqrt(nv)));
        }
        case DistanceKind::euclidean: {
            double sum = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                double d = u[i] - v[i];
                sum += d * d;
            }
            return std::sqrt(sum);
        }
        case DistanceKind::manhattan: {
            double sum = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) sum += std::abs(u[i] - v[i]);
            return sum;
        }
    }
    throw Error("invalid distance kind");
}

double distance(const AlignedPair& pair, DistanceKind kind) {
    return distance(std::span<const double>(pair.u), std::span<const double>(pair.v),
                    kind);
}

// Merge-join over the two sorted count maps; algebraically identical to
// align() + dense distance but skips materializing union vectors.
double distance(const NGramVector& a, const NGramVector& b, DistanceKind kind) {
    if (a.empty() && b.empty()) throw Error("align: both operands are empty");

    auto basis_a = static_cast<double>(a.count_basis());
    auto basis_b = static_cast<double>(b.count_basis());
    auto freq = [](std::uint64_t count, double basis) {
        return basis == 0.0 ? 0.0 : static_cast<double>(count) / basis;
    };

    double dot = 0.0;
    double nu = 0.0;
    double nv = 0.0;
    double sum_sq = 0.0;
    double sum_abs = 0.0;
    bool identical = true;

    auto ia = a.counts().begin();
    auto ib = b.counts().begin();
    while (ia != a.counts().end() || ib != b.counts().end()) {
        double fa = 0.0;
        double fb = 0.0;
        if (ib == b.counts().end() ||
            (ia != a.counts().end() && ia->first < ib->first)) {
            fa = freq(ia->second, basis_a);
            ++ia;
        } else if (ia == a.counts().end() || ib->first < ia->first) {
            fb = freq(ib->second, basis_b);
            ++ib;
        } else {
            fa = freq(ia->second, basis_a);
            fb = freq(ib->second, basis_b);
            ++ia;
            ++ib;
        }
        dot += fa * fb;
        nu += fa * fa;
        nv += fb * fb;
        double d = fa - fb;
        sum_sq += d * d;
        sum_abs += std::abs(d);
        identical = identical && fa == fb;
    }

    switch (kind) {
        case DistanceKind::cosine:
            if (nu == 0.0 && nv == 0.0) {
                throw Error("cosine distance undefined for two zero vectors");
            }
            if (identical) return 0.0;
            if (nu == 0.0 || nv == 0.0) return 1.0;
            return std::max(0.0, 1.0 - dot / (std::sqrt(nu) * std::sqrt(nv)));
        case DistanceKind::euclidean:
            return std::sqrt(sum_sq);
        case DistanceKind::manhattan:
            return sum_abs;
    }
    throw Error("invalid distance kind");
}

double overlap_similarity(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;

    std::size_t intersection = 0;
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    for (const auto& tok : small) {
        if (large.contains(tok)) ++intersection;
    }
    std::size_t uni = a.size() + b.size() - intersection;
    return static_cast<double>(intersection) / static_cast<double>(uni);
}

}  // namespace stylo
