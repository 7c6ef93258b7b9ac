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

#ifndef STYLO_SIMILARITY_HPP
#define STYLO_SIMILARITY_HPP

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/ngram.hpp"

namespace stylo {

enum class DistanceKind { cosine, euclidean, manhattan };

std::string_view to_string(DistanceKind kind);
DistanceKind distance_kind_from_string(std::string_view name);

/// Two dense vectors over the union of the operands' keys (byte-lexicographic
/// order), missing keys filled with 0.
struct AlignedPair {
    std::vector<double> u;
    std::vector<double> v;
};

/// Errors when both operands are empty (every distance would be undefined).
AlignedPair align(const std::map<std::string, double>& a,
                  const std::map<std::string, double>& b);
AlignedPair align(const NGramVector& a, const NGramVector& b);

/// cosine   = 1 - u.v / (|u||v|); exactly one zero-norm operand gives 1,
///            both zero-norm is an error.
/// euclidean = |u - v|_2
/// manhattan = sum |u_i - v_i|
double distance(const AlignedPair& pair, DistanceKind kind);
double distance(std::span<const double> u, std::span<const double> v, DistanceKind kind);

/// Distance between sparse frequency vectors without materializing the dense
/// union; identical to distance(align(a, b), kind).
double distance(const NGramVector& a, const NGramVector& b, DistanceKind kind);

/// Jaccard index |a ∩ b| / |a ∪ b|. Two empty sets give 0 by convention
/// (an uninformative comparison, not an error).
double overlap_similarity(const std::set<std::string>& a, const std::set<std::string>& b);

}  // namespace stylo

#endif  // STYLO_SIMILARITY_HPP
