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

#ifndef STYLO_ERROR_HPP
#define STYLO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace stylo {

/// Validation or contract violation raised by library operations.
/// Anything else escaping the library is an internal error.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stylo

#endif  // STYLO_ERROR_HPP
