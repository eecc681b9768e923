/*
 * Copyright 2026 The csmoute Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CSMOUTE_DIAGNOSTICS_HPP
#define CSMOUTE_DIAGNOSTICS_HPP

#include <functional>
#include <iostream>
#include <string_view>

namespace csmoute {

/// Receives non-fatal diagnostics (dropped rows, constant columns, ...).
using WarningSink = std::function<void(std::string_view)>;

inline const WarningSink& stderr_warnings() {
  static const WarningSink sink = [](std::string_view message) {
    std::cerr << "warning: " << message << '\n';
  };
  return sink;
}

inline const WarningSink& ignore_warnings() {
  static const WarningSink sink = [](std::string_view) {};
  return sink;
}

}  // namespace csmoute

#endif  // CSMOUTE_DIAGNOSTICS_HPP
