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

#ifndef CSMOUTE_CSMOUTE_HPP
#define CSMOUTE_CSMOUTE_HPP

// Core library. The experiment/ headers additionally need Boost.PropertyTree
// and nlohmann/json and are included separately.

#include "csmoute/classifiers.hpp"
#include "csmoute/csv.hpp"
#include "csmoute/dataset.hpp"
#include "csmoute/error.hpp"
#include "csmoute/evaluation.hpp"
#include "csmoute/folds.hpp"
#include "csmoute/io.hpp"
#include "csmoute/keel.hpp"
#include "csmoute/matrix.hpp"
#include "csmoute/metrics.hpp"
#include "csmoute/neighbors.hpp"
#include "csmoute/preprocess.hpp"
#include "csmoute/resampling.hpp"
#include "csmoute/rng.hpp"
#include "csmoute/stats.hpp"
#include "csmoute/taxonomy.hpp"

#endif  // CSMOUTE_CSMOUTE_HPP
