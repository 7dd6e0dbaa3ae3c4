// Copyright 2026 the ADT authors
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

#pragma once

#include "adt/convert.hpp"
#include "adt/dataset.hpp"
#include "adt/errors.hpp"
#include "adt/evaluator.hpp"
#include "adt/fusion.hpp"
#include "adt/geometry.hpp"
#include "adt/log.hpp"
#include "adt/losses.hpp"
#include "adt/parallel.hpp"
#include "adt/rng.hpp"
#include "adt/sampler.hpp"
#include "adt/tiler.hpp"
#include "adt/version.hpp"
