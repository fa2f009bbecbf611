// Copyright 2026 The nonrecip Authors
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

#include "nonrecip/units.hpp"
#include "nonrecip/statespace.hpp"
#include "nonrecip/quadrature.hpp"
#include "nonrecip/parallel.hpp"
#include "nonrecip/trajectory.hpp"
#include "nonrecip/invariant.hpp"
#include "nonrecip/device.hpp"
#include "nonrecip/propagation.hpp"
#include "nonrecip/models.hpp"
#include "nonrecip/metrics.hpp"
#include "nonrecip/io.hpp"
#include "nonrecip/scenario.hpp"
#include "nonrecip/runner.hpp"
