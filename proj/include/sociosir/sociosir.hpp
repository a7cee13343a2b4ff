/*
 * Copyright (C) 2026 The sociosir Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Umbrella header. The io/ headers pull in nlohmann/json and are not included here.

#include "sociosir/core_types.hpp"
#include "sociosir/dynamics.hpp"
#include "sociosir/error.hpp"
#include "sociosir/feasibility.hpp"
#include "sociosir/integrator.hpp"
#include "sociosir/ngm.hpp"
#include "sociosir/scenarios.hpp"
#include "sociosir/sensitivity.hpp"
