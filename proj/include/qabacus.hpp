// Copyright 2026 The qabacus Authors
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


// Umbrella header.

#pragma once

#include "qabacus/barrier.hpp"
#include "qabacus/compiler.hpp"
#include "qabacus/error.hpp"
#include "qabacus/evolve.hpp"
#include "qabacus/format.hpp"
#include "qabacus/gatelab.hpp"
#include "qabacus/oracle.hpp"
#include "qabacus/schedule_json.hpp"
#include "qabacus/spectral.hpp"
#include "qabacus/verify.hpp"
