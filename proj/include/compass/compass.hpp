// Copyright 2026 The compass authors.
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

#include "compass/special_fn.hpp"
#include "compass/state_model.hpp"
#include "compass/wigner_static.hpp"
#include "compass/thermal_channel.hpp"
#include "compass/fock_oracle.hpp"
#include "compass/analysis.hpp"
#include "compass/field_io.hpp"
#include "compass/validation.hpp"
