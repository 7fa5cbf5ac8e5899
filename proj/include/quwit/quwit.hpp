// Copyright 2026 The quwit Authors
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

#include "quwit/config.hpp"
#include "quwit/dependence.hpp"
#include "quwit/error.hpp"
#include "quwit/graph.hpp"
#include "quwit/graph_state.hpp"
#include "quwit/hyperentanglement.hpp"
#include "quwit/io.hpp"
#include "quwit/linalg.hpp"
#include "quwit/measurement.hpp"
#include "quwit/random.hpp"
#include "quwit/witness.hpp"
