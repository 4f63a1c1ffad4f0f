/* Copyright 2026 The littlesync Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include "little/assign.hpp"
#include "little/ast.hpp"
#include "little/census.hpp"
#include "little/common.hpp"
#include "little/eval.hpp"
#include "little/json.hpp"
#include "little/ops.hpp"
#include "little/parser.hpp"
#include "little/prelude.hpp"
#include "little/session.hpp"
#include "little/solver.hpp"
#include "little/substitution.hpp"
#include "little/svg.hpp"
#include "little/synthesis.hpp"
#include "little/trace.hpp"
#include "little/trigger.hpp"
#include "little/unparse.hpp"
#include "little/value.hpp"
#include "little/zones.hpp"
