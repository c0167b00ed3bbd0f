// Copyright 2026 The qpure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPURE_QPURE_HPP
#define QPURE_QPURE_HPP

#include "qpure/channels.hpp"
#include "qpure/geometry.hpp"
#include "qpure/matcore.hpp"
#include "qpure/purify.hpp"
#include "qpure/random.hpp"
#include "qpure/setanalysis.hpp"
#include "qpure/states.hpp"

#endif  // QPURE_QPURE_HPP
