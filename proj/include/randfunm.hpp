/*
   Copyright 2026 The randfunm Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "randfunm/errors.hpp"
#include "randfunm/sparse_matrix.hpp"
#include "randfunm/graph_io.hpp"
#include "randfunm/graph_gen.hpp"
#include "randfunm/rng.hpp"
#include "randfunm/series.hpp"
#include "randfunm/walker.hpp"
#include "randfunm/parallel.hpp"
#include "randfunm/estimators.hpp"
#include "randfunm/oracle.hpp"
#include "randfunm/centrality.hpp"
#include "randfunm/experiment.hpp"
#include "randfunm/report.hpp"
