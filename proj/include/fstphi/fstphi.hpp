// fstphi/fstphi.hpp
//
// Umbrella header.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "fstphi/compose.hpp"
#include "fstphi/enumerate.hpp"
#include "fstphi/fst.hpp"
#include "fstphi/maxmatch.hpp"
#include "fstphi/phi_transduce.hpp"
#include "fstphi/semiring.hpp"
#include "fstphi/symbol_table.hpp"
#include "fstphi/text_io.hpp"
#include "fstphi/transforms.hpp"
