// Copyright 2026 The qfb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Built without -mavx2: only the code below the target pragma may use AVX2,
// so nothing from the shared headers is ever emitted with AVX2 encodings.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qfb/kernels.hpp"
#include "qfb/rng.hpp"
#include "tables.hpp"

#include <immintrin.h>

#pragma GCC push_options
#pragma GCC target("avx2")

#include "batch_avx2.hpp"
#include "kernel_impl.hpp"

namespace qfb::kernels {

const KernelTable &avx2_table() {
    static const KernelTable table = Impl<simd::Avx2>::table(Isa::avx2);
    return table;
}

}  // namespace qfb::kernels

#pragma GCC pop_options
