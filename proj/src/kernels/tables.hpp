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

#ifndef QFB_KERNELS_TABLES_HPP
#define QFB_KERNELS_TABLES_HPP

#include "qfb/kernels.hpp"

namespace qfb::kernels {

const KernelTable &portable_table();
#ifdef QFB_HAVE_AVX2_KERNEL
const KernelTable &avx2_table();
#endif
#ifdef QFB_HAVE_NEON_KERNEL
const KernelTable &neon_table();
#endif

}  // namespace qfb::kernels

#endif
