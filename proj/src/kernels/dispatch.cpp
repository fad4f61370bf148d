// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <cstring>

#include "paf/kernels/kernels.hpp"

namespace paf::kernels {

#if PAF_HAVE_AVX2
const Ops* avx2_ops_impl();
#endif

const Ops* avx2_ops() {
#if PAF_HAVE_AVX2
    if (__builtin_cpu_supports("avx2")) return avx2_ops_impl();
#endif
    return nullptr;
}

const Ops& active_ops() {
    static const Ops& chosen = []() -> const Ops& {
        const char* env = std::getenv("PAFTOOL_ISA");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_ops();
        const Ops* avx2 = avx2_ops();
        return avx2 != nullptr ? *avx2 : scalar_ops();
    }();
    return chosen;
}

}  // namespace paf::kernels
