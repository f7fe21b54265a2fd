//
// Copyright 2026 The dpmedreg Authors
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
//

#include <cstdlib>
#include <string>

#include "dpmr/kernels.hpp"
#include "dpmr/model.hpp"
#include "kernels/tables.hpp"

namespace dpmr::kernels {
namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(DPMR_HAVE_AVX2_TABLE) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(DPMR_HAVE_NEON_TABLE)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* lookup(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return &kScalarTable;
    case Isa::kAvx2:
#if defined(DPMR_HAVE_AVX2_TABLE)
      return &kAvx2Table;
#else
      return nullptr;
#endif
    case Isa::kNeon:
#if defined(DPMR_HAVE_NEON_TABLE)
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& select() {
  if (const char* env = std::getenv("DPMR_KERNELS")) {
    const std::string want(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == isa_name(isa)) return table(isa);
    }
    if (want != "auto") {
      throw InvalidArgument("DPMR_KERNELS: unknown kernel set '" + want + "'");
    }
  }
  const auto isas = available();
  return table(isas.back());
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (lookup(isa) != nullptr && cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& table(Isa isa) {
  const KernelTable* t = lookup(isa);
  if (t == nullptr || !cpu_supports(isa)) {
    throw InvalidArgument("kernel set '" + std::string(isa_name(isa)) +
                          "' is not available on this machine");
  }
  return *t;
}

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace dpmr::kernels
