/*
 * Copyright 2026 The regcomb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <functional>

#include <gmpxx.h>

namespace regcomb {

using BigInt = mpz_class;

/// Memory needed by the base condition class on arenas with `n` vertices.
using BaseSizeFn = std::function<BigInt(const BigInt& n)>;

/// Results wider than this many bits are refused with std::overflow_error.
inline constexpr std::uint64_t kMaxBoundBits = std::uint64_t{1} << 26;

/// f(0, n) = base(n); f(l, n) = m^n · f(l-1, n) · f(l-1, n·m^n). Exact.
/// Throws std::overflow_error when an intermediate exceeds kMaxBoundBits.
BigInt memory_bound(unsigned l, const BigInt& n, const BigInt& m, const BaseSizeFn& base);

/// (2·l·k)^((k·v)^(k·v)). Throws ValidationError for zero arguments and
/// std::overflow_error for results beyond kMaxBoundBits.
BigInt switching_bound(const BigInt& l, const BigInt& k, const BigInt& v);

/// base^exponent with the size guard.
BigInt checked_pow(const BigInt& base, const BigInt& exponent);

}  // namespace regcomb
