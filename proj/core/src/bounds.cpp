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

#include "regcomb/bounds.hpp"

#include <stdexcept>

#include "regcomb/common.hpp"

namespace regcomb {

BigInt checked_pow(const BigInt& base, const BigInt& exponent) {
  if (exponent < 0) throw ValidationError("negative exponent");
  if (base == 0) return exponent == 0 ? BigInt(1) : BigInt(0);
  if (base == 1 || exponent == 0) return 1;
  const auto bits_per_factor = mpz_sizeinbase(base.get_mpz_t(), 2);
  if (!exponent.fits_ulong_p() ||
      BigInt(exponent) * (bits_per_factor - 1) > BigInt(static_cast<unsigned long>(kMaxBoundBits)))
    throw std::overflow_error("bound too large to evaluate exactly (" + base.get_str() + "^" +
                              (exponent.fits_ulong_p() ? exponent.get_str() : std::string("<huge>")) + ")");
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
  return out;
}

BigInt memory_bound(unsigned l, const BigInt& n, const BigInt& m, const BaseSizeFn& base) {
  if (n < 0 || m < 0) throw ValidationError("memory_bound needs non-negative n and m");
  if (l == 0) return base(n);
  const BigInt grow = checked_pow(m, n);
  return grow * memory_bound(l - 1, n, m, base) * memory_bound(l - 1, n * grow, m, base);
}

BigInt switching_bound(const BigInt& l, const BigInt& k, const BigInt& v) {
  if (l <= 0 || k <= 0 || v <= 0) throw ValidationError("switching_bound needs positive arguments");
  const BigInt kv = k * v;
  return checked_pow(2 * l * k, checked_pow(kv, kv));
}

}  // namespace regcomb
