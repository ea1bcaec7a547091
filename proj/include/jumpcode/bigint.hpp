#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jumpcode {

// Unsigned big integer, little-endian 64-bit words, no trailing zero words.
// Covers exactly what the codebooks need: sizes and ranks of combinatorial
// families up to a few hundred bits, with exact small-divisor division.
class BigUint {
  public:
    BigUint() = default;
    explicit BigUint(std::uint64_t v);

    static BigUint binomial(std::uint64_t n, std::uint64_t k);

    bool is_zero() const { return words_.empty(); }
    // -1 / 0 / +1
    int cmp(const BigUint& o) const;
    bool operator==(const BigUint& o) const { return cmp(o) == 0; }
    bool operator<(const BigUint& o) const { return cmp(o) < 0; }
    bool operator<=(const BigUint& o) const { return cmp(o) <= 0; }

    BigUint& add(const BigUint& o);
    // Requires *this >= o.
    BigUint& sub(const BigUint& o);
    BigUint& mul_u64(std::uint64_t m);
    // Divides in place, returns the remainder. d != 0.
    std::uint64_t divmod_u64(std::uint64_t d);

    // 0 has bit_length 0.
    std::uint64_t bit_length() const;
    bool bit(std::uint64_t i) const;

    // Natural log; 0 maps to -inf. Relative error ~1e-15 (top 53 bits + shift).
    double log() const;
    // Saturating conversion.
    std::uint64_t to_u64_saturating() const;
    bool fits_u64() const { return words_.size() <= 1; }

    std::string to_string() const;  // decimal

  private:
    std::vector<std::uint64_t> words_;
    void trim();
};

}  // namespace jumpcode
