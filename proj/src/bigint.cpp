#include "jumpcode/bigint.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace jumpcode {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

BigUint::BigUint(u64 v) {
    if (v) words_.push_back(v);
}

void BigUint::trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

int BigUint::cmp(const BigUint& o) const {
    if (words_.size() != o.words_.size())
        return words_.size() < o.words_.size() ? -1 : 1;
    for (std::size_t i = words_.size(); i-- > 0;) {
        if (words_[i] != o.words_[i]) return words_[i] < o.words_[i] ? -1 : 1;
    }
    return 0;
}

BigUint& BigUint::add(const BigUint& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    u64 carry = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        u128 s = (u128)words_[i] + carry + (i < o.words_.size() ? o.words_[i] : 0);
        words_[i] = (u64)s;
        carry = (u64)(s >> 64);
    }
    if (carry) words_.push_back(carry);
    return *this;
}

BigUint& BigUint::sub(const BigUint& o) {
    assert(cmp(o) >= 0);
    u64 borrow = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        u128 rhs = (u128)(i < o.words_.size() ? o.words_[i] : 0) + borrow;
        u128 lhs = (u128)words_[i];
        if (lhs >= rhs) {
            words_[i] = (u64)(lhs - rhs);
            borrow = 0;
        } else {
            words_[i] = (u64)((((u128)1 << 64) + lhs) - rhs);
            borrow = 1;
        }
    }
    assert(borrow == 0);
    trim();
    return *this;
}

BigUint& BigUint::mul_u64(u64 m) {
    if (m == 0 || is_zero()) {
        words_.clear();
        return *this;
    }
    u64 carry = 0;
    for (auto& w : words_) {
        u128 p = (u128)w * m + carry;
        w = (u64)p;
        carry = (u64)(p >> 64);
    }
    if (carry) words_.push_back(carry);
    return *this;
}

u64 BigUint::divmod_u64(u64 d) {
    if (d == 0) throw std::invalid_argument("BigUint: divide by zero");
    u64 rem = 0;
    for (std::size_t i = words_.size(); i-- > 0;) {
        u128 cur = ((u128)rem << 64) | words_[i];
        words_[i] = (u64)(cur / d);
        rem = (u64)(cur % d);
    }
    trim();
    return rem;
}

BigUint BigUint::binomial(u64 n, u64 k) {
    if (k > n) return BigUint();
    if (k > n - k) k = n - k;
    BigUint acc(1);
    for (u64 i = 1; i <= k; ++i) {
        acc.mul_u64(n - k + i);
        u64 r = acc.divmod_u64(i);  // product of i consecutive integers is divisible by i!
        assert(r == 0);
        (void)r;
    }
    return acc;
}

u64 BigUint::bit_length() const {
    if (words_.empty()) return 0;
    u64 top = words_.back();
    u64 bits = 0;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return 64 * (words_.size() - 1) + bits;
}

bool BigUint::bit(u64 i) const {
    std::size_t w = i / 64;
    if (w >= words_.size()) return false;
    return (words_[w] >> (i % 64)) & 1u;
}

double BigUint::log() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    u64 bl = bit_length();
    if (bl <= 63) return std::log((double)words_[0]);
    // Top 53 bits as an integer, rest as a power-of-two shift.
    u64 shift = bl - 53;
    u64 top = 0;
    for (int b = 52; b >= 0; --b) top = (top << 1) | (bit(shift + b) ? 1u : 0u);
    return std::log((double)top) + (double)shift * std::log(2.0);
}

u64 BigUint::to_u64_saturating() const {
    if (words_.empty()) return 0;
    if (words_.size() > 1) return UINT64_MAX;
    return words_[0];
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    BigUint tmp = *this;
    std::string out;
    while (!tmp.is_zero()) {
        u64 r = tmp.divmod_u64(10);
        out.push_back(char('0' + r));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace jumpcode
