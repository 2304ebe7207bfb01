#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ekrf::detail {

// Fixed-length dynamic bitset over vertex indices.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t bits() const noexcept { return bits_; }

    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const noexcept { return ((words_[i >> 6] >> (i & 63)) & 1U) != 0; }

    void set_all() noexcept {
        for (auto& w : words_) w = ~std::uint64_t{0};
        trim();
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const noexcept {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    Bitset& operator&=(const Bitset& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    /// Clears every bit at index <= i.
    void clear_through(std::size_t i) noexcept {
        const std::size_t w = i >> 6;
        for (std::size_t j = 0; j < w; ++j) words_[j] = 0;
        const unsigned b = static_cast<unsigned>(i & 63);
        words_[w] &= b == 63 ? 0 : ~((std::uint64_t{2} << b) - 1);
    }
    bool intersects(const Bitset& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    /// Index of the first set bit at or after `from`, or bits() if none.
    std::size_t next(std::size_t from) const noexcept {
        if (from >= bits_) return bits_;
        std::size_t w = from >> 6;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (cur) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
            if (++w >= words_.size()) return bits_;
            cur = words_[w];
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (std::uint64_t x = words_[w]; x; x &= x - 1) f((w << 6) + static_cast<std::size_t>(std::countr_zero(x)));
    }

private:
    void trim() noexcept {
        if (bits_ & 63) words_.back() &= (std::uint64_t{1} << (bits_ & 63)) - 1;
    }

    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace ekrf::detail
