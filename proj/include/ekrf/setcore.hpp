#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ekrf {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxGroundSize = 128;
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Raised when arguments violate a documented precondition or hypothesis.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a requested enumeration would exceed its configured cap.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, BigInt required)
        : std::runtime_error(what), required_(std::move(required)) {}

    const BigInt& required() const noexcept { return required_; }

private:
    BigInt required_;
};

/// Family file parse failure; `line()` is 1-based, 0 when not line-specific.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct GroundParams {
    int n = 0;
    int k = 0;

    GroundParams() = default;
    GroundParams(int n_, int k_);

    friend bool operator==(const GroundParams&, const GroundParams&) = default;
};

/// A subset of [n], elements 1..n stored at bits 0..n-1 over two words.
/// The set's size is not fixed by the type; families enforce uniformity.
class KSet {
public:
    KSet() = default;
    KSet(int n, std::uint64_t lo, std::uint64_t hi);
    KSet(int n, std::span<const int> elements);
    KSet(int n, std::initializer_list<int> elements)
        : KSet(n, std::span<const int>(elements.begin(), elements.size())) {}

    int ground() const noexcept { return n_; }
    int size() const noexcept { return std::popcount(lo_) + std::popcount(hi_); }
    bool contains(int element) const noexcept;
    std::vector<int> elements() const;

    std::uint64_t lo() const noexcept { return lo_; }
    std::uint64_t hi() const noexcept { return hi_; }

    /// Smallest element, 0 when empty.
    int min_element() const noexcept;

    bool is_subset_of(const KSet& other) const noexcept {
        return (lo_ & ~other.lo_) == 0 && (hi_ & ~other.hi_) == 0;
    }
    bool disjoint_from(const KSet& other) const noexcept {
        return (lo_ & other.lo_) == 0 && (hi_ & other.hi_) == 0;
    }

    KSet operator&(const KSet& o) const noexcept { return {n_, lo_ & o.lo_, hi_ & o.hi_, raw}; }
    KSet operator|(const KSet& o) const noexcept { return {n_, lo_ | o.lo_, hi_ | o.hi_, raw}; }
    /// Set difference.
    KSet operator-(const KSet& o) const noexcept { return {n_, lo_ & ~o.lo_, hi_ & ~o.hi_, raw}; }

    std::string to_string() const;

    friend bool operator==(const KSet& a, const KSet& b) noexcept {
        return a.n_ == b.n_ && a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }
    /// Lexicographic order of the ascending element lists.
    friend std::strong_ordering operator<=>(const KSet& a, const KSet& b) noexcept;

private:
    struct RawTag {};
    static constexpr RawTag raw{};
    KSet(int n, std::uint64_t lo, std::uint64_t hi, RawTag) noexcept : n_(n), lo_(lo), hi_(hi) {}

    int n_ = 0;
    std::uint64_t lo_ = 0;
    std::uint64_t hi_ = 0;
};

/// |a ∩ b| without ground-set validation; for hot loops.
inline int overlap(const KSet& a, const KSet& b) noexcept {
    return std::popcount(a.lo() & b.lo()) + std::popcount(a.hi() & b.hi());
}

/// |a ∩ b|. Throws ParameterError when the ground sets differ.
int intersection_size(const KSet& a, const KSet& b);

/// A duplicate-free, canonically sorted list of k-sets over one ground set.
class Family {
public:
    Family() = default;
    explicit Family(GroundParams params) : params_(params) {}
    /// Validates size and range of each member, sorts, rejects duplicates.
    Family(GroundParams params, std::vector<KSet> members);

    const GroundParams& params() const noexcept { return params_; }
    const std::vector<KSet>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const KSet& operator[](std::size_t i) const { return members_[i]; }

    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    /// Members at the given indices, in canonical order.
    Family subfamily(std::span<const std::size_t> indices) const;

    /// Union of all members.
    KSet union_of() const;

    friend bool operator==(const Family&, const Family&) = default;

private:
    GroundParams params_;
    std::vector<KSet> members_;
};

/// C(a, b); zero when b < 0 or b > a.
BigInt binomial(long a, long b);

/// Binomial saturated to uint64 (returns UINT64_MAX on overflow).
std::uint64_t binomial_u64(long a, long b);

/// All k-subsets of [n] in ascending lexicographic order.
std::vector<KSet> enumerate_ksets(const GroundParams& params,
                                  std::uint64_t cap = kDefaultEnumerationCap);

/// Text family format: a `# n=.. k=.. count=..` header then one set per line.
Family parse_family(std::string_view text);
std::string serialize_family(const Family& family);

Family parse_family_json(std::string_view text);
std::string serialize_family_json(const Family& family);

/// Dispatches on extension: `.json` for JSON, anything else for text.
Family load_family(const std::string& path);
void save_family(const Family& family, const std::string& path);

}  // namespace ekrf
