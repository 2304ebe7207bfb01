#include "ekrf/setcore.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace ekrf {

GroundParams::GroundParams(int n_, int k_) : n(n_), k(k_) {
    if (n < 1 || n > kMaxGroundSize)
        throw ParameterError("ground set size n=" + std::to_string(n) + " outside 1..128");
    if (k < 1 || k > n)
        throw ParameterError("set size k=" + std::to_string(k) + " outside 1..n");
}

// ---------------------------------------------------------------------------
// KSet

KSet::KSet(int n, std::uint64_t lo, std::uint64_t hi) : n_(n), lo_(lo), hi_(hi) {
    if (n < 0 || n > kMaxGroundSize)
        throw ParameterError("ground set size outside 0..128");
    if (n < 64) {
        if (hi != 0 || (lo >> n) != 0) throw ParameterError("bits beyond ground set");
    } else if (n < 128 && (hi >> (n - 64)) != 0) {
        throw ParameterError("bits beyond ground set");
    }
}

KSet::KSet(int n, std::span<const int> elements) : n_(n) {
    if (n < 0 || n > kMaxGroundSize)
        throw ParameterError("ground set size outside 0..128");
    for (int e : elements) {
        if (e < 1 || e > n)
            throw ParameterError("element " + std::to_string(e) + " outside 1.." + std::to_string(n));
        const int bit = e - 1;
        if (bit < 64)
            lo_ |= std::uint64_t{1} << bit;
        else
            hi_ |= std::uint64_t{1} << (bit - 64);
    }
}

bool KSet::contains(int element) const noexcept {
    if (element < 1 || element > n_) return false;
    const int bit = element - 1;
    return bit < 64 ? ((lo_ >> bit) & 1U) != 0 : ((hi_ >> (bit - 64)) & 1U) != 0;
}

std::vector<int> KSet::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t w = lo_; w; w &= w - 1) out.push_back(std::countr_zero(w) + 1);
    for (std::uint64_t w = hi_; w; w &= w - 1) out.push_back(std::countr_zero(w) + 65);
    return out;
}

int KSet::min_element() const noexcept {
    if (lo_) return std::countr_zero(lo_) + 1;
    if (hi_) return std::countr_zero(hi_) + 65;
    return 0;
}

std::string KSet::to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first) s += ',';
        s += std::to_string(e);
        first = false;
    }
    return s + "}";
}

std::strong_ordering operator<=>(const KSet& a, const KSet& b) noexcept {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    const std::uint64_t dlo = a.lo_ ^ b.lo_;
    const std::uint64_t dhi = a.hi_ ^ b.hi_;
    if (dlo == 0 && dhi == 0) return std::strong_ordering::equal;

    // First element where the sorted lists diverge. The side holding it is
    // smaller unless the other side has run out of elements (prefix).
    int bit;
    bool a_has;
    if (dlo) {
        bit = std::countr_zero(dlo);
        a_has = ((a.lo_ >> bit) & 1U) != 0;
    } else {
        bit = 64 + std::countr_zero(dhi);
        a_has = ((a.hi_ >> (bit - 64)) & 1U) != 0;
    }
    const KSet& other = a_has ? b : a;
    bool other_has_later;
    if (bit < 63) {
        const std::uint64_t above = ~((std::uint64_t{2} << bit) - 1);
        other_has_later = (other.lo_ & above) != 0 || other.hi_ != 0;
    } else if (bit == 63) {
        other_has_later = other.hi_ != 0;
    } else if (bit < 127) {
        const std::uint64_t above = ~((std::uint64_t{2} << (bit - 64)) - 1);
        other_has_later = (other.hi_ & above) != 0;
    } else {
        other_has_later = false;
    }
    const bool a_less = a_has == other_has_later;
    return a_less ? std::strong_ordering::less : std::strong_ordering::greater;
}

int intersection_size(const KSet& a, const KSet& b) {
    if (a.ground() != b.ground())
        throw ParameterError("sets over different ground sets (n=" + std::to_string(a.ground()) +
                             " vs n=" + std::to_string(b.ground()) + ")");
    return overlap(a, b);
}

// ---------------------------------------------------------------------------
// Family

Family::Family(GroundParams params, std::vector<KSet> members)
    : params_(params), members_(std::move(members)) {
    for (const KSet& s : members_) {
        if (s.ground() != params_.n)
            throw ParameterError("member " + s.to_string() + " is over n=" + std::to_string(s.ground()) +
                                 ", expected n=" + std::to_string(params_.n));
        if (s.size() != params_.k)
            throw ParameterError("member " + s.to_string() + " has " + std::to_string(s.size()) +
                                 " elements, expected k=" + std::to_string(params_.k));
    }
    std::sort(members_.begin(), members_.end());
    auto dup = std::adjacent_find(members_.begin(), members_.end());
    if (dup != members_.end()) throw ParameterError("duplicate member " + dup->to_string());
}

Family Family::subfamily(std::span<const std::size_t> indices) const {
    std::vector<KSet> picked;
    picked.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= members_.size()) throw ParameterError("member index out of range");
        picked.push_back(members_[i]);
    }
    return Family(params_, std::move(picked));
}

KSet Family::union_of() const {
    KSet u(params_.n, 0, 0);
    for (const KSet& s : members_) u = u | s;
    return u;
}

// ---------------------------------------------------------------------------
// Binomials and enumeration

BigInt binomial(long a, long b) {
    if (a < 0) throw ParameterError("binomial: negative upper argument");
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    BigInt r = 1;
    for (long i = 1; i <= b; ++i) {
        r *= a - b + i;
        r /= i;
    }
    return r;
}

std::uint64_t binomial_u64(long a, long b) {
    const BigInt v = binomial(a, b);
    if (v > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    return v.convert_to<std::uint64_t>();
}

std::vector<KSet> enumerate_ksets(const GroundParams& params, std::uint64_t cap) {
    const BigInt total = binomial(params.n, params.k);
    if (total > cap)
        throw CapExceeded("C(" + std::to_string(params.n) + "," + std::to_string(params.k) + ") = " +
                              total.str() + " exceeds the enumeration cap " + std::to_string(cap),
                          total);
    std::vector<KSet> out;
    out.reserve(total.convert_to<std::size_t>());
    std::vector<int> comb(static_cast<std::size_t>(params.k));
    for (int i = 0; i < params.k; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
    const int k = params.k;
    const int n = params.n;
    while (true) {
        out.emplace_back(n, std::span<const int>(comb));
        int i = k - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
        if (i < 0) break;
        ++comb[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_int(std::string_view s, long& out) {
    s = trim(s);
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

// Header "# n=4 k=2 count=2"; the leading '#' and the count are optional.
void parse_header(std::string_view line, long& n, long& k, long& count) {
    line = trim(line);
    if (!line.empty() && line.front() == '#') line.remove_prefix(1);
    n = k = count = -1;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("malformed header token '" + tok + "'", 1);
        const std::string key = tok.substr(0, eq);
        long value = 0;
        if (!parse_int(std::string_view(tok).substr(eq + 1), value))
            throw ParseError("malformed header value in '" + tok + "'", 1);
        if (key == "n")
            n = value;
        else if (key == "k")
            k = value;
        else if (key == "count")
            count = value;
        else
            throw ParseError("unknown header key '" + key + "'", 1);
    }
    if (n < 0 || k < 0) throw ParseError("header must give n and k", 1);
}

GroundParams checked_params(long n, long k, std::size_t line) {
    try {
        return GroundParams(static_cast<int>(n), static_cast<int>(k));
    } catch (const ParameterError& e) {
        throw ParseError(e.what(), line);
    }
}

Family build_family(GroundParams params, std::vector<KSet> members,
                    const std::vector<std::size_t>& lines) {
    std::vector<std::size_t> order(members.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return members[a] < members[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (members[order[i]] == members[order[i - 1]])
            throw ParseError("duplicate member " + members[order[i]].to_string() + " (first seen on line " +
                                 std::to_string(std::min(lines[order[i]], lines[order[i - 1]])) + ")",
                             std::max(lines[order[i]], lines[order[i - 1]]));
    }
    return Family(params, std::move(members));
}

KSet parse_member(const std::vector<long>& values, const GroundParams& params, std::size_t line) {
    if (static_cast<long>(values.size()) != params.k)
        throw ParseError("expected " + std::to_string(params.k) + " elements, found " +
                             std::to_string(values.size()),
                         line);
    std::vector<int> elems;
    elems.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 1 || values[i] > params.n)
            throw ParseError("element " + std::to_string(values[i]) + " out of range 1.." +
                                 std::to_string(params.n),
                             line);
        if (i > 0 && values[i] <= values[i - 1])
            throw ParseError("elements must be strictly increasing", line);
        elems.push_back(static_cast<int>(values[i]));
    }
    return KSet(params.n, elems);
}

}  // namespace

Family parse_family(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool have_header = false;
    GroundParams params;
    long declared_count = -1;
    std::vector<KSet> members;
    std::vector<std::size_t> lines;

    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const std::string_view raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        const std::string_view line = trim(raw);
        if (!have_header) {
            if (line.empty()) throw ParseError("missing header", line_no);
            long n, k;
            parse_header(line, n, k, declared_count);
            params = checked_params(n, k, line_no);
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        std::vector<long> values;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            const auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            long v;
            if (!parse_int(field, v)) throw ParseError("malformed set line '" + std::string(line) + "'", line_no);
            values.push_back(v);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        members.push_back(parse_member(values, params, line_no));
        lines.push_back(line_no);
    }
    if (!have_header) throw ParseError("missing header", 1);
    if (declared_count >= 0 && static_cast<std::size_t>(declared_count) != members.size())
        throw ParseError("header declares count=" + std::to_string(declared_count) + " but " +
                             std::to_string(members.size()) + " sets follow",
                         1);
    return build_family(params, std::move(members), lines);
}

std::string serialize_family(const Family& family) {
    std::string out = "# n=" + std::to_string(family.params().n) + " k=" + std::to_string(family.params().k) +
                      " count=" + std::to_string(family.size()) + "\n";
    for (const KSet& s : family) {
        bool first = true;
        for (int e : s.elements()) {
            if (!first) out += ',';
            out += std::to_string(e);
            first = false;
        }
        out += '\n';
    }
    return out;
}

Family parse_family_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("members"))
        throw ParseError("JSON family needs fields n, k, members", 0);
    if (!j["n"].is_number_integer() || !j["k"].is_number_integer() || !j["members"].is_array())
        throw ParseError("JSON family fields have wrong types", 0);
    const GroundParams params = checked_params(j["n"].get<long>(), j["k"].get<long>(), 0);
    std::vector<KSet> members;
    std::vector<std::size_t> entries;
    std::size_t idx = 0;
    for (const auto& m : j["members"]) {
        ++idx;
        if (!m.is_array()) throw ParseError("member " + std::to_string(idx) + " is not an array", 0);
        std::vector<long> values;
        for (const auto& v : m) {
            if (!v.is_number_integer()) throw ParseError("member " + std::to_string(idx) + " has a non-integer", 0);
            values.push_back(v.get<long>());
        }
        try {
            members.push_back(parse_member(values, params, idx));
        } catch (const ParseError& e) {
            throw ParseError(std::string("member entry ") + e.what(), 0);
        }
        entries.push_back(idx);
    }
    return build_family(params, std::move(members), entries);
}

std::string serialize_family_json(const Family& family) {
    nlohmann::json j;
    j["n"] = family.params().n;
    j["k"] = family.params().k;
    j["members"] = nlohmann::json::array();
    for (const KSet& s : family) j["members"].push_back(s.elements());
    return j.dump() + "\n";
}

namespace {
bool has_json_extension(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}
}  // namespace

Family load_family(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return has_json_extension(path) ? parse_family_json(buf.str()) : parse_family(buf.str());
}

void save_family(const Family& family, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << (has_json_extension(path) ? serialize_family_json(family) : serialize_family(family));
}

}  // namespace ekrf
