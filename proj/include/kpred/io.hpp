#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kpred/cascade.hpp"
#include "kpred/core.hpp"
#include "kpred/grouped_merge.hpp"
#include "kpred/index.hpp"

namespace kpred {

/// Text instance file: one array per line, base-10 values separated by single
/// spaces, blank line = empty array. Raised with a 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Malformed or truncated index file.
class IndexFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline ArrayCollection<std::int64_t> parse_instance(std::istream& in) {
    ArrayCollection<std::int64_t> c;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::int64_t> values;
        if (!line.empty()) {
            std::istringstream tokens(line);
            std::string token;
            while (tokens >> token) {
                std::int64_t v = 0;
                std::size_t used = 0;
                try {
                    v = std::stoll(token, &used);
                } catch (const std::exception&) {
                    throw ParseError(line_no, "invalid value '" + token + "'");
                }
                if (used != token.size()) {
                    throw ParseError(line_no, "invalid value '" + token + "'");
                }
                values.push_back(v);
            }
            if (!std::is_sorted(values.begin(), values.end())) {
                throw ParseError(line_no, "values are not in non-decreasing order");
            }
        }
        c.arrays.push_back(std::move(values));
    }
    if (c.arrays.empty()) throw ParseError(1, "instance file is empty");
    return c;
}

inline ArrayCollection<std::int64_t> parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
    return parse_instance(in);
}

namespace detail {

inline constexpr std::string_view kIndexMagic = "CPRD1";

inline void put_u8(std::ostream& out, std::uint8_t v) {
    out.put(static_cast<char>(v));
}

inline void put_u32(std::ostream& out, std::uint32_t v) {
    std::array<char, 4> b{};
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b.data(), b.size());
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b.data(), b.size());
}

inline void put_i64(std::ostream& out, std::int64_t v) {
    put_u64(out, static_cast<std::uint64_t>(v));
}

inline std::uint8_t get_u8(std::istream& in) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw IndexFormatError("truncated index file");
    return static_cast<std::uint8_t>(c);
}

inline std::uint32_t get_u32(std::istream& in) {
    std::array<char, 4> b{};
    if (!in.read(b.data(), b.size())) throw IndexFormatError("truncated index file");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
}

inline std::uint64_t get_u64(std::istream& in) {
    std::array<char, 8> b{};
    if (!in.read(b.data(), b.size())) throw IndexFormatError("truncated index file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
}

inline std::int64_t get_i64(std::istream& in) {
    return static_cast<std::int64_t>(get_u64(in));
}

// npos travels as all-ones regardless of platform size_t width.
inline constexpr std::uint64_t kNposWire = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t size_to_wire(std::size_t v) {
    return v == npos ? kNposWire : static_cast<std::uint64_t>(v);
}

inline std::size_t size_from_wire(std::uint64_t v) {
    return v == kNposWire ? npos : static_cast<std::size_t>(v);
}

}  // namespace detail

/// Versioned little-endian layout: magic "CPRD1", the counts, the plan, then
/// every merged group and augmented list as flat arrays. Loading reproduces
/// query behavior exactly; build stats are runtime information and stay out.
inline void save_index(const PredIndex<std::int64_t>& index, std::ostream& out) {
    using namespace detail;
    out.write(kIndexMagic.data(), static_cast<std::streamsize>(kIndexMagic.size()));
    put_u8(out, 8);  // value width in bytes
    put_u64(out, index.n);
    put_u64(out, index.k);
    put_u64(out, index.plan.group_size);
    put_u64(out, index.plan.group_count());
    for (const GroupBounds& g : index.plan.groups) {
        put_u64(out, g.begin);
        put_u64(out, g.end);
    }
    for (const auto& group : index.chain.groups) {
        put_u64(out, group.size());
        for (const auto& v : group.values) put_i64(out, v);
        for (const auto& s : group.sources) put_u32(out, static_cast<std::uint32_t>(s.array));
        for (const auto& s : group.sources) put_u64(out, s.pos);
    }
    for (const auto& list : index.chain.lists) {
        put_u64(out, list.size());
        put_u64(out, list.own_count);
        for (const auto& e : list.entries) put_i64(out, e.value);
        for (const auto& e : list.entries) put_u8(out, static_cast<std::uint8_t>(e.kind));
        for (const auto& e : list.entries) put_u64(out, size_to_wire(e.own_bridge));
        for (const auto& e : list.entries) put_u64(out, size_to_wire(e.down_bridge));
        for (const auto& e : list.entries) put_u64(out, size_to_wire(e.source.array));
        for (const auto& e : list.entries) put_u64(out, size_to_wire(e.source.pos));
    }
    if (!out) throw std::ios_base::failure("write failed");
}

inline PredIndex<std::int64_t> load_index(std::istream& in) {
    using namespace detail;
    std::array<char, 5> magic{};
    if (!in.read(magic.data(), magic.size()) ||
        std::string_view(magic.data(), magic.size()) != kIndexMagic) {
        throw IndexFormatError("bad magic; not an index file");
    }
    if (get_u8(in) != 8) throw IndexFormatError("unsupported value width");

    PredIndex<std::int64_t> index;
    index.n = static_cast<std::size_t>(get_u64(in));
    index.k = static_cast<std::size_t>(get_u64(in));
    index.plan.group_size = static_cast<std::size_t>(get_u64(in));
    const std::size_t group_count = static_cast<std::size_t>(get_u64(in));
    index.plan.groups.resize(group_count);
    for (auto& g : index.plan.groups) {
        g.begin = static_cast<std::size_t>(get_u64(in));
        g.end = static_cast<std::size_t>(get_u64(in));
    }
    index.chain.groups.resize(group_count);
    for (auto& group : index.chain.groups) {
        const std::size_t m = static_cast<std::size_t>(get_u64(in));
        group.values.resize(m);
        group.sources.resize(m);
        for (auto& v : group.values) v = get_i64(in);
        for (auto& s : group.sources) s.array = static_cast<std::size_t>(get_u32(in));
        for (auto& s : group.sources) s.pos = static_cast<std::size_t>(get_u64(in));
    }
    index.chain.lists.resize(group_count);
    for (auto& list : index.chain.lists) {
        const std::size_t m = static_cast<std::size_t>(get_u64(in));
        list.own_count = static_cast<std::size_t>(get_u64(in));
        list.entries.resize(m);
        for (auto& e : list.entries) e.value = get_i64(in);
        for (auto& e : list.entries) {
            const std::uint8_t kind = get_u8(in);
            if (kind > 1) throw IndexFormatError("bad entry kind");
            e.kind = static_cast<EntryKind>(kind);
        }
        for (auto& e : list.entries) e.own_bridge = size_from_wire(get_u64(in));
        for (auto& e : list.entries) e.down_bridge = size_from_wire(get_u64(in));
        for (auto& e : list.entries) e.source.array = size_from_wire(get_u64(in));
        for (auto& e : list.entries) e.source.pos = size_from_wire(get_u64(in));
    }
    return index;
}

inline void save_index_file(const PredIndex<std::int64_t>& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    save_index(index, out);
    if (!out.flush()) throw std::ios_base::failure("write to '" + path + "' failed");
}

inline PredIndex<std::int64_t> load_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
    return load_index(in);
}

}  // namespace kpred
