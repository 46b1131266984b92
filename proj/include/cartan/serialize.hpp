#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "families.hpp"
#include "lie.hpp"
#include "linalg.hpp"

namespace cartan {

// FNV-1a over the canonical file bytes; every exported document ends with
// its own hash line so recipients can spot truncation or tampering.
inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[size_t(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

namespace detail {

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    // Returns the next line without its terminator; nullopt at end.
    std::optional<std::string_view> next() {
        if (pos_ >= text_.size()) return std::nullopt;
        size_t nl = text_.find('\n', pos_);
        std::string_view line;
        if (nl == std::string_view::npos) {
            line = text_.substr(pos_);
            pos_ = text_.size();
        } else {
            line = text_.substr(pos_, nl - pos_);
            pos_ = nl + 1;
        }
        ++lineno_;
        return line;
    }

    int lineno() const { return lineno_; }
    size_t consumed() const { return pos_; }

private:
    std::string_view text_;
    size_t pos_ = 0;
    int lineno_ = 0;
};

[[noreturn]] inline void fail(int lineno, const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + what);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline long long parse_int(std::string_view f, int lineno, const char* what) {
    if (f.empty()) fail(lineno, std::string("empty ") + what);
    long long v = 0;
    size_t i = 0;
    bool neg = false;
    if (f[0] == '-') {
        neg = true;
        i = 1;
        if (f.size() == 1) fail(lineno, std::string("bad ") + what);
    }
    for (; i < f.size(); ++i) {
        if (f[i] < '0' || f[i] > '9')
            fail(lineno, std::string("bad ") + what + " '" + std::string(f) + "'");
        v = v * 10 + (f[i] - '0');
        if (v > (1ll << 62)) fail(lineno, std::string("oversized ") + what);
    }
    return neg ? -v : v;
}

inline uint64_t parse_u64(std::string_view f, int lineno, const char* what) {
    long long v = parse_int(f, lineno, what);
    if (v < 0) fail(lineno, std::string(what) + " must be nonnegative");
    return uint64_t(v);
}

inline uint64_t parse_hex64(std::string_view f, int lineno) {
    if (f.size() != 16) fail(lineno, "hash must be 16 hex digits");
    uint64_t v = 0;
    for (char c : f) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else { fail(lineno, "bad hex digit in hash"); }
        v = (v << 4) | uint64_t(d);
    }
    return v;
}

// Shared tail: "hash fnv1a64 <hex>" must cover every byte before its line.
inline void check_hash_line(std::string_view whole, LineReader& rd,
                            std::string_view line) {
    std::vector<std::string_view> f = split_fields(line);
    if (f.size() != 3 || f[0] != "hash" || f[1] != "fnv1a64")
        fail(rd.lineno(), "expected 'hash fnv1a64 <hex>'");
    size_t body_end = rd.consumed() >= line.size() + 1
                          ? rd.consumed() - line.size() - 1
                          : 0;
    // when the file lacks a trailing newline the line itself ends the text
    if (rd.consumed() == whole.size() && !whole.ends_with("\n"))
        body_end = whole.size() - line.size();
    uint64_t want = parse_hex64(f[2], rd.lineno());
    uint64_t got = fnv1a64(whole.substr(0, body_end));
    if (want != got)
        fail(rd.lineno(), "hash mismatch: file says " + hex64(want) +
                              ", content hashes to " + hex64(got));
    if (rd.next().has_value()) fail(rd.lineno(), "content after hash line");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// algebra files
//
// cartan-algebra-file v1
// p <p>
// dim <d>
// label <i> <text>            (d lines, i ascending; text may contain spaces)
// brackets <count>
// b <i> <j> <k> <c>           (count lines, i < j, c in 1..p-1, lex (i,j,k))
// hash fnv1a64 <16 hex>       (over every byte above this line)
// ---------------------------------------------------------------------------

inline std::string export_algebra(const LieAlgebra& L) {
    std::ostringstream os;
    os << "cartan-algebra-file v1\n";
    os << "p " << L.p() << "\n";
    os << "dim " << L.dim() << "\n";
    for (int i = 0; i < L.dim(); ++i)
        os << "label " << i << " " << L.labels()[size_t(i)] << "\n";
    std::vector<std::array<int, 4>> rows;
    for (int i = 0; i < L.dim(); ++i)
        for (int j = i + 1; j < L.dim(); ++j)
            for (const auto& [k, c] : L.bracket_terms(i, j))
                rows.push_back({i, j, k, int(c)});
    os << "brackets " << rows.size() << "\n";
    for (const auto& r : rows)
        os << "b " << r[0] << " " << r[1] << " " << r[2] << " " << r[3] << "\n";
    std::string body = os.str();
    return body + "hash fnv1a64 " + hex64(fnv1a64(body)) + "\n";
}

inline LieAlgebra import_algebra(std::string_view text) {
    using namespace detail;
    LineReader rd(text);
    auto expect_line = [&](const char* what) -> std::string_view {
        std::optional<std::string_view> l = rd.next();
        if (!l) fail(rd.lineno() + 1, std::string("missing ") + what);
        return *l;
    };

    if (expect_line("header") != "cartan-algebra-file v1")
        fail(rd.lineno(), "expected header 'cartan-algebra-file v1'");

    std::vector<std::string_view> f = split_fields(expect_line("p line"));
    if (f.size() != 2 || f[0] != "p") fail(rd.lineno(), "expected 'p <p>'");
    int p = int(parse_int(f[1], rd.lineno(), "p"));
    if (!fp_is_prime(p) || p >= 16) fail(rd.lineno(), "p must be a prime below 16");

    f = split_fields(expect_line("dim line"));
    if (f.size() != 2 || f[0] != "dim") fail(rd.lineno(), "expected 'dim <d>'");
    int dim = int(parse_int(f[1], rd.lineno(), "dim"));
    if (dim < 0 || dim > 4096) fail(rd.lineno(), "dim out of range");

    std::vector<std::string> labels;
    labels.reserve(size_t(dim));
    for (int i = 0; i < dim; ++i) {
        std::string_view line = expect_line("label line");
        std::vector<std::string_view> lf = split_fields(line);
        if (lf.size() < 3 || lf[0] != "label")
            fail(rd.lineno(), "expected 'label <i> <text>'");
        if (parse_int(lf[1], rd.lineno(), "label index") != i)
            fail(rd.lineno(), "label index out of order");
        size_t at = line.find(lf[1]);
        at = line.find(' ', at);
        while (at < line.size() && line[at] == ' ') ++at;
        labels.emplace_back(line.substr(at));
    }

    f = split_fields(expect_line("brackets line"));
    if (f.size() != 2 || f[0] != "brackets")
        fail(rd.lineno(), "expected 'brackets <count>'");
    long long count = parse_int(f[1], rd.lineno(), "bracket count");
    if (count < 0) fail(rd.lineno(), "negative bracket count");

    LieAlgebra L(p, dim, std::move(labels));
    std::vector<std::vector<std::pair<int, fp_t>>> acc(
        size_t(dim) * (dim > 0 ? dim - 1 : 0) / 2);
    int prev_i = -1, prev_j = -1, prev_k = -1;
    for (long long t = 0; t < count; ++t) {
        f = split_fields(expect_line("bracket line"));
        if (f.size() != 5 || f[0] != "b")
            fail(rd.lineno(), "expected 'b <i> <j> <k> <c>'");
        int i = int(parse_int(f[1], rd.lineno(), "i"));
        int j = int(parse_int(f[2], rd.lineno(), "j"));
        int k = int(parse_int(f[3], rd.lineno(), "k"));
        long long c = parse_int(f[4], rd.lineno(), "c");
        if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
            fail(rd.lineno(), "bracket index out of range");
        if (i >= j) fail(rd.lineno(), "bracket rows require i < j");
        if (c < 1 || c >= p) fail(rd.lineno(), "coefficient outside 1..p-1");
        if (std::tuple(i, j, k) <= std::tuple(prev_i, prev_j, prev_k))
            fail(rd.lineno(), i == prev_i && j == prev_j && k == prev_k
                                  ? "duplicate bracket entry"
                                  : "bracket entries out of lexicographic order");
        prev_i = i;
        prev_j = j;
        prev_k = k;
        acc[size_t(L.pair_index(i, j))].push_back({k, fp_t(c)});
    }
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            auto& terms = acc[size_t(L.pair_index(i, j))];
            if (!terms.empty()) L.set_bracket(i, j, terms);
        }

    check_hash_line(text, rd, expect_line("hash line"));

    ValidationReport rep = validate(L);
    if (!rep.ok())
        throw std::invalid_argument("imported table violates the Jacobi identity at " +
                                    rep.violations.front());
    return L;
}

// ---------------------------------------------------------------------------
// certificate files
//
// cartan-iso-certificate v1
// p <p>
// dim <d>
// source family <W|S|H|K> <p> <n> <m_1> ... <m_n>   or: source hash <16 hex>
// target ...                                        (same two forms)
// seed <u64>
// budget <u64>
// row <i> <c_0> ... <c_{dim-1}>                     (d lines, i ascending)
// hash fnv1a64 <16 hex>
// ---------------------------------------------------------------------------

struct AlgebraRef {
    bool is_family = false;
    CartanFamily family;
    bool derived = false;  // family form: reference the derived subalgebra
    uint64_t hash = 0;     // fnv1a64 of the referenced algebra file

    bool operator==(const AlgebraRef&) const = default;
};

inline AlgebraRef ref_of_family(const CartanFamily& f, bool derived = false) {
    return {true, f, derived, 0};
}

inline AlgebraRef ref_of_file(std::string_view algebra_file_text) {
    return {false, {}, false, fnv1a64(algebra_file_text)};
}

struct CertificateDoc {
    int p = 2;
    int dim = 0;
    AlgebraRef source;
    AlgebraRef target;
    uint64_t seed = 0;
    uint64_t budget = 0;
    Matrix matrix;  // row i = image of source basis vector i
};

namespace detail {

inline void write_ref(std::ostringstream& os, const char* which,
                      const AlgebraRef& r) {
    os << which << " ";
    if (r.is_family) {
        os << "family " << family_name(r.family.tag) << " " << r.family.p << " "
           << r.family.n;
        for (int mi : r.family.m) os << " " << mi;
        if (r.derived) os << " derived";
    } else {
        os << "hash " << hex64(r.hash);
    }
    os << "\n";
}

inline AlgebraRef parse_ref(const std::vector<std::string_view>& f, int lineno) {
    if (f.size() >= 2 && f[1] == "hash") {
        if (f.size() != 3) fail(lineno, "expected '<which> hash <hex>'");
        return {false, {}, false, parse_hex64(f[2], lineno)};
    }
    if (f.size() < 5 || f[1] != "family")
        fail(lineno, "expected '<which> family <tag> <p> <n> <m...>' or hash form");
    std::optional<FamilyTag> tag = family_from_name(std::string(f[2]));
    if (!tag) fail(lineno, "unknown family tag '" + std::string(f[2]) + "'");
    CartanFamily fam;
    fam.tag = *tag;
    fam.p = int(parse_int(f[3], lineno, "family p"));
    fam.n = int(parse_int(f[4], lineno, "family n"));
    bool derived = false;
    size_t expect = size_t(5 + fam.n);
    if (f.size() == expect + 1 && f.back() == "derived") derived = true;
    else if (f.size() != expect) fail(lineno, "family m list length mismatch");
    for (int i = 0; i < fam.n; ++i)
        fam.m.push_back(int(parse_int(f[size_t(5 + i)], lineno, "family m entry")));
    check_family(fam);
    return {true, fam, derived, 0};
}

}  // namespace detail

inline std::string export_certificate(const CertificateDoc& c) {
    assert(c.matrix.rows() == c.dim && c.matrix.cols() == c.dim);
    std::ostringstream os;
    os << "cartan-iso-certificate v1\n";
    os << "p " << c.p << "\n";
    os << "dim " << c.dim << "\n";
    detail::write_ref(os, "source", c.source);
    detail::write_ref(os, "target", c.target);
    os << "seed " << c.seed << "\n";
    os << "budget " << c.budget << "\n";
    for (int i = 0; i < c.dim; ++i) {
        os << "row " << i;
        for (int j = 0; j < c.dim; ++j) os << " " << int(c.matrix.get(i, j));
        os << "\n";
    }
    std::string body = os.str();
    return body + "hash fnv1a64 " + hex64(fnv1a64(body)) + "\n";
}

inline CertificateDoc import_certificate(std::string_view text) {
    using namespace detail;
    LineReader rd(text);
    auto expect_line = [&](const char* what) -> std::string_view {
        std::optional<std::string_view> l = rd.next();
        if (!l) fail(rd.lineno() + 1, std::string("missing ") + what);
        return *l;
    };

    if (expect_line("header") != "cartan-iso-certificate v1")
        fail(rd.lineno(), "expected header 'cartan-iso-certificate v1'");

    CertificateDoc c;
    std::vector<std::string_view> f = split_fields(expect_line("p line"));
    if (f.size() != 2 || f[0] != "p") fail(rd.lineno(), "expected 'p <p>'");
    c.p = int(parse_int(f[1], rd.lineno(), "p"));
    if (!fp_is_prime(c.p) || c.p >= 16) fail(rd.lineno(), "p must be a prime below 16");

    f = split_fields(expect_line("dim line"));
    if (f.size() != 2 || f[0] != "dim") fail(rd.lineno(), "expected 'dim <d>'");
    c.dim = int(parse_int(f[1], rd.lineno(), "dim"));
    if (c.dim < 0 || c.dim > 4096) fail(rd.lineno(), "dim out of range");

    f = split_fields(expect_line("source line"));
    if (f.empty() || f[0] != "source") fail(rd.lineno(), "expected 'source ...'");
    c.source = parse_ref(f, rd.lineno());
    f = split_fields(expect_line("target line"));
    if (f.empty() || f[0] != "target") fail(rd.lineno(), "expected 'target ...'");
    c.target = parse_ref(f, rd.lineno());

    f = split_fields(expect_line("seed line"));
    if (f.size() != 2 || f[0] != "seed") fail(rd.lineno(), "expected 'seed <u64>'");
    c.seed = parse_u64(f[1], rd.lineno(), "seed");
    f = split_fields(expect_line("budget line"));
    if (f.size() != 2 || f[0] != "budget") fail(rd.lineno(), "expected 'budget <u64>'");
    c.budget = parse_u64(f[1], rd.lineno(), "budget");

    c.matrix = Matrix(c.p, c.dim, c.dim);
    for (int i = 0; i < c.dim; ++i) {
        f = split_fields(expect_line("matrix row"));
        if (int(f.size()) != 2 + c.dim || f[0] != "row")
            fail(rd.lineno(), "expected 'row <i> <dim residues>'");
        if (parse_int(f[1], rd.lineno(), "row index") != i)
            fail(rd.lineno(), "row index out of order");
        for (int j = 0; j < c.dim; ++j) {
            long long v = parse_int(f[size_t(2 + j)], rd.lineno(), "matrix entry");
            if (v < 0 || v >= c.p) fail(rd.lineno(), "matrix entry outside 0..p-1");
            if (v) c.matrix.set(i, j, fp_t(v));
        }
    }

    check_hash_line(text, rd, expect_line("hash line"));
    return c;
}

}  // namespace cartan
