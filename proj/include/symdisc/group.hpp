#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symdisc/config.hpp"
#include "symdisc/errors.hpp"

namespace symdisc {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Conjugacy classes as an explicit partition.  Classes are ordered by their
// smallest member, members sorted ascending, so the layout is deterministic.
struct ConjugacyClassPartition {
    std::vector<std::vector<int>> classes;
    std::vector<int> class_of;

    int count() const { return static_cast<int>(classes.size()); }
    int representative(int c) const { return classes[c].front(); }
    int size(int c) const { return static_cast<int>(classes[c].size()); }
};

// Finite group given by a validated Cayley table over elements 0..n-1.
// Immutable after construction; conjugacy classes and center are computed
// eagerly.  Validation order: table shape and Latin property, identity,
// two-sided inverses, associativity (exhaustive up to order 200, determinised
// sampling above).
class FiniteGroup {
public:
    static GroupPtr from_cayley(std::vector<std::vector<int>> table,
                                std::vector<std::string> labels = {},
                                std::string name = "cayley") {
        return GroupPtr(new FiniteGroup(std::move(table), std::move(labels), std::move(name)));
    }

    int order() const { return n_; }
    int multiply(int g, int h) const { return table_[static_cast<size_t>(g) * n_ + h]; }
    int inverse(int g) const { return inverse_[g]; }
    int identity() const { return identity_; }
    const std::string& name() const { return name_; }
    const std::string& label(int g) const { return labels_[g]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const ConjugacyClassPartition& classes() const { return classes_; }
    const std::vector<int>& center() const { return center_; }
    bool is_abelian() const { return static_cast<int>(center_.size()) == n_; }

    int conjugate(int g, int x) const {  // g x g^{-1}
        return multiply(multiply(g, x), inverse_[g]);
    }

    std::vector<std::vector<int>> cayley() const {
        std::vector<std::vector<int>> out(n_, std::vector<int>(n_));
        for (int g = 0; g < n_; ++g)
            for (int h = 0; h < n_; ++h) out[g][h] = multiply(g, h);
        return out;
    }

private:
    FiniteGroup(std::vector<std::vector<int>> rows, std::vector<std::string> labels,
                std::string name)
        : name_(std::move(name)) {
        n_ = static_cast<int>(rows.size());
        if (n_ == 0) throw MalformedTable("empty Cayley table");
        if (static_cast<long>(n_) > limits().construction_cap())
            throw CapExceeded("group order " + std::to_string(n_) + " exceeds cap " +
                              std::to_string(limits().construction_cap()));
        table_.resize(static_cast<size_t>(n_) * n_);
        for (int g = 0; g < n_; ++g) {
            if (static_cast<int>(rows[g].size()) != n_)
                throw MalformedTable("row " + std::to_string(g) + " has length " +
                                     std::to_string(rows[g].size()) + ", expected " +
                                     std::to_string(n_));
            for (int h = 0; h < n_; ++h) {
                int v = rows[g][h];
                if (v < 0 || v >= n_)
                    throw MalformedTable("entry (" + std::to_string(g) + "," +
                                         std::to_string(h) + ") = " + std::to_string(v) +
                                         " out of range");
                table_[static_cast<size_t>(g) * n_ + h] = v;
            }
        }
        check_latin();
        find_identity();
        find_inverses();
        check_associativity();
        if (!labels.empty()) {
            if (static_cast<int>(labels.size()) != n_)
                throw MalformedTable("label count " + std::to_string(labels.size()) +
                                     " does not match order " + std::to_string(n_));
            labels_ = std::move(labels);
        } else {
            labels_.reserve(n_);
            for (int g = 0; g < n_; ++g) labels_.push_back(std::to_string(g));
        }
        compute_classes();
        compute_center();
    }

    void check_latin() {
        std::vector<char> seen(n_);
        for (int g = 0; g < n_; ++g) {
            std::fill(seen.begin(), seen.end(), 0);
            for (int h = 0; h < n_; ++h) {
                int v = multiply(g, h);
                if (seen[v]++)
                    throw MalformedTable("row " + std::to_string(g) +
                                         " repeats element " + std::to_string(v));
            }
        }
        for (int h = 0; h < n_; ++h) {
            std::fill(seen.begin(), seen.end(), 0);
            for (int g = 0; g < n_; ++g) {
                int v = multiply(g, h);
                if (seen[v]++)
                    throw MalformedTable("column " + std::to_string(h) +
                                         " repeats element " + std::to_string(v));
            }
        }
    }

    void find_identity() {
        identity_ = -1;
        for (int e = 0; e < n_; ++e) {
            bool ok = true;
            for (int g = 0; g < n_ && ok; ++g)
                ok = multiply(e, g) == g && multiply(g, e) == g;
            if (ok) {
                identity_ = e;
                return;
            }
        }
        throw NoIdentity("no two-sided identity element");
    }

    void find_inverses() {
        inverse_.assign(n_, -1);
        for (int g = 0; g < n_; ++g) {
            for (int h = 0; h < n_; ++h) {
                if (multiply(g, h) == identity_ && multiply(h, g) == identity_) {
                    inverse_[g] = h;
                    break;
                }
            }
            if (inverse_[g] < 0)
                throw NotInvertible("element " + std::to_string(g) +
                                    " has no two-sided inverse");
        }
    }

    void check_associativity() const {
        auto check = [&](int g, int h, int k) {
            if (multiply(multiply(g, h), k) != multiply(g, multiply(h, k)))
                throw NotAssociative("(g h) k != g (h k) at (" + std::to_string(g) + ", " +
                                     std::to_string(h) + ", " + std::to_string(k) + ")");
        };
        if (n_ <= group_exhaustive_order) {
            for (int g = 0; g < n_; ++g)
                for (int h = 0; h < n_; ++h)
                    for (int k = 0; k < n_; ++k) check(g, h, k);
        } else {
            // deterministic sample; same triples every run
            std::uint64_t state = 0x7c3a9d1f2b5e8c64ull ^ static_cast<std::uint64_t>(n_);
            auto next = [&state] {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                return state >> 16;
            };
            constexpr long samples = 2'000'000;
            for (long i = 0; i < samples; ++i) {
                int g = static_cast<int>(next() % n_);
                int h = static_cast<int>(next() % n_);
                int k = static_cast<int>(next() % n_);
                check(g, h, k);
            }
        }
    }

    void compute_classes() {
        classes_.class_of.assign(n_, -1);
        std::vector<char> in_orbit(n_);
        for (int x = 0; x < n_; ++x) {
            if (classes_.class_of[x] >= 0) continue;
            std::fill(in_orbit.begin(), in_orbit.end(), 0);
            std::vector<int> members;
            for (int g = 0; g < n_; ++g) {
                int y = conjugate(g, x);
                if (!in_orbit[y]) {
                    in_orbit[y] = 1;
                    members.push_back(y);
                }
            }
            std::sort(members.begin(), members.end());
            int c = classes_.count();
            for (int y : members) classes_.class_of[y] = c;
            classes_.classes.push_back(std::move(members));
        }
    }

    void compute_center() {
        for (int x = 0; x < n_; ++x) {
            bool central = true;
            for (int g = 0; g < n_ && central; ++g)
                central = multiply(x, g) == multiply(g, x);
            if (central) center_.push_back(x);
        }
    }

    int n_ = 0;
    int identity_ = 0;
    std::string name_;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<std::string> labels_;
    ConjugacyClassPartition classes_;
    std::vector<int> center_;
};

inline const ConjugacyClassPartition& conjugacy_classes(const FiniteGroup& g) {
    return g.classes();
}

inline const std::vector<int>& center(const FiniteGroup& g) { return g.center(); }

// Z_k, elements 0..k-1 under addition mod k.
inline GroupPtr cyclic_group(int k) {
    if (k < 1) throw InvalidParameter("cyclic group needs k >= 1, got " + std::to_string(k));
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) t[i][j] = (i + j) % k;
    return FiniteGroup::from_cayley(std::move(t), {}, "cyclic:" + std::to_string(k));
}

// Dihedral group of order 2n: index a encodes the rotation r^a, index n + a
// the reflection s r^a, with s r^a s = r^{-a}.
inline GroupPtr dihedral_group(int n) {
    if (n < 1) throw InvalidParameter("dihedral group needs n >= 1, got " + std::to_string(n));
    int order = 2 * n;
    auto idx = [n](int a, int b) { return b * n + a; };
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    std::vector<std::string> labels(order);
    for (int b1 = 0; b1 < 2; ++b1)
        for (int a1 = 0; a1 < n; ++a1) {
            labels[idx(a1, b1)] = (b1 ? "sr" : "r") + std::to_string(a1);
            for (int b2 = 0; b2 < 2; ++b2)
                for (int a2 = 0; a2 < n; ++a2) {
                    // r^{a1} s^{b1} r^{a2} s^{b2} = r^{a1 + (-1)^{b1} a2} s^{b1 xor b2}
                    int a = (a1 + (b1 ? n - a2 : a2)) % n;
                    t[idx(a1, b1)][idx(a2, b2)] = idx(a, b1 ^ b2);
                }
        }
    return FiniteGroup::from_cayley(std::move(t), std::move(labels),
                                    "dihedral:" + std::to_string(n));
}

// S_n with permutations of {0..n-1} enumerated in lexicographic one-line
// order; multiply(s, t) applies t first.
inline GroupPtr symmetric_group(int n) {
    if (n < 1) throw InvalidParameter("symmetric group needs n >= 1, got " + std::to_string(n));
    if (n > limits().symmetric_n_cap)
        throw CapExceeded("symmetric group degree " + std::to_string(n) + " exceeds cap " +
                          std::to_string(limits().symmetric_n_cap));
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;
    int order = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    std::vector<int> comp(n);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            for (int x = 0; x < n; ++x) comp[x] = perms[i][perms[j][x]];
            t[i][j] = index.at(comp);
        }
    std::vector<std::string> labels(order);
    for (int i = 0; i < order; ++i) {
        std::string s;
        for (int x : perms[i]) s += std::to_string(x);
        labels[i] = s;
    }
    return FiniteGroup::from_cayley(std::move(t), std::move(labels),
                                    "symmetric:" + std::to_string(n));
}

// Direct product with element index g * |H| + h.
inline GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h) {
    long order = static_cast<long>(g->order()) * h->order();
    if (order > limits().construction_cap())
        throw CapExceeded("product order " + std::to_string(order) + " exceeds cap " +
                          std::to_string(limits().construction_cap()));
    int nh = h->order();
    int n = static_cast<int>(order);
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> labels(n);
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < nh; ++b) {
            labels[a * nh + b] = "(" + g->label(a) + "," + h->label(b) + ")";
            for (int c = 0; c < g->order(); ++c)
                for (int d = 0; d < nh; ++d)
                    t[a * nh + b][c * nh + d] = g->multiply(a, c) * nh + h->multiply(b, d);
        }
    return FiniteGroup::from_cayley(std::move(t), std::move(labels),
                                    "product:" + g->name() + "," + h->name());
}

// (Z_2)^bits under bitwise xor; bit i of the element index is coordinate i.
inline GroupPtr xor_group(int bits) {
    if (bits < 0) throw InvalidParameter("xor group needs bits >= 0");
    long order = 1L << bits;
    if (order > limits().construction_cap())
        throw CapExceeded("xor group order " + std::to_string(order) + " exceeds cap");
    int n = static_cast<int>(order);
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = a ^ b;
    std::vector<std::string> labels(n);
    for (int a = 0; a < n; ++a) {
        std::string s;
        for (int i = 0; i < bits; ++i) s += ((a >> i) & 1) ? '1' : '0';
        labels[a] = bits == 0 ? "e" : s;
    }
    return FiniteGroup::from_cayley(std::move(t), std::move(labels),
                                    "xor:" + std::to_string(bits));
}

// Group specification grammar:
//   cyclic:k | dihedral:n | symmetric:n | product:<spec>,<spec> | file:<path>
struct GroupSpec {
    enum class Kind { cyclic, dihedral, symmetric, product, file };
    Kind kind = Kind::cyclic;
    int parameter = 0;
    std::vector<GroupSpec> factors;  // product: exactly two
    std::string path;                // file
    std::string text;                // original spelling
};

namespace detail {

inline GroupSpec parse_spec_at(std::string_view s, size_t& pos) {
    auto starts = [&](std::string_view prefix) {
        if (s.substr(pos, prefix.size()) == prefix) {
            pos += prefix.size();
            return true;
        }
        return false;
    };
    auto parse_int = [&]() {
        size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) throw UsageError("expected an integer in group spec at offset " +
                                           std::to_string(start));
        return std::stoi(std::string(s.substr(start, pos - start)));
    };
    GroupSpec spec;
    size_t begin = pos;
    if (starts("cyclic:")) {
        spec.kind = GroupSpec::Kind::cyclic;
        spec.parameter = parse_int();
    } else if (starts("dihedral:")) {
        spec.kind = GroupSpec::Kind::dihedral;
        spec.parameter = parse_int();
    } else if (starts("symmetric:")) {
        spec.kind = GroupSpec::Kind::symmetric;
        spec.parameter = parse_int();
    } else if (starts("product:")) {
        spec.kind = GroupSpec::Kind::product;
        spec.factors.push_back(parse_spec_at(s, pos));
        if (pos >= s.size() || s[pos] != ',')
            throw UsageError("product spec needs two comma-separated factors");
        ++pos;
        spec.factors.push_back(parse_spec_at(s, pos));
    } else if (starts("file:")) {
        spec.kind = GroupSpec::Kind::file;
        // a path ends at the factor separator only when nested in a product
        size_t end = s.find(',', pos);
        if (end == std::string_view::npos) end = s.size();
        spec.path = std::string(s.substr(pos, end - pos));
        if (spec.path.empty()) throw UsageError("file spec needs a path");
        pos = end;
    } else {
        throw UsageError("unrecognized group spec '" + std::string(s.substr(pos)) + "'");
    }
    spec.text = std::string(s.substr(begin, pos - begin));
    return spec;
}

}  // namespace detail

inline GroupSpec parse_group_spec(std::string_view s) {
    size_t pos = 0;
    GroupSpec spec = detail::parse_spec_at(s, pos);
    if (pos != s.size())
        throw UsageError("trailing characters in group spec '" + std::string(s) + "'");
    return spec;
}

}  // namespace symdisc
