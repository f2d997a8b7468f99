#include "symplat/orbits.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace symplat::orbits {

namespace {

constexpr uint64_t kRootMove = 63;

// Mixed-radix packing of a 2g x 2 integer matrix with entries in [-w, w].
struct Pack {
    std::size_t n;  // entry count, 4g
    int64_t w;
    uint64_t base;

    Pack(std::size_t g, int64_t window) : n(4 * g), w(window), base(2 * window + 1) {
        long double span = 1;
        for (std::size_t i = 0; i < n; ++i) span *= static_cast<long double>(base);
        if (span >= 1.4e17) throw std::domain_error("search window too large to pack");
    }
    std::optional<uint64_t> pack(const int64_t* s) const {
        uint64_t k = 0;
        for (std::size_t i = n; i-- > 0;) {
            if (s[i] < -w || s[i] > w) return std::nullopt;
            k = k * base + static_cast<uint64_t>(s[i] + w);
        }
        return k;
    }
    void unpack(uint64_t k, int64_t* s) const {
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = static_cast<int64_t>(k % base) - w;
            k /= base;
        }
    }
    std::optional<uint64_t> pack_mat(const IMat& m) const {
        std::vector<int64_t> s(n);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                Int e = m(i, j);
                if (e < -w || e > w) return std::nullopt;
                s[2 * i + j] = e.convert_to<int64_t>();
            }
        return pack(s.data());
    }
    IMat unpack_mat(uint64_t k) const {
        std::vector<int64_t> s(n);
        unpack(k, s.data());
        IMat m(n / 2, 2);
        for (std::size_t i = 0; i < n / 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = s[2 * i + j];
        return m;
    }
};

struct Move64 {
    bool left;
    std::size_t dim;
    std::vector<int64_t> m;  // row-major dim x dim
};

std::vector<Move64> to_fast(const std::vector<isogeny::GroupMove>& gens) {
    if (gens.size() >= kRootMove) throw std::domain_error("generator set too large");
    std::vector<Move64> out;
    out.reserve(gens.size());
    for (const auto& gmv : gens) {
        Move64 mv;
        mv.left = gmv.left;
        mv.dim = gmv.m.rows();
        mv.m.resize(mv.dim * mv.dim);
        for (std::size_t i = 0; i < mv.dim; ++i)
            for (std::size_t j = 0; j < mv.dim; ++j) mv.m[i * mv.dim + j] = gmv.m(i, j).convert_to<int64_t>();
        out.push_back(std::move(mv));
    }
    return out;
}

// state layout: s[2*i + j] = entry (i, j) of the 2g x 2 matrix
void apply_fast(const Move64& mv, std::size_t rows, const int64_t* in, int64_t* out) {
    if (mv.left) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                int64_t acc = 0;
                for (std::size_t k = 0; k < rows; ++k) acc += mv.m[i * rows + k] * in[2 * k + j];
                out[2 * i + j] = acc;
            }
    } else {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                out[2 * i + j] = in[2 * i] * mv.m[j] + in[2 * i + 1] * mv.m[2 + j];
    }
}

// open-addressing map from packed state to (parent << 6 | move)
struct Table {
    static constexpr uint64_t kEmpty = ~0ull;
    std::vector<uint64_t> keys, vals;
    uint64_t mask;
    std::size_t count = 0;

    explicit Table(unsigned pow2 = 16)
        : keys(std::size_t(1) << pow2, kEmpty), vals(std::size_t(1) << pow2), mask((std::size_t(1) << pow2) - 1) {}

    static uint64_t mix(uint64_t x) {
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        x *= 0xc4ceb9fe1a85ec53ULL;
        x ^= x >> 33;
        return x;
    }
    const uint64_t* find(uint64_t k) const {
        for (uint64_t i = mix(k) & mask;; i = (i + 1) & mask) {
            if (keys[i] == kEmpty) return nullptr;
            if (keys[i] == k) return &vals[i];
        }
    }
    void grow() {
        Table bigger(0);
        bigger.keys.assign(keys.size() * 4, kEmpty);
        bigger.vals.assign(keys.size() * 4, 0);
        bigger.mask = bigger.keys.size() - 1;
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (keys[i] != kEmpty) bigger.insert(keys[i], vals[i]);
        keys.swap(bigger.keys);
        vals.swap(bigger.vals);
        mask = bigger.mask;
    }
    bool insert(uint64_t k, uint64_t v) {
        if (2 * (count + 1) > keys.size()) grow();
        for (uint64_t i = mix(k) & mask;; i = (i + 1) & mask) {
            if (keys[i] == k) return false;
            if (keys[i] == kEmpty) {
                keys[i] = k;
                vals[i] = v;
                ++count;
                return true;
            }
        }
    }
};

// walks parent pointers back to the flood source; returns (word, source id)
std::pair<std::vector<std::size_t>, std::size_t> chain_word(const Table& visited, uint64_t key) {
    std::vector<std::size_t> word;
    uint64_t k = key;
    while (true) {
        const uint64_t* v = visited.find(k);
        if (!v) throw std::logic_error("orbit search: broken parent chain");
        uint64_t mv = *v & 63u;
        if (mv == kRootMove) {
            std::reverse(word.begin(), word.end());
            return {word, static_cast<std::size_t>(*v >> 6)};
        }
        word.push_back(static_cast<std::size_t>(mv));
        k = *v >> 6;
    }
}

std::vector<std::size_t> inverse_index(const std::vector<isogeny::GroupMove>& gens) {
    std::vector<std::size_t> inv(gens.size(), gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        IMat id = IMat::identity(gens[i].m.rows());
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (gens[i].left != gens[j].left) continue;
            if (gens[i].m.rows() != gens[j].m.rows()) continue;
            if (gens[i].m * gens[j].m == id) {
                inv[i] = j;
                break;
            }
        }
        if (inv[i] == gens.size()) throw std::logic_error("orbit search: generator without inverse");
    }
    return inv;
}

nlohmann::ordered_json mat_json(const IMat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).convert_to<int64_t>());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

IMat apply_word(std::size_t g, const std::vector<isogeny::GroupMove>& gens, const IMat& start,
                const std::vector<std::size_t>& word) {
    (void)g;
    IMat cur = start;
    for (std::size_t idx : word) {
        if (idx >= gens.size()) throw std::invalid_argument("apply_word: move index out of range");
        cur = gens[idx].left ? gens[idx].m * cur : cur * gens[idx].m;
    }
    return cur;
}

std::optional<std::vector<std::size_t>> connect(std::size_t g, const Int& n, const IMat& from,
                                                const IMat& to, int64_t window, int depth) {
    auto gens = isogeny::action_generators(g, n);
    auto moves = to_fast(gens);
    Pack pk(g, window);
    auto from_key = pk.pack_mat(from);
    auto to_key = pk.pack_mat(to);
    if (!from_key || !to_key) throw std::invalid_argument("connect: matrix outside search window");
    if (*from_key == *to_key) return std::vector<std::size_t>{};

    Table visited;
    visited.insert(*from_key, (uint64_t(0) << 6) | kRootMove);
    std::vector<uint64_t> frontier{*from_key};
    std::vector<int64_t> s(4 * g), t(4 * g);
    for (int level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<uint64_t> next;
        for (uint64_t key : frontier) {
            pk.unpack(key, s.data());
            for (std::size_t mi = 0; mi < moves.size(); ++mi) {
                apply_fast(moves[mi], 2 * g, s.data(), t.data());
                auto k2 = pk.pack(t.data());
                if (!k2) continue;
                if (!visited.insert(*k2, (key << 6) | mi)) continue;
                if (*k2 == *to_key) {
                    auto [word, src] = chain_word(visited, *k2);
                    (void)src;
                    if (apply_word(g, gens, from, word) != to)
                        throw std::logic_error("connect: word replay mismatch");
                    return word;
                }
                next.push_back(*k2);
            }
        }
        frontier.swap(next);
    }
    return std::nullopt;
}

nlohmann::ordered_json CensusReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["g"] = g;
    doc["d"] = d.convert_to<int64_t>();
    doc["N"] = n.convert_to<int64_t>();
    nlohmann::ordered_json cls = nlohmann::ordered_json::array();
    for (const auto& c : classes) {
        nlohmann::ordered_json one;
        one["rep"] = mat_json(c.rep);
        one["size"] = c.size;
        one["congruence_class"] = mat_json(c.congruence);
        cls.push_back(std::move(one));
    }
    doc["classes"] = std::move(cls);
    return doc;
}

CensusReport orbit_census(std::size_t g, const Int& d, const Int& n, const Int& height_bound,
                          int bfs_depth, int workers) {
    if (bfs_depth < 0) throw std::invalid_argument("orbit_census: negative depth");
    auto mats = isogeny::enumerate(g, d, height_bound, std::nullopt, workers);
    auto gens = isogeny::action_generators(g, n);
    auto inv = inverse_index(gens);
    auto moves = to_fast(gens);
    const int64_t window = height_bound.convert_to<int64_t>() + 2;
    Pack pk(g, window);

    Table enum_idx;
    std::vector<uint64_t> enum_key(mats.size());
    for (std::size_t i = 0; i < mats.size(); ++i) {
        auto k = pk.pack_mat(mats[i].entries());
        enum_key[i] = *k;
        enum_idx.insert(*k, i);
    }

    std::vector<std::size_t> uf(mats.size());
    for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = i;
    auto find_root = [&](std::size_t x) {
        while (uf[x] != x) {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        return x;
    };

    CensusReport report;
    report.g = g;
    report.d = d;
    report.n = n;
    report.height_bound = height_bound;
    report.bfs_depth = bfs_depth;

    Table visited;
    std::vector<int64_t> s(4 * g), t(4 * g);

    // joins two enumerated matrices along an explicit word, replaying it exactly
    auto certify = [&](std::size_t a, std::size_t bidx, const std::vector<std::size_t>& word) {
        if (apply_word(g, gens, mats[a].entries(), word) != mats[bidx].entries())
            throw std::logic_error("orbit_census: word replay mismatch");
        uf[find_root(a)] = find_root(bidx);
        ++report.certified_merges;
        report.max_word = std::max(report.max_word, word.size());
    };

    for (std::size_t src = 0; src < mats.size(); ++src) {
        if (visited.find(enum_key[src])) continue;  // merged during an earlier flood
        visited.insert(enum_key[src], (uint64_t(src) << 6) | kRootMove);
        std::vector<uint64_t> frontier{enum_key[src]};
        for (int level = 0; level < bfs_depth && !frontier.empty(); ++level) {
            std::vector<uint64_t> next;
            for (uint64_t key : frontier) {
                pk.unpack(key, s.data());
                for (std::size_t mi = 0; mi < moves.size(); ++mi) {
                    apply_fast(moves[mi], 2 * g, s.data(), t.data());
                    auto k2 = pk.pack(t.data());
                    if (!k2) continue;
                    if (const uint64_t* held = visited.find(*k2)) {
                        (void)held;
                        // touched territory of some flood; merge if it is a different class
                        auto [back, owner] = chain_word(visited, *k2);
                        if (find_root(owner) == find_root(src)) continue;
                        auto [here, self] = chain_word(visited, key);
                        here.push_back(mi);
                        for (std::size_t bi = back.size(); bi-- > 0;) here.push_back(inv[back[bi]]);
                        certify(self, owner, here);
                        continue;
                    }
                    visited.insert(*k2, (key << 6) | mi);
                    if (const uint64_t* e = enum_idx.find(*k2)) {
                        std::size_t hit = static_cast<std::size_t>(*e);
                        if (find_root(hit) != find_root(src)) {
                            auto [word, self] = chain_word(visited, *k2);
                            certify(self, hit, word);
                        }
                    }
                    next.push_back(*k2);
                }
            }
            frontier.swap(next);
        }
    }

    // classes keyed by first member in enumeration order
    std::map<std::size_t, std::vector<std::size_t>> grouped;
    for (std::size_t i = 0; i < mats.size(); ++i) grouped[find_root(i)].push_back(i);
    std::vector<std::vector<std::size_t>> ordered;
    for (auto& [root, members] : grouped) ordered.push_back(std::move(members));
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (const auto& members : ordered) {
        CensusClass c;
        c.rep = mats[members.front()].entries();
        c.size = members.size();
        c.congruence = isogeny::congruence_class(mats[members.front()], n);
        for (std::size_t m : members)
            if (isogeny::congruence_class(mats[m], n) != c.congruence)
                throw std::logic_error("orbit_census: class mixes congruence residues");
        report.classes.push_back(std::move(c));
    }
    return report;
}

ReductionEvidence reduction_evidence(std::size_t g, const Int& d, const Int& height, int depth) {
    ReductionEvidence ev;
    auto mats = isogeny::enumerate(g, d, height, std::nullopt, 1);
    ev.matrices = mats.size();

    struct Group {
        IMat rep;
        std::vector<std::size_t> members;
    };
    std::map<std::string, Group> groups;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        auto rr = isogeny::symplectic_reduce(mats[i]);
        auto [d1, d2] = rr.divisor_pair();
        if (d1 <= 0 || d2 % d1 != 0 || d1 * d2 != d) ev.divisor_ok = false;
        std::string key;
        for (std::size_t r = 0; r < rr.rep.rows(); ++r)
            for (std::size_t c = 0; c < 2; ++c) key += rr.rep(r, c).str() + ",";
        auto& grp = groups[key];
        grp.rep = rr.rep;
        grp.members.push_back(i);
    }
    ev.classes = groups.size();

    auto gens = isogeny::action_generators(g, 1);
    auto inv = inverse_index(gens);
    auto moves = to_fast(gens);

    for (auto& [key, grp] : groups) {
        int64_t w0 = std::max<int64_t>(2, symplat::height(grp.rep).convert_to<int64_t>());
        for (std::size_t m : grp.members)
            w0 = std::max(w0, symplat::height(mats[m].entries()).convert_to<int64_t>());

        for (int widen = 0; widen < 3; ++widen) {
            Pack pk(g, w0 + widen);
            auto rep_key = pk.pack_mat(grp.rep);
            Table targets;
            std::size_t wanted = 0;
            for (std::size_t m : grp.members) {
                auto k = pk.pack_mat(mats[m].entries());
                if (targets.insert(*k, m)) ++wanted;
            }
            std::size_t found = 0;
            std::vector<bool> done(mats.size(), false);

            Table visited;
            visited.insert(*rep_key, (uint64_t(0) << 6) | kRootMove);
            std::vector<uint64_t> frontier{*rep_key};
            std::vector<int64_t> s(4 * g), t(4 * g);

            auto take = [&](uint64_t k) {
                if (const uint64_t* e = targets.find(k)) {
                    std::size_t m = static_cast<std::size_t>(*e);
                    if (done[m]) return;
                    done[m] = true;
                    ++found;
                    auto [fwd, src] = chain_word(visited, k);
                    (void)src;
                    std::vector<std::size_t> word;  // member back to its representative
                    for (std::size_t bi = fwd.size(); bi-- > 0;) word.push_back(inv[fwd[bi]]);
                    if (apply_word(g, gens, mats[m].entries(), word) != grp.rep)
                        throw std::logic_error("reduction_evidence: word replay mismatch");
                    ev.max_word = std::max(ev.max_word, word.size());
                }
            };
            take(*rep_key);
            for (int level = 0; level < depth && !frontier.empty() && found < wanted; ++level) {
                std::vector<uint64_t> next;
                for (uint64_t keyv : frontier) {
                    if (found == wanted) break;
                    pk.unpack(keyv, s.data());
                    for (std::size_t mi = 0; mi < moves.size(); ++mi) {
                        apply_fast(moves[mi], 2 * g, s.data(), t.data());
                        auto k2 = pk.pack(t.data());
                        if (!k2) continue;
                        if (!visited.insert(*k2, (keyv << 6) | mi)) continue;
                        take(*k2);
                        next.push_back(*k2);
                        if (found == wanted) break;
                    }
                }
                frontier.swap(next);
            }
            if (found == wanted) {
                ev.certified += found;
                break;
            }
            if (widen == 2) ev.certified += found;  // partial count, evidence incomplete
        }
    }
    return ev;
}

}  // namespace symplat::orbits
