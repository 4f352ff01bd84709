#include "sbmssl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "sbmssl/rng.hpp"

namespace sbmssl {

SparseGraph::SparseGraph(std::int64_t n, const std::vector<Edge>& edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("SparseGraph: negative node count");
    struct Entry {
        std::int64_t u, v;
        double w;
    };
    std::vector<Entry> canon;
    canon.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("SparseGraph: node id out of range");
        if (e.w < 0.0) throw std::invalid_argument("SparseGraph: negative edge weight");
        canon.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.w});
    }
    std::sort(canon.begin(), canon.end(), [](const Entry& a, const Entry& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    // merge duplicates by weight summation
    std::vector<Entry> merged;
    merged.reserve(canon.size());
    for (const Entry& e : canon) {
        if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
            merged.back().w += e.w;
            ++duplicates_merged_;
        } else {
            merged.push_back(e);
        }
    }
    num_edges_ = static_cast<std::int64_t>(merged.size());
    std::vector<std::size_t> counts(static_cast<std::size_t>(n) + 1, 0);
    for (const Entry& e : merged) {
        ++counts[static_cast<std::size_t>(e.u) + 1];
        if (e.u != e.v) ++counts[static_cast<std::size_t>(e.v) + 1];
    }
    row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i)
        row_ptr_[i] = row_ptr_[i - 1] + counts[i];
    cols_.resize(row_ptr_.back());
    wts_.resize(row_ptr_.back());
    std::vector<std::size_t> cursor(row_ptr_.begin(), row_ptr_.end() - 1);
    for (const Entry& e : merged) {
        cols_[cursor[static_cast<std::size_t>(e.u)]] = e.v;
        wts_[cursor[static_cast<std::size_t>(e.u)]++] = e.w;
        if (e.u != e.v) {
            cols_[cursor[static_cast<std::size_t>(e.v)]] = e.u;
            wts_[cursor[static_cast<std::size_t>(e.v)]++] = e.w;
        } else {
            ++num_self_loops_;
        }
    }
    degrees_.assign(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = row_ptr_[static_cast<std::size_t>(i)];
             k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k)
            s += wts_[k];
        degrees_[static_cast<std::size_t>(i)] = s;
        adjacency_sum_ += s;
    }
}

double SparseGraph::max_degree() const {
    double m = 0.0;
    for (double d : degrees_) m = std::max(m, d);
    return m;
}

void SparseGraph::apply(std::span<const double> x, std::span<double> y) const {
    for (std::int64_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t k = row_ptr_[static_cast<std::size_t>(i)];
             k < row_ptr_[static_cast<std::size_t>(i) + 1]; ++k)
            acc += wts_[k] * x[static_cast<std::size_t>(cols_[k])];
        y[static_cast<std::size_t>(i)] = acc;
    }
}

double SparseGraph::weight(std::int64_t i, std::int64_t j) const {
    auto beg = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[static_cast<std::size_t>(i)]);
    auto end = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[static_cast<std::size_t>(i) + 1]);
    auto it = std::lower_bound(beg, end, j);
    if (it == end || *it != j) return 0.0;
    return wts_[static_cast<std::size_t>(it - cols_.begin())];
}

bool SparseGraph::operator==(const SparseGraph& other) const {
    return n_ == other.n_ && row_ptr_ == other.row_ptr_ && cols_ == other.cols_ &&
           wts_ == other.wts_;
}

void ModelParams::validate() const {
    if (n < 1) throw std::invalid_argument("ModelParams: n must be positive");
    if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
        throw std::invalid_argument("ModelParams: edge probabilities must lie in [0,1]");
    if (!(eta >= 0.0 && theta >= 0.0 && eta + theta <= 1.0))
        throw std::invalid_argument("ModelParams: need eta, theta >= 0 and eta + theta <= 1");
}

double ModelParams::s() const {
    if (eta + theta <= 0.0)
        throw std::domain_error("ModelParams: error rate undefined for eta + theta = 0");
    return theta / (eta + theta);
}

namespace {

// Visits each index of [0, total) independently with probability p, in
// increasing order, via geometric jumps. O(expected hits).
template <typename F>
void skip_sample(std::int64_t total, double p, std::mt19937_64& gen, F&& emit) {
    if (total <= 0 || p <= 0.0) return;
    if (p >= 1.0) {
        for (std::int64_t t = 0; t < total; ++t) emit(t);
        return;
    }
    const double log1mp = std::log1p(-p);
    std::int64_t t = -1;
    while (true) {
        double skip = std::floor(std::log(uniform01_pos(gen)) / log1mp);
        if (skip >= static_cast<double>(total - t)) return;
        t += 1 + static_cast<std::int64_t>(skip);
        if (t >= total) return;
        emit(t);
    }
}

// Unranks t in [0, m(m-1)/2) to the t-th pair (i, j), i < j < m, ordered by i.
std::pair<std::int64_t, std::int64_t> unrank_pair(std::int64_t t, std::int64_t m) {
    const double b = 2.0 * static_cast<double>(m) - 1.0;
    std::int64_t i =
        static_cast<std::int64_t>(std::floor((b - std::sqrt(b * b - 8.0 * static_cast<double>(t))) / 2.0));
    auto offset = [m](std::int64_t r) { return r * (2 * m - r - 1) / 2; };
    while (i > 0 && offset(i) > t) --i;
    while (offset(i + 1) <= t) ++i;
    return {i, i + 1 + (t - offset(i))};
}

}  // namespace

std::pair<SparseGraph, std::vector<std::int8_t>> sample_ssbm(const ModelParams& params,
                                                             std::uint64_t seed, bool balanced,
                                                             bool self_loops) {
    params.validate();
    if (params.n < 2) throw std::invalid_argument("sample_ssbm: need n >= 2");
    const std::int64_t n = params.n;
    std::mt19937_64 gen(seed);

    std::vector<std::int8_t> sigma(static_cast<std::size_t>(n));
    if (balanced) {
        const std::int64_t n1 = n / 2;
        for (std::int64_t i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i < n1 ? 1 : -1;
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            sigma[static_cast<std::size_t>(i)] = (gen() & 1u) ? 1 : -1;
    }

    std::vector<std::int64_t> plus, minus;
    plus.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        (sigma[static_cast<std::size_t>(i)] > 0 ? plus : minus).push_back(i);

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(params.d() * static_cast<double>(n) / 2.0) + 16);

    auto sample_intra = [&](const std::vector<std::int64_t>& ids) {
        const std::int64_t m = static_cast<std::int64_t>(ids.size());
        skip_sample(m * (m - 1) / 2, params.p_in, gen, [&](std::int64_t t) {
            auto [a, b] = unrank_pair(t, m);
            edges.push_back({ids[static_cast<std::size_t>(a)], ids[static_cast<std::size_t>(b)], 1.0});
        });
    };
    sample_intra(plus);
    sample_intra(minus);
    const std::int64_t np = static_cast<std::int64_t>(plus.size());
    const std::int64_t nm = static_cast<std::int64_t>(minus.size());
    skip_sample(np * nm, params.p_out, gen, [&](std::int64_t t) {
        edges.push_back({plus[static_cast<std::size_t>(t / nm)],
                         minus[static_cast<std::size_t>(t % nm)], 1.0});
    });
    if (self_loops) {
        skip_sample(n, params.p_in, gen, [&](std::int64_t i) { edges.push_back({i, i, 1.0}); });
    }
    return {SparseGraph(n, edges), std::move(sigma)};
}

SparseGraph degree_regularize(const SparseGraph& g, double d_max) {
    if (d_max <= 0.0) throw std::invalid_argument("degree_regularize: d_max must be positive");
    if (g.max_degree() <= d_max) return g;
    std::vector<double> factor(static_cast<std::size_t>(g.n()));
    for (std::int64_t i = 0; i < g.n(); ++i) {
        const double deg = g.degree(i);
        factor[static_cast<std::size_t>(i)] = deg > d_max ? d_max / deg : 1.0;
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(g.num_edges()));
    g.for_each_edge([&](std::int64_t u, std::int64_t v, double w) {
        edges.push_back({u, v, w * std::min(factor[static_cast<std::size_t>(u)],
                                            factor[static_cast<std::size_t>(v)])});
    });
    return SparseGraph(g.n(), edges);
}

SparseGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw EdgeListFormatError("cannot open edge list file: " + path);
    std::string line;
    std::int64_t lineno = 0;
    std::int64_t n = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("n=");
            if (n < 0 && pos != std::string::npos) {
                try {
                    n = std::stoll(line.substr(pos + 2));
                } catch (const std::exception&) {
                    throw EdgeListFormatError(path + ":" + std::to_string(lineno) +
                                              ": malformed header, expected '# n=<count>'");
                }
            }
            continue;
        }
        if (n < 0)
            throw EdgeListFormatError(path + ":" + std::to_string(lineno) +
                                      ": missing mandatory '# n=<count>' header before edges");
        std::istringstream ss(line);
        std::int64_t u, v;
        double w = 1.0;
        if (!(ss >> u >> v))
            throw EdgeListFormatError(path + ":" + std::to_string(lineno) + ": malformed edge line");
        ss >> w;
        std::string trailing;
        if (ss >> trailing)
            throw EdgeListFormatError(path + ":" + std::to_string(lineno) +
                                      ": trailing tokens on edge line");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw EdgeListFormatError(path + ":" + std::to_string(lineno) +
                                      ": node id out of range [0, " + std::to_string(n) + ")");
        if (w < 0.0)
            throw EdgeListFormatError(path + ":" + std::to_string(lineno) + ": negative weight");
        edges.push_back({u, v, w});
    }
    if (n < 0) throw EdgeListFormatError(path + ": missing mandatory '# n=<count>' header");
    SparseGraph g(n, edges);
    if (g.duplicates_merged() > 0)
        std::cerr << "warning: " << path << ": " << g.duplicates_merged()
                  << " duplicate edge(s) merged by weight summation\n";
    return g;
}

void save_edge_list(const SparseGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw EdgeListFormatError("cannot open file for writing: " + path);
    out << "# n=" << g.n() << "\n";
    char buf[96];
    g.for_each_edge([&](std::int64_t u, std::int64_t v, double w) {
        std::snprintf(buf, sizeof(buf), "%lld %lld %.17g\n", static_cast<long long>(u),
                      static_cast<long long>(v), w);
        out << buf;
    });
    if (!out) throw EdgeListFormatError("write failed: " + path);
}

}  // namespace sbmssl
