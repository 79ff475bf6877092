#pragma once

// Independent reference implementations used only by the test suites. These
// deliberately avoid the library's own code paths: dimensions come from hook
// lengths, Kostka numbers from explicit tableau enumeration, maxima from
// grids, so that each checks a different route than the code under test.

#include <algorithm>
#include <functional>
#include <vector>

#include "mfspin/bigint.hpp"
#include "mfspin/partitions.hpp"
#include "mfspin/variational.hpp"

namespace oracles {

// Hook-length formula: d_mu = n! / prod over cells of hook(cell).
inline mfspin::BigInt hook_length_dimension(const std::vector<int>& mu, int n) {
    std::vector<int> rows;
    for (int v : mu)
        if (v > 0) rows.push_back(v);
    mfspin::BigInt num = mfspin::BigInt::factorial(n);
    mfspin::BigInt den(1);
    const int k = static_cast<int>(rows.size());
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < rows[i]; ++j) {
            int arm = rows[i] - j - 1;
            int leg = 0;
            for (int r = i + 1; r < k; ++r)
                if (rows[r] > j) ++leg;
            den *= mfspin::BigInt(arm + leg + 1);
        }
    }
    return num.divide_exact(den);
}

// Number of semistandard tableaux of shape `shape` with content `content`
// (content may be an arbitrary composition), by direct backtracking over
// cells. Rows weakly increase, columns strictly increase.
inline long long ssyt_count(const std::vector<int>& shape_in, const std::vector<int>& content) {
    std::vector<int> shape;
    for (int v : shape_in)
        if (v > 0) shape.push_back(v);
    const int values = static_cast<int>(content.size());
    std::vector<int> remaining = content;
    std::vector<std::vector<int>> cell(shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r) cell[r].assign(shape[r], 0);
    long long count = 0;
    std::function<void(int, int)> fill = [&](int r, int c) {
        if (r == static_cast<int>(shape.size())) {
            ++count;
            return;
        }
        int nr = r, nc = c + 1;
        if (nc == shape[r]) {
            nr = r + 1;
            nc = 0;
        }
        int lo = 1;
        if (c > 0) lo = std::max(lo, cell[r][c - 1]);            // row weakly increasing
        if (r > 0 && c < shape[r - 1]) lo = std::max(lo, cell[r - 1][c] + 1);  // column strict
        for (int v = lo; v <= values; ++v) {
            if (remaining[v - 1] == 0) continue;
            --remaining[v - 1];
            cell[r][c] = v;
            fill(nr, nc);
            cell[r][c] = 0;
            ++remaining[v - 1];
        }
    };
    int total = 0;
    for (int v : content) total += v;
    int cells = 0;
    for (int v : shape) cells += v;
    if (total == cells) fill(0, 0);
    return count;
}

// Semistandard tableaux of the shape with entries in {1..theta}, any content.
inline long long ssyt_any_content(const std::vector<int>& shape, int theta) {
    // sum over all contents via backtracking without a content budget
    std::vector<int> rows;
    for (int v : shape)
        if (v > 0) rows.push_back(v);
    std::vector<std::vector<int>> cell(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) cell[r].assign(rows[r], 0);
    long long count = 0;
    std::function<void(int, int)> fill = [&](int r, int c) {
        if (r == static_cast<int>(rows.size())) {
            ++count;
            return;
        }
        int nr = r, nc = c + 1;
        if (nc == rows[r]) {
            nr = r + 1;
            nc = 0;
        }
        int lo = 1;
        if (c > 0) lo = std::max(lo, cell[r][c - 1]);
        if (r > 0 && c < rows[r - 1]) lo = std::max(lo, cell[r - 1][c] + 1);
        for (int v = lo; v <= theta; ++v) {
            cell[r][c] = v;
            fill(nr, nc);
            cell[r][c] = 0;
        }
    };
    fill(0, 0);
    return count;
}

// All weakly decreasing nonnegative integer vectors of length theta summing
// to n, by nested search (independent of the library's enumerator).
inline std::vector<std::vector<int>> brute_partitions(int n, int theta) {
    std::vector<std::vector<int>> out;
    std::vector<int> buf(theta, 0);
    std::function<void(int, int, int)> rec = [&](int slot, int remaining, int cap) {
        if (slot == theta) {
            if (remaining == 0) out.push_back(buf);
            return;
        }
        for (int v = std::min(cap, remaining); v >= 0; --v) {
            buf[slot] = v;
            rec(slot + 1, remaining - v, v);
        }
    };
    rec(0, n, n);
    return out;
}

// Max of fn over the mesh-1/m grid of the dominance polytope {y >= floor}.
inline double grid_max(const mfspin::SimplexPoint& floor_point, int mesh,
                       const std::function<double(const std::vector<double>&)>& fn) {
    const int theta = floor_point.theta();
    double best = -1e300;
    std::vector<int> buf(theta, 0);
    std::function<void(int, int, int)> rec = [&](int slot, int remaining, int cap) {
        if (slot == theta) {
            if (remaining != 0) return;
            double prefix = 0.0, floor_prefix = 0.0;
            std::vector<double> y(theta);
            for (int i = 0; i < theta; ++i) y[i] = static_cast<double>(buf[i]) / mesh;
            for (int i = 0; i < theta; ++i) {
                prefix += y[i];
                floor_prefix += floor_point[i];
                if (prefix + 1e-12 < floor_prefix) return;
            }
            best = std::max(best, fn(y));
            return;
        }
        for (int v = std::min(cap, remaining); v >= 0; --v) {
            buf[slot] = v;
            rec(slot + 1, remaining - v, v);
        }
    };
    rec(0, mesh, mesh);
    return best;
}

}  // namespace oracles
