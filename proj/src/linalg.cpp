#include "kstab/linalg.hpp"

#include <utility>

namespace kstab::linalg {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][c].is_zero()) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        Rat inv = Rat(1) / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c].is_zero()) continue;
            Rat f = m[r][c];
            for (std::size_t k = c; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

Rat det(Mat m) {
    const std::size_t n = m.size();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m[sel][c].is_zero()) ++sel;
        if (sel == n) return Rat(0);
        if (sel != c) {
            std::swap(m[sel], m[c]);
            d = -d;
        }
        d *= m[c][c];
        Rat inv = Rat(1) / m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            Rat f = m[r][c] * inv;
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

int rank(const Mat& rows) {
    if (rows.empty()) return 0;
    Mat m = rows;
    return static_cast<int>(rref(m, rows.front().size()).size());
}

std::optional<Vec> solve(Mat m, Vec rhs) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) m[i].push_back(rhs[i]);
    auto piv = rref(m, n);
    if (piv.size() != n) return std::nullopt;
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

std::vector<Vec> kernel(const Mat& rows, std::size_t cols) {
    Mat m = rows;
    auto piv = rref(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(cols);
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

Vec hyperplane_normal(const std::vector<const Vec*>& pts) {
    const std::size_t d = pts.front()->size();
    Mat rows;
    for (std::size_t k = 1; k < pts.size(); ++k) rows.push_back(*pts[k] - *pts[0]);
    Vec n(d);
    for (std::size_t i = 0; i < d; ++i) {
        Mat minor;
        for (const auto& r : rows) {
            Vec rr;
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) rr.push_back(r[j]);
            minor.push_back(std::move(rr));
        }
        Rat v = minor.empty() ? Rat(1) : det(std::move(minor));
        n[i] = (i % 2 == 0) ? v : -v;
    }
    return n;
}

}  // namespace kstab::linalg
