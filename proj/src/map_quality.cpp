#include "mrexplore/map_quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrexplore {

GrayImage render_grayscale(const OccupancyGrid& grid)
{
    GrayImage img{grid.width(), grid.height(), {}};
    img.pixels.resize(grid.frame().cell_count());
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        switch (grid.state(i)) {
        case CellState::Occupied:
            img.pixels[i] = kPixelOccupied;
            break;
        case CellState::Free:
            img.pixels[i] = kPixelFree;
            break;
        case CellState::Unknown:
            img.pixels[i] = kPixelUnknown;
            break;
        }
    }
    return img;
}

GrayImage render_grayscale(const GroundTruthMap& truth)
{
    const GridFrame& f = truth.frame();
    GrayImage img{f.width, f.height, std::vector<std::uint8_t>(f.cell_count())};
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        img.pixels[i] = truth.occupied(i) ? kPixelOccupied : kPixelFree;
    return img;
}

namespace {

void require_same_shape(const GrayImage& a, const GrayImage& b)
{
    if (a.width != b.width || a.height != b.height ||
        a.pixels.size() != b.pixels.size() || a.pixels.empty())
        throw std::invalid_argument("images differ in shape or are empty");
}

/* Summed-area table with one row and column of zero padding */
class IntegralImage
{
public:
    template <typename F>
    IntegralImage(int width, int height, F value) :
        stride_(static_cast<std::size_t>(width) + 1),
        sums_(stride_ * (static_cast<std::size_t>(height) + 1), 0)
    {
        for (int r = 0; r < height; ++r) {
            std::int64_t row_sum = 0;
            for (int c = 0; c < width; ++c) {
                row_sum += value(c, r);
                sums_[at(c + 1, r + 1)] = sums_[at(c + 1, r)] + row_sum;
            }
        }
    }

    /* Sum over the box [c0, c0 + w) x [r0, r0 + h) */
    std::int64_t box(int c0, int r0, int w, int h) const
    {
        return sums_[at(c0 + w, r0 + h)] - sums_[at(c0, r0 + h)] -
               sums_[at(c0 + w, r0)] + sums_[at(c0, r0)];
    }

private:
    std::size_t at(int c, int r) const
    {
        return static_cast<std::size_t>(c) + static_cast<std::size_t>(r) * stride_;
    }

    std::size_t stride_;
    std::vector<std::int64_t> sums_;
};

/* 1D squared Euclidean distance transform (lower envelope of parabolas) */
void distance_transform_1d(const std::vector<double>& f, std::vector<double>& d)
{
    const int n = static_cast<int>(f.size());
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<int> v(static_cast<std::size_t>(n));
    std::vector<double> z(static_cast<std::size_t>(n) + 1);
    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (f[q] == inf)
            continue;
        double s = -inf;
        while (k >= 0) {
            const int p = v[k];
            s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * (q - p));
            if (s > z[k])
                break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = k == 0 ? -inf : s;
        z[k + 1] = inf;
    }
    d.assign(static_cast<std::size_t>(n), inf);
    if (k < 0)
        return;
    int j = 0;
    for (int q = 0; q < n; ++q) {
        while (z[j + 1] < q)
            ++j;
        const double diff = q - v[j];
        d[q] = diff * diff + f[v[j]];
    }
}

/* Squared distance from every cell to the nearest seed cell */
std::vector<double> squared_distance_field(const GrayImage& seeds, std::uint8_t seed_value)
{
    const int w = seeds.width;
    const int h = seeds.height;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> field(seeds.pixels.size(), inf);
    for (std::size_t i = 0; i < field.size(); ++i)
        if (seeds.pixels[i] == seed_value)
            field[i] = 0.0;

    std::vector<double> line;
    std::vector<double> out;
    for (int c = 0; c < w; ++c) {
        line.resize(static_cast<std::size_t>(h));
        for (int r = 0; r < h; ++r)
            line[r] = field[static_cast<std::size_t>(c + r * w)];
        distance_transform_1d(line, out);
        for (int r = 0; r < h; ++r)
            field[static_cast<std::size_t>(c + r * w)] = out[r];
    }
    for (int r = 0; r < h; ++r) {
        line.assign(field.begin() + r * w, field.begin() + (r + 1) * w);
        distance_transform_1d(line, out);
        std::copy(out.begin(), out.end(), field.begin() + r * w);
    }
    return field;
}

} // namespace

double ssim(const GrayImage& a, const GrayImage& b)
{
    require_same_shape(a, b);
    constexpr double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    constexpr double c2 = (0.03 * 255.0) * (0.03 * 255.0);

    const int win_w = std::min(7, a.width);
    const int win_h = std::min(7, a.height);
    const double n = static_cast<double>(win_w) * win_h;

    const IntegralImage sum_a(a.width, a.height, [&](int c, int r) { return std::int64_t{a.at(c, r)}; });
    const IntegralImage sum_b(a.width, a.height, [&](int c, int r) { return std::int64_t{b.at(c, r)}; });
    const IntegralImage sum_aa(a.width, a.height, [&](int c, int r) {
        return std::int64_t{a.at(c, r)} * a.at(c, r);
    });
    const IntegralImage sum_bb(a.width, a.height, [&](int c, int r) {
        return std::int64_t{b.at(c, r)} * b.at(c, r);
    });
    const IntegralImage sum_ab(a.width, a.height, [&](int c, int r) {
        return std::int64_t{a.at(c, r)} * b.at(c, r);
    });

    double total = 0.0;
    std::size_t windows = 0;
    for (int r = 0; r + win_h <= a.height; ++r) {
        for (int c = 0; c + win_w <= a.width; ++c) {
            const double mu_a = static_cast<double>(sum_a.box(c, r, win_w, win_h)) / n;
            const double mu_b = static_cast<double>(sum_b.box(c, r, win_w, win_h)) / n;
            const double var_a = static_cast<double>(sum_aa.box(c, r, win_w, win_h)) / n - mu_a * mu_a;
            const double var_b = static_cast<double>(sum_bb.box(c, r, win_w, win_h)) / n - mu_b * mu_b;
            const double cov = static_cast<double>(sum_ab.box(c, r, win_w, win_h)) / n - mu_a * mu_b;
            total += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
                     ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
            ++windows;
        }
    }
    return std::clamp(total / static_cast<double>(windows), 0.0, 1.0);
}

double rmse(const GrayImage& a, const GrayImage& b)
{
    require_same_shape(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(a.pixels.size()));
}

double alignment_error(const GrayImage& estimate, const GrayImage& reference)
{
    require_same_shape(estimate, reference);
    const auto field = squared_distance_field(reference, kPixelOccupied);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < estimate.pixels.size(); ++i) {
        if (estimate.pixels[i] != kPixelOccupied)
            continue;
        sum += std::sqrt(field[i]);
        ++count;
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

MapQuality map_quality(const OccupancyGrid& grid, const GroundTruthMap& truth)
{
    if (!(grid.frame() == truth.frame()))
        throw std::invalid_argument("map_quality: grid and truth geometry differ");
    const GrayImage est = render_grayscale(grid);
    const GrayImage ref = render_grayscale(truth);
    return {ssim(est, ref), rmse(est, ref), alignment_error(est, ref)};
}

} // namespace mrexplore
