#include "roadaudit/superpixel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace roadaudit {

namespace {

struct Center {
  double intensity = 0.0;
  double x = 0.0;
  double y = 0.0;
};

// Gradient used for seed perturbation: squared forward differences to the
// right and down neighbours (clamped at borders).
double seed_gradient(const GrayImage& img, int x, int y) {
  const int w = static_cast<int>(img.cols()), h = static_cast<int>(img.rows());
  const double c = img(y, x);
  const double rx = img(y, std::min(x + 1, w - 1));
  const double dy = img(std::min(y + 1, h - 1), x);
  return (rx - c) * (rx - c) + (dy - c) * (dy - c);
}

// Merge fragments below min_region into their largest 4-adjacent component,
// then relabel densely in first-pixel raster order.
void enforce_connectivity(LabelMap& labels, int min_region, int& count_out) {
  const int h = static_cast<int>(labels.rows());
  const int w = static_cast<int>(labels.cols());
  const int n = w * h;

  // Connected components (4-connectivity) of the raw label map.
  LabelMap comp(h, w);
  comp.setConstant(-1);
  std::vector<long long> comp_size;
  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (comp(y, x) >= 0) continue;
      const int id = static_cast<int>(comp_size.size());
      const std::int32_t lab = labels(y, x);
      long long size = 0;
      stack.push_back(y * w + x);
      comp(y, x) = id;
      while (!stack.empty()) {
        const int p = stack.back();
        stack.pop_back();
        ++size;
        const int py = p / w, px = p % w;
        const int ny[4] = {py - 1, py + 1, py, py};
        const int nx[4] = {px, px, px - 1, px + 1};
        for (int i = 0; i < 4; ++i) {
          if (ny[i] < 0 || ny[i] >= h || nx[i] < 0 || nx[i] >= w) continue;
          if (comp(ny[i], nx[i]) >= 0 || labels(ny[i], nx[i]) != lab) continue;
          comp(ny[i], nx[i]) = id;
          stack.push_back(ny[i] * w + nx[i]);
        }
      }
      comp_size.push_back(size);
    }
  }
  const int ncomp = static_cast<int>(comp_size.size());

  // Union-find over components; fragments merge into the largest adjacent
  // component (ties to the smaller id), processed in component id order.
  std::vector<int> parent(ncomp);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };

  std::vector<std::vector<int>> adj(ncomp);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int a = comp(y, x);
      if (x + 1 < w) {
        const int b = comp(y, x + 1);
        if (a != b) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
      }
      if (y + 1 < h) {
        const int b = comp(y + 1, x);
        if (a != b) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
      }
    }
  }
  for (auto& v : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  for (int c = 0; c < ncomp; ++c) {
    const int root = find(c);
    if (comp_size[root] >= min_region) continue;
    int best = -1;
    long long best_size = -1;
    for (int nb : adj[c]) {
      const int r = find(nb);
      if (r == root) continue;
      if (comp_size[r] > best_size || (comp_size[r] == best_size && r < best)) {
        best = r;
        best_size = comp_size[r];
      }
    }
    if (best < 0) continue;  // no neighbour (single-component image)
    parent[root] = best;
    comp_size[best] += comp_size[root];
  }

  // Dense relabel in raster order of each merged component's first pixel.
  std::vector<int> dense(ncomp, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int r = find(comp(i / w, i % w));
    if (dense[r] < 0) dense[r] = next++;
  }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) labels(y, x) = dense[find(comp(y, x))];
  count_out = next;
}

}  // namespace

SuperpixelLabeling slic(const GrayImage& img, const SlicParams& params) {
  const int w = static_cast<int>(img.cols()), h = static_cast<int>(img.rows());
  const long long n = static_cast<long long>(w) * h;
  if (params.k < 1 || params.compactness <= 0.0 || params.iterations < 1)
    fail(Errc::bad_param, "slic: k >= 1, compactness > 0, iterations >= 1");
  if (params.k > n) fail(Errc::k_too_large, "slic: k exceeds pixel count");

  const double step = std::sqrt(static_cast<double>(n) / params.k);

  // Seed grid sized from k and the aspect ratio, so the seed count tracks k
  // even for elongated images (and k = 1 yields exactly one seed).
  int ny = std::max(
      1, static_cast<int>(std::lround(std::sqrt(
             static_cast<double>(params.k) * h / std::max(1, w)))));
  ny = std::min(ny, h);
  int nx = std::max(1, static_cast<int>(std::lround(
                           static_cast<double>(params.k) / ny)));
  nx = std::min(nx, w);

  std::vector<Center> centers;
  centers.reserve(static_cast<std::size_t>(nx) * ny);
  for (int gy = 0; gy < ny; ++gy) {
    for (int gx = 0; gx < nx; ++gx) {
      int sx = std::clamp(
          static_cast<int>(std::lround((gx + 0.5) * w / nx - 0.5)), 0, w - 1);
      int sy = std::clamp(
          static_cast<int>(std::lround((gy + 0.5) * h / ny - 0.5)), 0, h - 1);
      // Perturb to the lowest-gradient spot in the 3x3 neighbourhood.
      int bx = sx, by = sy;
      double bg = std::numeric_limits<double>::infinity();
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int tx = sx + dx, ty = sy + dy;
          if (tx < 0 || tx >= w || ty < 0 || ty >= h) continue;
          const double g = seed_gradient(img, tx, ty);
          if (g < bg) {
            bg = g;
            bx = tx;
            by = ty;
          }
        }
      }
      centers.push_back({static_cast<double>(img(by, bx)),
                         static_cast<double>(bx), static_cast<double>(by)});
    }
  }

  const double inv_s2 = 1.0 / (step * step);
  const double m2 = params.compactness * params.compactness;
  LabelMap labels(h, w);
  std::vector<double> dist(static_cast<std::size_t>(n));

  for (int iter = 0; iter < params.iterations; ++iter) {
    labels.setConstant(-1);
    std::fill(dist.begin(), dist.end(),
              std::numeric_limits<double>::infinity());

    for (std::size_t c = 0; c < centers.size(); ++c) {
      const Center& ctr = centers[c];
      const int x0 = std::max(0, static_cast<int>(std::floor(ctr.x - step)));
      const int x1 = std::min(w - 1, static_cast<int>(std::ceil(ctr.x + step)));
      const int y0 = std::max(0, static_cast<int>(std::floor(ctr.y - step)));
      const int y1 = std::min(h - 1, static_cast<int>(std::ceil(ctr.y + step)));
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const double dc = static_cast<double>(img(y, x)) - ctr.intensity;
          const double ds2 = (x - ctr.x) * (x - ctr.x) + (y - ctr.y) * (y - ctr.y);
          const double d = dc * dc + ds2 * inv_s2 * m2;  // D^2, order-preserving
          const std::size_t p = static_cast<std::size_t>(y) * w + x;
          if (d < dist[p]) {
            dist[p] = d;
            labels(y, x) = static_cast<std::int32_t>(c);
          }
        }
      }
    }

    // Windows cover the image for grid seeds, but guard against drift.
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (labels(y, x) >= 0) continue;
        double bd = std::numeric_limits<double>::infinity();
        std::int32_t bl = 0;
        for (std::size_t c = 0; c < centers.size(); ++c) {
          const double dc = static_cast<double>(img(y, x)) - centers[c].intensity;
          const double ds2 = (x - centers[c].x) * (x - centers[c].x) +
                             (y - centers[c].y) * (y - centers[c].y);
          const double d = dc * dc + ds2 * inv_s2 * m2;
          if (d < bd) {
            bd = d;
            bl = static_cast<std::int32_t>(c);
          }
        }
        labels(y, x) = bl;
      }
    }

    std::vector<double> acc_i(centers.size(), 0.0), acc_x(centers.size(), 0.0),
        acc_y(centers.size(), 0.0);
    std::vector<long long> cnt(centers.size(), 0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::int32_t l = labels(y, x);
        acc_i[l] += img(y, x);
        acc_x[l] += x;
        acc_y[l] += y;
        ++cnt[l];
      }
    }
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (cnt[c] == 0) continue;  // empty cluster keeps its seed
      centers[c].intensity = acc_i[c] / cnt[c];
      centers[c].x = acc_x[c] / cnt[c];
      centers[c].y = acc_y[c] / cnt[c];
    }
  }

  int min_region = params.min_region;
  if (min_region < 0)
    min_region = std::max(1, static_cast<int>((step / 2.0) * (step / 2.0)));

  SuperpixelLabeling out;
  out.labels = std::move(labels);
  enforce_connectivity(out.labels, min_region, out.count);
  return out;
}

std::vector<double> superpixel_density(const SuperpixelLabeling& lab,
                                       const BinaryMask& hot) {
  if (lab.rows() != hot.rows() || lab.cols() != hot.cols())
    fail(Errc::dimension_mismatch, "labeling and hot mask dimensions differ");
  std::vector<long long> total(static_cast<std::size_t>(lab.count), 0);
  std::vector<long long> hits(static_cast<std::size_t>(lab.count), 0);
  for (Eigen::Index y = 0; y < lab.rows(); ++y) {
    for (Eigen::Index x = 0; x < lab.cols(); ++x) {
      const auto l = static_cast<std::size_t>(lab.labels(y, x));
      ++total[l];
      if (hot(y, x)) ++hits[l];
    }
  }
  std::vector<double> density(static_cast<std::size_t>(lab.count), 0.0);
  for (std::size_t i = 0; i < density.size(); ++i)
    if (total[i] > 0)
      density[i] = static_cast<double>(hits[i]) / static_cast<double>(total[i]);
  return density;
}

std::vector<long long> superpixel_sizes(const SuperpixelLabeling& lab) {
  std::vector<long long> total(static_cast<std::size_t>(lab.count), 0);
  for (Eigen::Index y = 0; y < lab.rows(); ++y)
    for (Eigen::Index x = 0; x < lab.cols(); ++x)
      ++total[static_cast<std::size_t>(lab.labels(y, x))];
  return total;
}

}  // namespace roadaudit
