#include "wavend/wave.hpp"

#include <cstring>
#include <fstream>
#include <utility>

namespace wavend {

HyperbolicNdMap HyperbolicNdMap::from_lambda(DenseMatrix<double> full, int n_t) {
    const std::size_t m = static_cast<std::size_t>(n_t);
    const std::size_t M = 2 * m;
    if (full.rows() != 2 * M || full.cols() != 2 * M)
        throw ShapeMismatch("hyperbolic map must be " + std::to_string(2 * M) + " square, got " +
                            full.shape_string());
    HyperbolicNdMap nd;
    nd.n_t = n_t;
    nd.lambda_T = DenseMatrix<double>(2 * m, 2 * m);
    for (std::size_t bi = 0; bi < 2; ++bi)
        for (std::size_t bj = 0; bj < 2; ++bj)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    nd.lambda_T(bi * m + i, bj * m + j) = full(bi * M + i, bj * M + j);
    nd.lambda = std::move(full);
    return nd;
}

HyperbolicNdMap assemble_hyperbolic_nd_map(const Grid& grid, const Coefficients& coeff) {
    const int M = 2 * grid.n_t;
    DenseMatrix<double> full(2 * M, 2 * M);

    for (int in_side = 0; in_side < 2; ++in_side) {
        auto f = BoundarySignal<double>::zeros(SignalLayout::extended, M);
        (in_side == 0 ? f.left() : f.right())[1] = 1.0;
        WaveField<double> field = wave_solve(grid, coeff, f, M);

        std::vector<double> trace[2];
        trace[0].resize(M);
        trace[1].resize(M);
        for (int s = 0; s < M; ++s) {
            trace[0][s] = field.step(s)[0];
            trace[1][s] = field.step(s)[grid.n_x - 1];
        }

        // An impulse at node j >= 1 reproduces the node-1 response shifted by
        // j - 1 steps; the node-0 column stays zero (the first two levels of
        // the leapfrog never read f(0)).
        for (int out_side = 0; out_side < 2; ++out_side) {
            const std::vector<double>& g = trace[out_side];
            for (int j = 1; j < M; ++j) {
                const int shift = j - 1;
                for (int i = shift; i < M; ++i)
                    full(out_side * M + i, in_side * M + j) = g[i - shift];
            }
        }
    }
    return HyperbolicNdMap::from_lambda(std::move(full), grid.n_t);
}

namespace {

void fnv_feed(std::uint64_t& h, const void* p, std::size_t n) {
    const unsigned char* bytes = static_cast<const unsigned char*>(p);
    for (std::size_t k = 0; k < n; ++k) {
        h ^= bytes[k];
        h *= 1099511628211ULL;
    }
}

void fnv_feed_doubles(std::uint64_t& h, const std::vector<double>& v) {
    fnv_feed(h, v.data(), v.size() * sizeof(double));
}

}  // namespace

std::uint64_t nd_map_cache_key(const Grid& grid, const Coefficients& coeff) {
    std::uint64_t h = 1469598103934665603ULL;
    const std::uint32_t format = 1;
    fnv_feed(h, &format, sizeof format);
    fnv_feed(h, &grid.n_x, sizeof grid.n_x);
    fnv_feed(h, &grid.n_t, sizeof grid.n_t);
    double geom[5] = {grid.x_min, grid.x_max, grid.dx, grid.t_final, grid.dt};
    fnv_feed(h, geom, sizeof geom);
    fnv_feed_doubles(h, coeff.c);
    fnv_feed_doubles(h, coeff.q);
    return h;
}

namespace {

std::string key_hex(std::uint64_t key) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(key));
    return buf;
}

void write_cache_meta(const std::filesystem::path& path, const Grid& grid, std::uint64_t key) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "key " << key_hex(key) << "\n"
        << "n_x " << grid.n_x << "\n"
        << "n_t " << grid.n_t << "\n"
        << "x_min " << grid.x_min << "\n"
        << "x_max " << grid.x_max << "\n"
        << "t_final " << grid.t_final << "\n"
        << "dt " << grid.dt << "\n";
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

HyperbolicNdMap assemble_or_load(const Grid& grid, const Coefficients& coeff,
                                 const std::optional<std::filesystem::path>& cache_dir) {
    if (!cache_dir) return assemble_hyperbolic_nd_map(grid, coeff);

    const std::uint64_t key = nd_map_cache_key(grid, coeff);
    std::error_code ec;
    std::filesystem::create_directories(*cache_dir, ec);
    if (ec) throw IoError("cannot create cache directory " + cache_dir->string() + ": " + ec.message());
    const auto bin = *cache_dir / ("lambda_" + key_hex(key) + ".bin");
    const auto meta = *cache_dir / ("lambda_" + key_hex(key) + ".meta");

    if (std::filesystem::exists(bin)) {
        try {
            return HyperbolicNdMap::from_lambda(load_matrix_binary<double>(bin), grid.n_t);
        } catch (const IoError&) {
            // Corrupt or truncated cache entry: fall through and regenerate.
        } catch (const ShapeMismatch&) {
        }
    }
    HyperbolicNdMap nd = assemble_hyperbolic_nd_map(grid, coeff);
    save_matrix_binary(nd.lambda, bin);
    write_cache_meta(meta, grid, key);
    return nd;
}

}  // namespace wavend
