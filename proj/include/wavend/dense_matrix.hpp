#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <type_traits>
#include <vector>

#include "wavend/errors.hpp"

namespace wavend {

using Complex = std::complex<double>;

namespace detail {

template <typename Scalar>
inline constexpr bool is_supported_scalar =
    std::is_same_v<Scalar, double> || std::is_same_v<Scalar, Complex>;

template <typename Scalar>
using EigenDense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace detail

/// Dense row-major matrix over double or complex<double>.
/// Owns its storage; products, factorizations and singular values are
/// delegated to Eigen through maps of the same buffer.
template <typename Scalar>
class DenseMatrix {
    static_assert(detail::is_supported_scalar<Scalar>,
                  "DenseMatrix supports double and std::complex<double>");

  public:
    using Map = Eigen::Map<detail::EigenDense<Scalar>>;
    using ConstMap = Eigen::Map<const detail::EigenDense<Scalar>>;

    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    static DenseMatrix zero(std::size_t rows, std::size_t cols) { return DenseMatrix(rows, cols); }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Scalar* data() { return data_.data(); }
    const Scalar* data() const { return data_.data(); }

    Map map() { return Map(data_.data(), rows_, cols_); }
    ConstMap map() const { return ConstMap(data_.data(), rows_, cols_); }

    DenseMatrix operator*(const DenseMatrix& other) const {
        if (empty() || other.empty()) throw EmptyMatrix("matrix product with empty operand");
        if (cols_ != other.rows_)
            throw ShapeMismatch("matrix product: " + shape_string() + " * " + other.shape_string());
        DenseMatrix out(rows_, other.cols_);
        out.map().noalias() = map() * other.map();
        return out;
    }

    std::vector<Scalar> operator*(const std::vector<Scalar>& x) const {
        if (empty()) throw EmptyMatrix("matrix-vector product with empty matrix");
        if (cols_ != x.size())
            throw ShapeMismatch("matrix-vector product: " + shape_string() + " * vector of length " +
                                std::to_string(x.size()));
        std::vector<Scalar> y(rows_);
        Eigen::Map<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> ym(y.data(), rows_);
        Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> xm(x.data(), x.size());
        ym.noalias() = map() * xm;
        return y;
    }

    DenseMatrix& operator+=(const DenseMatrix& other) {
        require_same_shape(other, "matrix sum");
        map() += other.map();
        return *this;
    }

    DenseMatrix& operator-=(const DenseMatrix& other) {
        require_same_shape(other, "matrix difference");
        map() -= other.map();
        return *this;
    }

    DenseMatrix& operator*=(Scalar s) {
        map() *= s;
        return *this;
    }

    DenseMatrix operator+(const DenseMatrix& other) const {
        DenseMatrix out(*this);
        out += other;
        return out;
    }

    DenseMatrix operator-(const DenseMatrix& other) const {
        DenseMatrix out(*this);
        out -= other;
        return out;
    }

    DenseMatrix transpose() const {
        DenseMatrix out(cols_, rows_);
        out.map() = map().transpose();
        return out;
    }

    DenseMatrix conjugate_transpose() const {
        DenseMatrix out(cols_, rows_);
        out.map() = map().adjoint();
        return out;
    }

    double frobenius_norm() const { return map().norm(); }

    double max_abs() const {
        if (empty()) throw EmptyMatrix("max_abs of empty matrix");
        return map().cwiseAbs().maxCoeff();
    }

    DenseMatrix<Complex> to_complex() const {
        DenseMatrix<Complex> out(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) out.data()[k] = Complex(data_[k]);
        return out;
    }

    std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

  private:
    void require_same_shape(const DenseMatrix& other, const char* what) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw ShapeMismatch(std::string(what) + ": " + shape_string() + " vs " + other.shape_string());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

template <>
inline DenseMatrix<Complex> DenseMatrix<Complex>::to_complex() const {
    return *this;
}

/// y = A x for a real matrix applied to a complex vector (two real products).
inline std::vector<Complex> apply_real(const DenseMatrix<double>& a, const std::vector<Complex>& x) {
    if (a.empty()) throw EmptyMatrix("matrix-vector product with empty matrix");
    if (a.cols() != x.size())
        throw ShapeMismatch("matrix-vector product: " + a.shape_string() + " * vector of length " +
                            std::to_string(x.size()));
    std::vector<double> re(x.size()), im(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        re[k] = x[k].real();
        im[k] = x[k].imag();
    }
    std::vector<double> yre = a * re;
    std::vector<double> yim = a * im;
    std::vector<Complex> y(a.rows());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = Complex(yre[k], yim[k]);
    return y;
}

template <typename Scalar>
double max_abs_diff(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("max_abs_diff: " + a.shape_string() + " vs " + b.shape_string());
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

/// Frobenius norm of a - b without forming the difference.
template <typename Scalar>
double frobenius_diff(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("frobenius_diff: " + a.shape_string() + " vs " + b.shape_string());
    double sum = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            double d = std::abs(a(i, j) - b(i, j));
            sum += d * d;
        }
    return std::sqrt(sum);
}

/// LU factorization with partial pivoting, P A = L U.
template <typename Scalar>
class LuFactors {
    static_assert(detail::is_supported_scalar<Scalar>);
    using EigenColMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  public:
    explicit LuFactors(const DenseMatrix<Scalar>& a) {
        if (a.empty()) throw EmptyMatrix("LU factorization of empty matrix");
        if (a.rows() != a.cols())
            throw ShapeMismatch("LU factorization requires a square matrix, got " + a.shape_string());
        n_ = a.rows();
        EigenColMajor work = a.map();
        lu_.compute(work);
        min_pivot_ = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
        if (min_pivot_ < 1e-300)
            throw SingularMatrix("LU pivot " + std::to_string(min_pivot_) + " below 1e-300");
        perm_.resize(n_);
        Eigen::VectorXi iota(n_);
        for (std::size_t i = 0; i < n_; ++i) iota[static_cast<int>(i)] = static_cast<int>(i);
        Eigen::VectorXi pv = lu_.permutationP() * iota;
        for (std::size_t i = 0; i < n_; ++i) perm_[i] = pv[static_cast<int>(i)];
        sign_ = parity(perm_);
    }

    std::size_t size() const { return n_; }

    /// Combined storage: strict lower triangle holds L (unit diagonal implied),
    /// upper triangle holds U.
    DenseMatrix<Scalar> lu_matrix() const {
        DenseMatrix<Scalar> out(n_, n_);
        out.map() = lu_.matrixLU();
        return out;
    }

    /// Row permutation p with (P A)[i, :] = A[p[i], :].
    const std::vector<int>& permutation() const { return perm_; }

    int permutation_sign() const { return sign_; }

    double min_pivot() const { return min_pivot_; }

    /// Reciprocal condition number estimate in the 1-norm.
    double rcond() const { return lu_.rcond(); }

    // Both overloads evaluate the triangular solves into Eigen-owned buffers and
    // copy out afterwards. Solving in place over a map of vector storage makes the
    // result bits depend on the buffer's heap address (the vectorized kernels split
    // loops at an alignment boundary), so repeat solves within one process could
    // differ in the last digits.
    std::vector<Scalar> solve(const std::vector<Scalar>& rhs) const {
        if (rhs.size() != n_)
            throw ShapeMismatch("LU solve: system size " + std::to_string(n_) +
                                " vs rhs length " + std::to_string(rhs.size()));
        Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> b(rhs.data(), rhs.size());
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> xr = lu_.solve(b);
        return std::vector<Scalar>(xr.data(), xr.data() + xr.size());
    }

    DenseMatrix<Scalar> solve(const DenseMatrix<Scalar>& rhs) const {
        if (rhs.empty()) throw EmptyMatrix("LU solve with empty right-hand side");
        if (rhs.rows() != n_)
            throw ShapeMismatch("LU solve: system size " + std::to_string(n_) + " vs rhs " +
                                rhs.shape_string());
        EigenColMajor xr = lu_.solve(EigenColMajor(rhs.map()));
        DenseMatrix<Scalar> x(rhs.rows(), rhs.cols());
        x.map() = xr;
        return x;
    }

  private:
    static int parity(const std::vector<int>& p) {
        std::vector<char> seen(p.size(), 0);
        int sign = 1;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (seen[i]) continue;
            std::size_t len = 0;
            for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
                seen[j] = 1;
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        return sign;
    }

    std::size_t n_ = 0;
    Eigen::PartialPivLU<EigenColMajor> lu_;
    std::vector<int> perm_;
    int sign_ = 1;
    double min_pivot_ = 0;
};

template <typename Scalar>
LuFactors<Scalar> lu_factor(const DenseMatrix<Scalar>& a) {
    return LuFactors<Scalar>(a);
}

/// All singular values, descending.
template <typename Scalar>
std::vector<double> singular_values(const DenseMatrix<Scalar>& a) {
    if (a.empty()) throw EmptyMatrix("singular values of empty matrix");
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> work = a.map();
    Eigen::BDCSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(work);
    const auto& sv = svd.singularValues();
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

template <typename Scalar>
double spectral_norm(const DenseMatrix<Scalar>& a) {
    return singular_values(a).front();
}

namespace detail {

inline void write_exact(std::ofstream& out, const void* p, std::size_t n, const std::filesystem::path& path) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!out) throw IoError("write failed: " + path.string());
}

inline void read_exact(std::ifstream& in, void* p, std::size_t n, const std::filesystem::path& path) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (in.gcount() != static_cast<std::streamsize>(n)) throw IoError("short read: " + path.string());
}

inline constexpr char kMatrixMagic[8] = {'W', 'N', 'D', 'M', 'A', 'T', '\0', '\0'};

template <typename Scalar>
void format_entry(char* buf, std::size_t cap, Scalar v) {
    if constexpr (std::is_same_v<Scalar, double>) {
        std::snprintf(buf, cap, "%.17g", v);
    } else {
        std::snprintf(buf, cap, "%.17g%+.17gi", v.real(), v.imag());
    }
}

inline Complex parse_entry(const std::string& field, const std::filesystem::path& path) {
    std::string s = field;
    bool imaginary_tail = !s.empty() && (s.back() == 'i' || s.back() == 'I');
    if (imaginary_tail) s.pop_back();
    if (s.empty()) throw IoError("bad matrix entry '" + field + "' in " + path.string());
    std::size_t split = 0;
    for (std::size_t k = 1; k < s.size(); ++k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') split = k;
    }
    try {
        if (imaginary_tail && split > 0)
            return Complex(std::stod(s.substr(0, split)), std::stod(s.substr(split)));
        if (imaginary_tail) return Complex(0.0, std::stod(s));
        return Complex(std::stod(s), 0.0);
    } catch (const std::exception&) {
        throw IoError("bad matrix entry '" + field + "' in " + path.string());
    }
}

}  // namespace detail

template <typename Scalar>
void save_matrix_binary(const DenseMatrix<Scalar>& a, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    const std::uint32_t version = 1;
    const std::uint32_t kind = std::is_same_v<Scalar, double> ? 0 : 1;
    const std::uint64_t rows = a.rows(), cols = a.cols();
    detail::write_exact(out, detail::kMatrixMagic, sizeof detail::kMatrixMagic, path);
    detail::write_exact(out, &version, sizeof version, path);
    detail::write_exact(out, &kind, sizeof kind, path);
    detail::write_exact(out, &rows, sizeof rows, path);
    detail::write_exact(out, &cols, sizeof cols, path);
    detail::write_exact(out, a.data(), rows * cols * sizeof(Scalar), path);
}

template <typename Scalar>
DenseMatrix<Scalar> load_matrix_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    char magic[8];
    std::uint32_t version = 0, kind = 0;
    std::uint64_t rows = 0, cols = 0;
    detail::read_exact(in, magic, sizeof magic, path);
    if (std::memcmp(magic, detail::kMatrixMagic, sizeof magic) != 0)
        throw IoError("not a matrix file: " + path.string());
    detail::read_exact(in, &version, sizeof version, path);
    detail::read_exact(in, &kind, sizeof kind, path);
    if (version != 1) throw IoError("unsupported matrix file version in " + path.string());
    const std::uint32_t want = std::is_same_v<Scalar, double> ? 0 : 1;
    if (kind != want) throw IoError("matrix scalar kind mismatch in " + path.string());
    detail::read_exact(in, &rows, sizeof rows, path);
    detail::read_exact(in, &cols, sizeof cols, path);
    DenseMatrix<Scalar> a(rows, cols);
    detail::read_exact(in, a.data(), rows * cols * sizeof(Scalar), path);
    return a;
}

template <typename Scalar>
void save_matrix_csv(const DenseMatrix<Scalar>& a, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    char buf[96];
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            detail::format_entry(buf, sizeof buf, a(i, j));
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

template <typename Scalar>
DenseMatrix<Scalar> load_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::vector<std::vector<Complex>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<Complex> row;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            std::size_t end = comma == std::string::npos ? line.size() : comma;
            row.push_back(detail::parse_entry(line.substr(start, end - start), path));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError("ragged csv matrix: " + path.string());
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError("empty csv matrix: " + path.string());
    DenseMatrix<Scalar> a(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Complex v = rows[i][j];
            if constexpr (std::is_same_v<Scalar, double>) {
                if (v.imag() != 0.0)
                    throw IoError("complex entry in real matrix: " + path.string());
                a(i, j) = v.real();
            } else {
                a(i, j) = v;
            }
        }
    return a;
}

}  // namespace wavend
