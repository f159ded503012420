//---------------------------------------------------------------------------//
//! \file halfbern/Vec.hh
//! \brief Small fixed-capacity coordinate vector for d = 1, 2, 3
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace halfbern
{
//---------------------------------------------------------------------------//
//! Library-wide error type; thrown for precondition and domain violations.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//---------------------------------------------------------------------------//
/*!
 * Point or displacement in R^d with d <= 3.
 *
 * Storage is inline so that walkers never allocate. Unused trailing
 * components are kept at zero, which lets dot products and norms ignore the
 * dimension entirely.
 */
class Vec
{
  public:
    static constexpr int max_dim = 3;

    Vec() = default;

    explicit Vec(int dim) : dim_(dim) { check_dim(dim); }

    Vec(std::initializer_list<double> values)
        : dim_(static_cast<int>(values.size()))
    {
        check_dim(dim_);
        std::size_t i = 0;
        for (double v : values)
            c_[i++] = v;
    }

    int dim() const { return dim_; }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    Vec& operator+=(Vec const& o)
    {
        for (std::size_t i = 0; i < max_dim; ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    Vec& operator-=(Vec const& o)
    {
        for (std::size_t i = 0; i < max_dim; ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    Vec& operator*=(double s)
    {
        for (auto& v : c_)
            v *= s;
        return *this;
    }

    friend Vec operator+(Vec a, Vec const& b) { return a += b; }
    friend Vec operator-(Vec a, Vec const& b) { return a -= b; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator-(Vec a) { return a *= -1.0; }

    friend bool operator==(Vec const& a, Vec const& b)
    {
        return a.dim_ == b.dim_ && a.c_ == b.c_;
    }

  private:
    static void check_dim(int d)
    {
        if (d < 1 || d > max_dim)
            throw Error("dimension must be 1, 2 or 3, got " + std::to_string(d));
    }

    std::array<double, max_dim> c_{};
    int dim_ = 0;
};

inline double dot(Vec const& a, Vec const& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(Vec const& a)
{
    return std::sqrt(dot(a, a));
}

inline double distance(Vec const& a, Vec const& b)
{
    return norm(a - b);
}

inline double distance_sq(Vec const& a, Vec const& b)
{
    Vec const d = a - b;
    return dot(d, d);
}

//! Zero vector of the given dimension
inline Vec zeros(int dim)
{
    return Vec(dim);
}

//! Unit vector along axis \c k
inline Vec unit_axis(int dim, int k)
{
    Vec v(dim);
    v[k] = 1.0;
    return v;
}

inline void require_same_dim(Vec const& a, Vec const& b, char const* what)
{
    if (a.dim() != b.dim())
        throw Error(std::string("dimension mismatch in ") + what);
}

//---------------------------------------------------------------------------//
}  // namespace halfbern
