//---------------------------------------------------------------------------//
//! \file halfbern/Random.hh
//! \brief Counter-seeded random streams for reproducible parallel walks
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace halfbern
{
//---------------------------------------------------------------------------//
//! SplitMix64 finalizer: a bijective 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

//---------------------------------------------------------------------------//
/*!
 * Derive a child seed from a parent seed and a list of integer tags.
 *
 * Used to give every Monte Carlo batch (solver iteration, boundary
 * direction, probe index, ...) its own stream without any shared state.
 */
inline std::uint64_t
derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags)
{
    std::uint64_t h = mix64(base);
    for (auto t : tags)
        h = mix64(h ^ mix64(t + 0x632be59bd9b4e019ULL));
    return h;
}

//---------------------------------------------------------------------------//
/*!
 * xoshiro256** engine keyed by (seed, stream index).
 *
 * The state is filled by SplitMix64 from hash(seed, index), so stream \c i
 * can be constructed directly without stepping through streams 0..i-1.
 * Satisfies UniformRandomBitGenerator.
 */
class StreamRng
{
  public:
    using result_type = std::uint64_t;

    StreamRng(std::uint64_t seed, std::uint64_t index)
    {
        std::uint64_t sm = derive_seed(seed, {index});
        for (auto& s : s_)
        {
            sm += 0x9e3779b97f4a7c15ULL;
            s = mix64(sm);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max()
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()()
    {
        result_type const result = rotl(s_[1] * 5, 7) * 9;
        result_type const t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    //! Uniform double on the open interval (0, 1)
    double uniform()
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    static constexpr result_type rotl(result_type x, int k)
    {
        return (x << k) | (x >> (64 - k));
    }

    result_type s_[4];
};

//---------------------------------------------------------------------------//
}  // namespace halfbern
