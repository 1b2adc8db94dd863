#ifndef WCE_RNG_HPP
#define WCE_RNG_HPP

#include <cstdint>
#include <cstddef>
#include <cmath>
#include <span>

namespace wce {

// Counter-based generator (Philox4x32-10). A stream is addressed by
// (seed, stream id); values within a stream are a pure function of the
// draw counter, so replications can be assigned to any worker without
// changing the output.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          ctr2_(static_cast<std::uint32_t>(stream)),
          ctr3_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::uint32_t next_u32() {
        if (have_ == 0) {
            block(draw_block_++);
            have_ = 4;
        }
        return out_[4 - have_--];
    }

    // Uniform on the open interval (0,1).
    double next_uniform() {
        return (static_cast<double>(next_u32()) + 0.5) * 0x1p-32;
    }

    // Jump to an absolute draw position (multiple of 4 recommended).
    void seek(std::uint64_t draw_index) {
        draw_block_ = draw_index / 4;
        block(draw_block_++);
        have_ = 4 - static_cast<int>(draw_index % 4);
    }

private:
    void block(std::uint64_t idx) {
        std::uint32_t c0 = static_cast<std::uint32_t>(idx);
        std::uint32_t c1 = static_cast<std::uint32_t>(idx >> 32);
        std::uint32_t c2 = ctr2_, c3 = ctr3_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = 0xD2511F53ull * c0;
            const std::uint64_t p1 = 0xCD9E8D57ull * c2;
            const std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
            const std::uint32_t n1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
            const std::uint32_t n3 = static_cast<std::uint32_t>(p0);
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        out_[0] = c0; out_[1] = c1; out_[2] = c2; out_[3] = c3;
    }

    std::uint32_t key0_, key1_, ctr2_, ctr3_;
    std::uint64_t draw_block_ = 0;
    std::uint32_t out_[4] = {0, 0, 0, 0};
    int have_ = 0;
};

// Stream id packing: replication in the low bits, a small channel tag in
// the top byte so auxiliary noise (second component, perturbation, ...)
// never collides with the main draw sequence.
inline std::uint64_t stream_id(std::uint64_t replication, unsigned channel) {
    return (static_cast<std::uint64_t>(channel) << 56) | (replication & 0x00FF'FFFF'FFFF'FFFFull);
}

// Standard normal sampler, ziggurat method (Marsaglia & Tsang layout with
// 128 layers) on top of Philox.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream) : u_(seed, stream) { tables(); }

    double next() {
        for (;;) {
            const std::uint32_t u = u_.next_u32();
            const std::int32_t hz = static_cast<std::int32_t>(u);
            const std::uint32_t iz = u & 127u;
            const std::uint32_t mag =
                hz < 0 ? static_cast<std::uint32_t>(-static_cast<std::int64_t>(hz))
                       : static_cast<std::uint32_t>(hz);
            if (mag < kn_[iz]) return hz * wn_[iz];
            if (iz == 0) {
                // tail beyond r
                double x, y;
                do {
                    x = -std::log(u_.next_uniform()) / kR;
                    y = -std::log(u_.next_uniform());
                } while (y + y < x * x);
                return hz > 0 ? kR + x : -(kR + x);
            }
            const double x = hz * wn_[iz];
            if (fn_[iz] + u_.next_uniform() * (fn_[iz - 1] - fn_[iz]) < std::exp(-0.5 * x * x))
                return x;
        }
    }

    void fill(std::span<double> out) {
        for (double& v : out) v = next();
    }

private:
    static constexpr double kR = 3.442619855899;

    static void tables();

    Philox u_;
    static std::uint32_t kn_[128];
    static double wn_[128], fn_[128];
};

}

#endif
