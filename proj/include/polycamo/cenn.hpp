#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polycamo/netlist.hpp"

namespace polycamo {

// Chua-Yang cellular network parameters. A and B are 3x3 templates indexed
// row-major with [1][1] the center; grid boundaries are zero-padded.
struct CennParams {
    std::array<std::array<double, 3>, 3> feedback{};   // A
    std::array<std::array<double, 3>, 3> control{};    // B
    double bias = 0.0;                                  // I
    double resistance = 1.0;                            // R
    double capacitance = 1.0;                           // C
    double dt = 0.05;                                   // s, must be < R*C
    size_t max_steps = 2000;
    double tolerance = 1e-6;

    void check() const;

    // A = center 2 with unit cross, B = center 4, I = 0: the classic
    // denoising/reconstruction template pair used as the default.
    static CennParams denoising();
    // A = center 2 only: binary images are exact fixed points.
    static CennParams identity();
};

struct ImageGrid {
    size_t width = 0, height = 0;
    std::vector<double> values;  // row-major

    ImageGrid() = default;
    ImageGrid(size_t w, size_t h, double fill = 0.0)
        : width(w), height(h), values(w * h, fill) {}
    double& at(size_t x, size_t y) { return values[y * width + x]; }
    double at(size_t x, size_t y) const { return values[y * width + x]; }
};

struct BinaryImage {
    size_t width = 0, height = 0;
    std::vector<uint8_t> pixels;  // 0/1, row-major

    BinaryImage() = default;
    BinaryImage(size_t w, size_t h, uint8_t fill = 0)
        : width(w), height(h), pixels(w * h, fill) {}
    uint8_t& at(size_t x, size_t y) { return pixels[y * width + x]; }
    uint8_t at(size_t x, size_t y) const { return pixels[y * width + x]; }
    size_t size() const { return pixels.size(); }

    // Input encoding for the network: 1 -> +1, 0 -> -1.
    ImageGrid to_bipolar() const;
    static BinaryImage from_sign(const ImageGrid& g);
};

// Output nonlinearity f(x) = 0.5 (|x+1| - |x-1|), saturating at +-1.
double cenn_output(double x);

struct CennResult {
    ImageGrid states;      // converged internal states
    BinaryImage output;    // sign of f(x)
    size_t steps = 0;
    bool converged = false;
    bool diverged = false;  // any |x| above the blow-up threshold
};

// Forward-Euler integration of the Chua-Yang state equation with
// zero-padded boundaries; stops when the largest state delta falls under
// the tolerance or after max_steps. Row bands update in parallel against a
// double buffer when jobs > 1.
CennResult cenn_run(const ImageGrid& input, const CennParams& p, int jobs = 1);

// Models reconstruction through an approximately recovered IP whose output
// HD against the original is `hd`: every pixel flips independently with
// that probability.
BinaryImage corrupt_by_hd(const BinaryImage& reference, double hd, uint64_t seed);

struct ImageMetrics {
    double pixel_error_rate = 0.0;
    double psnr_db = 0.0;  // +infinity reported as the sentinel below
    static constexpr double kInfinitePsnr = 999.0;
};

ImageMetrics image_metrics(const BinaryImage& a, const BinaryImage& b);

// ASCII portable bitmap / graymap I/O (P1 and P2).
std::string write_pbm(const BinaryImage& img);
BinaryImage read_pbm(const std::string& text);
std::string write_pgm(const ImageGrid& img, int max_value = 255);
BinaryImage read_image_file(const std::string& path);  // P1 or P2 (threshold at mid-gray)
void write_image_file(const std::string& path, const BinaryImage& img);

}  // namespace polycamo
