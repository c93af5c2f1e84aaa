#include "polycamo/cenn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace polycamo {

void CennParams::check() const {
    if (!(dt > 0.0) || !(dt < resistance * capacitance))
        throw std::invalid_argument("integration step must satisfy 0 < dt < R*C");
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    for (const auto& row : feedback)
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("template weight not finite");
    for (const auto& row : control)
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("template weight not finite");
}

CennParams CennParams::denoising() {
    // Unit center control: the neighborhood feedback (sum 4 across the
    // cross) must be able to outvote a cell's own corrupted input, or
    // salt-and-pepper pixels never flip.
    CennParams p;
    p.feedback = {{{0, 1, 0}, {1, 2, 1}, {0, 1, 0}}};
    p.control = {{{0, 0, 0}, {0, 1, 0}, {0, 0, 0}}};
    return p;
}

CennParams CennParams::identity() {
    CennParams p;
    p.feedback = {{{0, 0, 0}, {0, 2, 0}, {0, 0, 0}}};
    p.control = {{{0, 0, 0}, {0, 4, 0}, {0, 0, 0}}};
    return p;
}

double cenn_output(double x) { return 0.5 * (std::abs(x + 1.0) - std::abs(x - 1.0)); }

ImageGrid BinaryImage::to_bipolar() const {
    ImageGrid g(width, height);
    for (size_t i = 0; i < pixels.size(); ++i) g.values[i] = pixels[i] ? 1.0 : -1.0;
    return g;
}

BinaryImage BinaryImage::from_sign(const ImageGrid& g) {
    BinaryImage img(g.width, g.height);
    for (size_t i = 0; i < g.values.size(); ++i) img.pixels[i] = g.values[i] > 0.0 ? 1 : 0;
    return img;
}

namespace {
constexpr double kBlowUp = 1e3;
}

CennResult cenn_run(const ImageGrid& input, const CennParams& p, int jobs) {
    p.check();
    if (input.width == 0 || input.height == 0)
        throw std::invalid_argument("image dimensions must be at least 1x1");

    const size_t w = input.width, h = input.height;
    CennResult result;
    result.states = ImageGrid(w, h, 0.0);
    ImageGrid next(w, h, 0.0);

    // Control-template contribution is constant across steps.
    ImageGrid drive(w, h, p.bias);
    for (size_t y = 0; y < h; ++y)
        for (size_t x = 0; x < w; ++x) {
            double sum = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    long nx = long(x) + dx, ny = long(y) + dy;
                    if (nx < 0 || ny < 0 || nx >= long(w) || ny >= long(h)) continue;
                    sum += p.control[dy + 1][dx + 1] * input.at(size_t(nx), size_t(ny));
                }
            drive.at(x, y) += sum;
        }

    const double dt_over_c = p.dt / p.capacitance;
    double max_delta = 0.0;
    bool diverged = false;

    auto update_rows = [&](size_t y0, size_t y1, double& local_max, bool& local_div) {
        for (size_t y = y0; y < y1; ++y)
            for (size_t x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        long nx = long(x) + dx, ny = long(y) + dy;
                        if (nx < 0 || ny < 0 || nx >= long(w) || ny >= long(h)) continue;
                        acc += p.feedback[dy + 1][dx + 1] *
                               cenn_output(result.states.at(size_t(nx), size_t(ny)));
                    }
                double xij = result.states.at(x, y);
                double dx_dt = -xij / p.resistance + acc + drive.at(x, y);
                double xn = xij + dt_over_c * dx_dt;
                next.at(x, y) = xn;
                local_max = std::max(local_max, std::abs(xn - xij));
                if (std::abs(xn) > kBlowUp) local_div = true;
            }
    };

    for (size_t step = 0; step < p.max_steps; ++step) {
        max_delta = 0.0;
        if (jobs <= 1 || h < 32) {
            update_rows(0, h, max_delta, diverged);
        } else {
            size_t bands = std::min<size_t>(jobs, h);
            std::vector<double> maxima(bands, 0.0);
            std::vector<uint8_t> divs(bands, 0);
            std::vector<std::thread> threads;
            size_t chunk = (h + bands - 1) / bands;
            for (size_t b = 0; b < bands; ++b) {
                size_t y0 = b * chunk, y1 = std::min(y0 + chunk, h);
                if (y0 >= y1) continue;
                threads.emplace_back([&, b, y0, y1] {
                    double m = 0.0;
                    bool d = false;
                    update_rows(y0, y1, m, d);
                    maxima[b] = m;
                    divs[b] = d;
                });
            }
            for (auto& t : threads) t.join();
            for (size_t b = 0; b < bands; ++b) {
                max_delta = std::max(max_delta, maxima[b]);
                if (divs[b]) diverged = true;
            }
        }
        std::swap(result.states.values, next.values);
        result.steps = step + 1;
        if (diverged) {
            result.diverged = true;
            break;
        }
        if (max_delta < p.tolerance) {
            result.converged = true;
            break;
        }
    }

    ImageGrid out(w, h);
    for (size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = cenn_output(result.states.values[i]);
    result.output = BinaryImage::from_sign(out);
    return result;
}

BinaryImage corrupt_by_hd(const BinaryImage& reference, double hd, uint64_t seed) {
    if (hd < 0.0 || hd > 0.5) throw std::invalid_argument("hd must lie in [0, 0.5]");
    BinaryImage out = reference;
    if (hd == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (auto& px : out.pixels)
        if (dist(rng) < hd) px ^= 1;
    return out;
}

ImageMetrics image_metrics(const BinaryImage& a, const BinaryImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("image dimension mismatch");
    ImageMetrics m;
    size_t diff = 0;
    for (size_t i = 0; i < a.pixels.size(); ++i)
        if ((a.pixels[i] != 0) != (b.pixels[i] != 0)) diff++;
    m.pixel_error_rate = a.pixels.empty() ? 0.0 : double(diff) / double(a.pixels.size());
    if (diff == 0) {
        m.psnr_db = ImageMetrics::kInfinitePsnr;
    } else {
        double mse = m.pixel_error_rate;  // binary images with MAX = 1
        m.psnr_db = 10.0 * std::log10(1.0 / mse);
    }
    return m;
}

std::string write_pbm(const BinaryImage& img) {
    std::ostringstream os;
    os << "P1\n" << img.width << " " << img.height << "\n";
    for (size_t y = 0; y < img.height; ++y) {
        for (size_t x = 0; x < img.width; ++x) {
            if (x) os << " ";
            os << int(img.at(x, y));
        }
        os << "\n";
    }
    return os.str();
}

std::string write_pgm(const ImageGrid& img, int max_value) {
    std::ostringstream os;
    os << "P2\n" << img.width << " " << img.height << "\n" << max_value << "\n";
    for (size_t y = 0; y < img.height; ++y) {
        for (size_t x = 0; x < img.width; ++x) {
            double v = std::clamp((img.at(x, y) + 1.0) / 2.0, 0.0, 1.0);
            if (x) os << " ";
            os << int(std::lround(v * max_value));
        }
        os << "\n";
    }
    return os.str();
}

namespace {

// Strips PNM comments and yields whitespace-separated tokens.
std::vector<std::string> pnm_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    return tokens;
}

}  // namespace

BinaryImage read_pbm(const std::string& text) {
    auto tokens = pnm_tokens(text);
    if (tokens.size() < 3 || (tokens[0] != "P1" && tokens[0] != "P2"))
        throw std::runtime_error("expected ASCII P1/P2 image");
    bool gray = tokens[0] == "P2";
    size_t w = std::stoul(tokens[1]);
    size_t h = std::stoul(tokens[2]);
    size_t at = 3;
    int max_value = 1;
    if (gray) {
        if (tokens.size() < 4) throw std::runtime_error("truncated P2 header");
        max_value = std::stoi(tokens[3]);
        at = 4;
    }
    if (tokens.size() - at < w * h) throw std::runtime_error("truncated pixel data");
    BinaryImage img(w, h);
    for (size_t i = 0; i < w * h; ++i) {
        int v = std::stoi(tokens[at + i]);
        img.pixels[i] = gray ? (v * 2 >= max_value ? 1 : 0) : (v != 0 ? 1 : 0);
    }
    return img;
}

BinaryImage read_image_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open image: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_pbm(ss.str());
}

void write_image_file(const std::string& path, const BinaryImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open image for writing: " + path);
    out << write_pbm(img);
}

}  // namespace polycamo
