#include "fptrace/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fptrace/splitmix64.hpp"

namespace fptrace {

namespace {

// Box-Muller over SplitMix64 uniforms; emits pairs.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = rng_.next_unit();
        double u2 = rng_.next_unit();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return sum;
}

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += a * x[i];
}

void orthogonalize_against_previous(std::vector<std::vector<double>>& rows, int upto) {
    for (int j = 0; j < upto; ++j)
        axpy(rows[upto], -dot(rows[upto], rows[j]), rows[j]);
}

}  // namespace

CarrierBasis make_carriers(int n, int N, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("carrier count must be positive");
    if (N < n)
        throw std::invalid_argument("ambient dimension N must be at least n");
    GaussianStream gauss(seed);
    CarrierBasis basis;
    basis.n = n;
    basis.N = N;
    basis.vectors.assign(n, std::vector<double>(N));
    for (auto& row : basis.vectors)
        for (auto& v : row)
            v = gauss.next();

    // modified Gram-Schmidt with one re-orthogonalization pass
    for (int i = 0; i < n; ++i) {
        orthogonalize_against_previous(basis.vectors, i);
        orthogonalize_against_previous(basis.vectors, i);
        double norm = std::sqrt(dot(basis.vectors[i], basis.vectors[i]));
        if (norm < 1e-12)
            throw std::runtime_error("degenerate carrier draw; retry with another seed");
        for (auto& v : basis.vectors[i])
            v /= norm;
    }
    return basis;
}

std::vector<double> embed(const std::vector<double>& host, const CarrierBasis& carriers,
                          const BinaryCode& code, int user) {
    if (static_cast<int>(host.size()) != carriers.N)
        throw std::invalid_argument("host length does not match carrier dimension");
    if (carriers.n != code.rows())
        throw std::invalid_argument("carrier count does not match code length");
    if (user < 1 || user > code.cols())
        throw std::out_of_range("user index out of range");
    std::vector<double> y = host;
    for (int row = 0; row < code.rows(); ++row)
        if (code.bit(row, user - 1))
            axpy(y, 1.0, carriers.vectors[row]);
    return y;
}

std::vector<double> forge(const BinaryCode& code, const Coalition& coalition,
                          const std::vector<double>& host, const CarrierBasis& carriers,
                          const NoiseSpec& noise) {
    coalition.validate_for(code);
    if (static_cast<int>(host.size()) != carriers.N)
        throw std::invalid_argument("host length does not match carrier dimension");
    if (carriers.n != code.rows())
        throw std::invalid_argument("carrier count does not match code length");

    const int n = code.rows();
    Signature sig = average_signature(code, coalition);
    std::vector<double> y = host;
    for (int row = 0; row < n; ++row)
        if (sig.counts[row] != 0)
            axpy(y, static_cast<double>(sig.counts[row]) / sig.size, carriers.vectors[row]);

    switch (noise.kind) {
        case NoiseKind::none:
            break;
        case NoiseKind::ball: {
            if (noise.delta < 0)
                throw std::invalid_argument("ball radius must be nonnegative");
            SplitMix64 rng(noise.seed);
            GaussianStream gauss(noise.seed ^ 0x5851f42d4c957f2dULL);
            std::vector<double> direction(n);
            double norm_sq = 0.0;
            for (auto& v : direction) {
                v = gauss.next();
                norm_sq += v * v;
            }
            double norm = std::sqrt(norm_sq);
            double u = 1.0 - rng.next_unit();  // uniform in (0,1]
            double radius = noise.delta * u;
            for (int row = 0; row < n; ++row)
                axpy(y, radius * direction[row] / norm, carriers.vectors[row]);
            break;
        }
        case NoiseKind::sparse: {
            if (noise.T < 0)
                throw std::invalid_argument("sparse support bound must be nonnegative");
            if (noise.magnitude <= 0)
                throw std::invalid_argument("sparse magnitude must be positive");
            long long support = std::min<long long>(noise.T, n);  // T > n clamped
            SplitMix64 rng(noise.seed);
            std::vector<int> rows(n);
            for (int i = 0; i < n; ++i)
                rows[i] = i;
            for (long long i = 0; i < support; ++i) {
                std::size_t j = i + rng.next_below(n - i);
                std::swap(rows[i], rows[j]);
                double coeff = (2.0 * rng.next_unit() - 1.0) * noise.magnitude;
                axpy(y, coeff, carriers.vectors[rows[i]]);
            }
            break;
        }
    }
    return y;
}

Syndrome extract_syndrome(const std::vector<double>& y, const std::vector<double>& host,
                          const CarrierBasis& carriers) {
    if (y.size() != host.size() || static_cast<int>(host.size()) != carriers.N)
        throw std::invalid_argument("dimension mismatch in syndrome extraction");
    Syndrome result;
    result.s.resize(carriers.n);
    std::vector<double> diff(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        diff[i] = y[i] - host[i];
    for (int k = 0; k < carriers.n; ++k)
        result.s[k] = dot(diff, carriers.vectors[k]);
    return result;
}

std::vector<double> make_host(int N, int n, std::uint64_t seed) {
    if (N < 1)
        throw std::invalid_argument("host dimension must be positive");
    GaussianStream gauss(seed);
    std::vector<double> host(N);
    double norm_sq = 0.0;
    for (auto& v : host) {
        v = gauss.next();
        norm_sq += v * v;
    }
    double scale = 100.0 * std::sqrt(static_cast<double>(n)) / std::sqrt(norm_sq);
    for (auto& v : host)
        v *= scale;
    return host;
}

NoiseSpec NoiseSpec::parse(const std::string& text, std::uint64_t seed) {
    NoiseSpec spec;
    spec.seed = seed;
    if (text == "none")
        return spec;
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto fields = [&args]() {
        std::vector<std::pair<std::string, std::string>> kv;
        std::istringstream in(args);
        std::string item;
        while (std::getline(in, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("malformed noise parameter: " + item);
            kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
        return kv;
    }();
    if (kind == "ball") {
        spec.kind = NoiseKind::ball;
        for (auto& [key, value] : fields) {
            if (key == "delta")
                spec.delta = std::stod(value);
            else
                throw std::invalid_argument("unknown ball noise parameter: " + key);
        }
    } else if (kind == "sparse") {
        spec.kind = NoiseKind::sparse;
        for (auto& [key, value] : fields) {
            if (key == "T")
                spec.T = std::stoll(value);
            else if (key == "mag")
                spec.magnitude = std::stod(value);
            else
                throw std::invalid_argument("unknown sparse noise parameter: " + key);
        }
    } else {
        throw std::invalid_argument("unknown noise kind: " + kind);
    }
    return spec;
}

std::string NoiseSpec::to_string() const {
    std::ostringstream out;
    switch (kind) {
        case NoiseKind::none:
            out << "none";
            break;
        case NoiseKind::ball:
            out << "ball:delta=" << delta;
            break;
        case NoiseKind::sparse:
            out << "sparse:T=" << T << ",mag=" << magnitude;
            break;
    }
    return out.str();
}

}  // namespace fptrace
