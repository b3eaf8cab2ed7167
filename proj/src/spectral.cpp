#include <fdkp/spectral.hpp>

#include <fdkp/bump.hpp>
#include <fdkp/symbol.hpp>
#include <fdkp/util.hpp>

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

namespace fdkp::spectral {

namespace {

using cplx = std::complex<double>;

bool is_pow2(int n) { return n >= 2 && (n & (n - 1)) == 0; }

void check_grid(int n1, int n2, double L1, double L2) {
    if (!is_pow2(n1) || !is_pow2(n2))
        throw domain_error("spectral: grid sizes must be powers of two (>= 2)");
    if (!(L1 > 0.0) || !(L2 > 0.0) || !std::isfinite(L1) || !std::isfinite(L2))
        throw domain_error("spectral: domain lengths must be positive and finite");
}

// FFTW planning is not thread-safe (execution is), so plan creation sits
// behind a mutex and plans are cached per (n1, n2, direction).  Plans carry
// FFTW_UNALIGNED so the new-array execute interface accepts whatever buffer
// std::vector hands us.
class PlanCache {
public:
    void execute(int n1, int n2, int sign, cplx* data) {
        fftw_plan p;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            const auto key = std::make_tuple(n1, n2, sign);
            const auto it = plans_.find(key);
            if (it != plans_.end()) {
                p = it->second;
            } else {
                std::vector<cplx> buf(static_cast<std::size_t>(n1) * n2);
                p = fftw_plan_dft_2d(n1, n2, reinterpret_cast<fftw_complex*>(buf.data()),
                                     reinterpret_cast<fftw_complex*>(buf.data()), sign,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
                if (!p) throw std::runtime_error("spectral: fftw plan creation failed");
                plans_.emplace(key, p);
            }
        }
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data));
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache c;
    return c;
}

void fft(int n1, int n2, std::vector<cplx>& data, int sign) {
    plan_cache().execute(n1, n2, sign, data.data());
}

} // namespace

namespace detail {
void fft2(int n1, int n2, std::complex<double>* data, int sign) {
    plan_cache().execute(n1, n2, sign, data);
}
} // namespace detail

double SpectralField2D::xi1(int i) const { return 2.0 * M_PI * ktilde1(i) / L1_; }
double SpectralField2D::xi2(int j) const { return 2.0 * M_PI * ktilde2(j) / L2_; }

SpectralField2D SpectralField2D::from_values(int n1, int n2, double L1, double L2,
                                             std::vector<double> values) {
    check_grid(n1, n2, L1, L2);
    if (values.size() != static_cast<std::size_t>(n1) * n2)
        throw domain_error("from_values: size mismatch");
    for (double v : values)
        if (!std::isfinite(v)) throw domain_error("from_values: non-finite sample");

    SpectralField2D f;
    f.n1_ = n1;
    f.n2_ = n2;
    f.L1_ = L1;
    f.L2_ = L2;
    f.values_ = std::move(values);
    std::vector<cplx> work(f.values_.begin(), f.values_.end());
    fft(n1, n2, work, FFTW_FORWARD);
    const double scale = 1.0 / (static_cast<double>(n1) * n2);
    for (cplx& c : work) c *= scale;
    f.coeffs_ = std::move(work);
    return f;
}

SpectralField2D SpectralField2D::from_coeffs(int n1, int n2, double L1, double L2,
                                             std::vector<std::complex<double>> coeffs) {
    check_grid(n1, n2, L1, L2);
    if (coeffs.size() != static_cast<std::size_t>(n1) * n2)
        throw domain_error("from_coeffs: size mismatch");

    // Project onto the Hermitian subspace: c_k <- (c_k + conj(c_{-k})) / 2.
    std::vector<cplx> sym(coeffs.size());
    for (int i = 0; i < n1; ++i) {
        const int im = (n1 - i) % n1;
        for (int j = 0; j < n2; ++j) {
            const int jm = (n2 - j) % n2;
            const cplx a = coeffs[static_cast<std::size_t>(i) * n2 + j];
            const cplx b = coeffs[static_cast<std::size_t>(im) * n2 + jm];
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw domain_error("from_coeffs: non-finite coefficient");
            sym[static_cast<std::size_t>(i) * n2 + j] = 0.5 * (a + std::conj(b));
        }
    }

    SpectralField2D f;
    f.n1_ = n1;
    f.n2_ = n2;
    f.L1_ = L1;
    f.L2_ = L2;
    f.coeffs_ = sym;
    fft(n1, n2, sym, FFTW_BACKWARD); // unnormalised: sum_k c_k e^{+i...}
    f.values_.resize(sym.size());
    for (std::size_t idx = 0; idx < sym.size(); ++idx) f.values_[idx] = sym[idx].real();
    return f;
}

SpectralField2D SpectralField2D::from_function(int n1, int n2, double L1, double L2,
                                               const std::function<double(double, double)>& fn) {
    check_grid(n1, n2, L1, L2);
    std::vector<double> vals(static_cast<std::size_t>(n1) * n2);
    for (int i = 0; i < n1; ++i) {
        const double x1 = L1 * i / n1;
        for (int j = 0; j < n2; ++j) vals[static_cast<std::size_t>(i) * n2 + j] = fn(x1, L2 * j / n2);
    }
    return from_values(n1, n2, L1, L2, std::move(vals));
}

SpectralField2D SpectralField2D::zero(int n1, int n2, double L1, double L2) {
    check_grid(n1, n2, L1, L2);
    SpectralField2D f;
    f.n1_ = n1;
    f.n2_ = n2;
    f.L1_ = L1;
    f.L2_ = L2;
    f.values_.assign(static_cast<std::size_t>(n1) * n2, 0.0);
    f.coeffs_.assign(static_cast<std::size_t>(n1) * n2, 0.0);
    return f;
}

double SpectralField2D::l2_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(cell_area() * s);
}

double SpectralField2D::lp_norm(double p) const {
    if (!(p >= 1.0) || !std::isfinite(p)) throw domain_error("lp_norm: need 1 <= p < inf");
    double s = 0.0;
    for (double v : values_) s += std::pow(std::abs(v), p);
    return std::pow(cell_area() * s, 1.0 / p);
}

double SpectralField2D::linf_norm() const {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

double SpectralField2D::sobolev_norm(double s) const {
    double acc = 0.0;
    for (int i = 0; i < n1_; ++i)
        for (int j = 0; j < n2_; ++j) {
            const double xi = std::hypot(xi1(i), xi2(j));
            acc += std::pow(1.0 + xi * xi, s) * std::norm(coeffs_[static_cast<std::size_t>(i) * n2_ + j]);
        }
    return std::sqrt(L1_ * L2_ * acc);
}

double SpectralField2D::hermitian_defect() const {
    double worst = 0.0;
    for (int i = 0; i < n1_; ++i) {
        const int im = (n1_ - i) % n1_;
        for (int j = 0; j < n2_; ++j) {
            const int jm = (n2_ - j) % n2_;
            worst = std::max(worst, std::abs(coeffs_[static_cast<std::size_t>(i) * n2_ + j] -
                                             std::conj(coeffs_[static_cast<std::size_t>(im) * n2_ + jm])));
        }
    }
    return worst;
}

SpectralField2D SpectralField2D::apply_multiplier(
    const std::function<std::complex<double>(double, double)>& mult) const {
    std::vector<cplx> c(coeffs_.size());
    for (int i = 0; i < n1_; ++i)
        for (int j = 0; j < n2_; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * n2_ + j;
            c[idx] = coeffs_[idx] * mult(xi1(i), xi2(j));
        }
    return from_coeffs(n1_, n2_, L1_, L2_, std::move(c));
}

SpectralField2D SpectralField2D::derivative(int axis) const {
    if (axis != 1 && axis != 2) throw domain_error("derivative: axis must be 1 or 2");
    const cplx I{0.0, 1.0};
    if (axis == 1) return apply_multiplier([&](double x1, double) { return I * x1; });
    return apply_multiplier([&](double, double x2) { return I * x2; });
}

SpectralField2D add(const SpectralField2D& f, const SpectralField2D& g, double cf, double cg) {
    if (f.n1() != g.n1() || f.n2() != g.n2() || f.L1() != g.L1() || f.L2() != g.L2())
        throw domain_error("add: mismatched grids");
    std::vector<double> v(f.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cf * f.values()[i] + cg * g.values()[i];
    return SpectralField2D::from_values(f.n1(), f.n2(), f.L1(), f.L2(), std::move(v));
}

double linf_distance(const SpectralField2D& f, const SpectralField2D& g) {
    if (f.values().size() != g.values().size()) throw domain_error("linf_distance: size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < f.values().size(); ++i)
        d = std::max(d, std::abs(f.values()[i] - g.values()[i]));
    return d;
}

double l2_distance(const SpectralField2D& f, const SpectralField2D& g) {
    return add(f, g, 1.0, -1.0).l2_norm();
}

double DyadicProjector::symbol(double abs_xi) const {
    if (!(lambda > 0.0)) throw domain_error("DyadicProjector: need lambda > 0");
    const double s = abs_xi / lambda;
    switch (kind) {
        case ProjKind::annulus: return bump::rho(s);
        case ProjKind::low_pass: return bump::chi(s);
        case ProjKind::high_pass: return 1.0 - bump::chi(s);
    }
    return 0.0;
}

SpectralField2D project(const SpectralField2D& f, const DyadicProjector& p) {
    return f.apply_multiplier([&](double x1, double x2) -> std::complex<double> {
        return p.symbol(std::hypot(x1, x2));
    });
}

// The integer-frequency loop (rather than apply_multiplier) keeps control of
// the sign on the ktilde1 = 0 and Nyquist columns, both of which carry
// sgn := 0; the multiplier there is exactly 1 and realness survives without
// projection.
SpectralField2D propagate_linear(const SpectralField2D& f, double beta, double t) {
    if (beta < 0.0 || !std::isfinite(beta) || !std::isfinite(t))
        throw domain_error("propagate_linear: bad beta or t");
    const int n1 = f.n1(), n2 = f.n2();
    const cplx I{0.0, 1.0};
    std::vector<cplx> c(f.coeffs());
    for (int i = 0; i < n1; ++i) {
        const int k1 = f.ktilde1(i);
        const double sgn = (k1 == 0 || k1 == n1 / 2) ? 0.0 : (k1 > 0 ? 1.0 : -1.0);
        if (sgn == 0.0) continue;
        for (int j = 0; j < n2; ++j) {
            const double rxi = std::hypot(f.xi1(i), f.xi2(j));
            c[static_cast<std::size_t>(i) * n2 + j] *= std::exp(I * (t * sgn * symbol::m(beta, rxi)));
        }
    }
    return SpectralField2D::from_coeffs(n1, n2, f.L1(), f.L2(), std::move(c));
}

bool MixedNormSpec::admissible() const {
    const bool q_ok = q > 2.0; // includes q = inf
    const bool r_ok = r >= 2.0 && std::isfinite(r);
    if (!q_ok || !r_ok) return false;
    const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
    return std::abs(1.0 / r + inv_q - 0.5) < 1e-12;
}

double time_lq(const std::vector<double>& space_norms, double dt, double q) {
    if (space_norms.empty()) throw domain_error("time_lq: no samples");
    if (!(q > 1.0)) throw domain_error("time_lq: need q > 1");
    if (std::isinf(q)) return *std::max_element(space_norms.begin(), space_norms.end());
    if (!(dt > 0.0)) throw domain_error("time_lq: need dt > 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < space_norms.size(); ++i) {
        const double w = (i == 0 || i + 1 == space_norms.size()) ? 0.5 : 1.0;
        acc += w * std::pow(space_norms[i], q);
    }
    return std::pow(dt * acc, 1.0 / q);
}

double mixed_norm(const std::vector<SpectralField2D>& samples, double dt,
                  const MixedNormSpec& spec) {
    std::vector<double> norms;
    norms.reserve(samples.size());
    for (const auto& f : samples) norms.push_back(f.lp_norm(spec.r));
    return time_lq(norms, dt, spec.q);
}

namespace {

// Frequency-localised Gaussian packet shared by the dispersive and
// Strichartz experiments: width 1/(8 lambda) about the torus centre, then
// the dyadic annulus projector at lambda.
SpectralField2D packet(double beta, double lambda, int n, double L, double t_needed) {
    if (!(lambda > 0.0)) throw domain_error("packet: need lambda > 0");
    const double sigma = 1.0 / (8.0 * lambda);
    double mp2 = symbol::m_prime(beta, 2.0 * lambda);
    const double reach = 4.0 * sigma + mp2 * t_needed;
    if (reach > 0.5 * L) {
        const double t_max = (0.5 * L - 4.0 * sigma) / mp2;
        throw domain_error("packet: horizon reaches the boundary; largest admissible t = " +
                           util::format_g17(t_max));
    }
    const double c1 = 0.5 * L, c2 = 0.5 * L;
    auto gauss = [&](double x1, double x2) {
        const double d1 = x1 - c1, d2 = x2 - c2;
        return std::exp(-(d1 * d1 + d2 * d2) / (2.0 * sigma * sigma));
    };
    const auto g = SpectralField2D::from_function(n, n, L, L, gauss);
    return project(g, DyadicProjector{lambda, ProjKind::annulus});
}

double predicted_constant(double beta, double lambda) {
    return std::pow(symbol::bracket(lambda), 1.5) / symbol::bracket(std::sqrt(beta) * lambda);
}

} // namespace

DispersiveResult dispersive_sup_experiment(double beta, double lambda,
                                           const std::vector<double>& t_list, int n, double L) {
    if (t_list.empty()) throw domain_error("dispersive: empty t list");
    double t_needed = 0.0;
    for (double t : t_list) {
        if (!(t >= 0.0)) throw domain_error("dispersive: need t >= 0");
        t_needed = std::max(t_needed, t);
    }
    const SpectralField2D f = packet(beta, lambda, n, L, t_needed);

    DispersiveResult res;
    res.f_l1 = f.l1_norm();
    res.f_l2 = f.l2_norm();
    res.predicted = predicted_constant(beta, lambda);
    res.rows.resize(t_list.size());
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        const double t = t_list[i];
        const double sup = propagate_linear(f, beta, t).linf_norm();
        res.rows[i] = {t, sup, sup * t / (res.predicted * res.f_l1)};
    }
    return res;
}

StrichartzResult strichartz_experiment(double beta, double lambda, const MixedNormSpec& spec,
                                       int nt, int n, double L) {
    if (!spec.admissible()) throw domain_error("strichartz: inadmissible (q, r) pair");
    if (nt < 2 || !(spec.T > 0.0)) throw domain_error("strichartz: need nt >= 2, T > 0");
    const SpectralField2D f = packet(beta, lambda, n, L, spec.T);
    const double dt = spec.T / nt;

    std::vector<double> norms(nt + 1);
    for (int i = 0; i <= nt; ++i) norms[i] = propagate_linear(f, beta, dt * i).lp_norm(spec.r);

    StrichartzResult res;
    res.norm = time_lq(norms, dt, spec.q);
    res.denom = std::pow(predicted_constant(beta, lambda), 0.5 - 1.0 / spec.r) * f.l2_norm();
    res.ratio = res.norm / res.denom;
    return res;
}

SpectralField2D gaussian_derivative_data(int n, double L, double amp) {
    auto psi = SpectralField2D::from_function(n, n, L, L, [&](double x1, double x2) {
        auto g = [&](double c1, double c2, double w) {
            const double d1 = x1 - c1, d2 = x2 - c2;
            return std::exp(-(d1 * d1 + d2 * d2) / (2.0 * w * w));
        };
        return g(0.40 * L, 0.50 * L, L / 8.0) + 0.7 * g(0.60 * L, 0.45 * L, L / 10.0);
    });
    const auto u = psi.derivative(1);
    // Confine the data to the dealias band (same kcap convention as
    // random_hs_data): evolution then transports exactly the energy this
    // field carries, with no spectral tail feeding the cubic diagnostics.
    const int kcap = (n - 1) / 3;
    std::vector<cplx> c(u.coeffs());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(u.ktilde1(i)) > kcap || std::abs(u.ktilde2(j)) > kcap)
                c[static_cast<std::size_t>(i) * n + j] = 0.0;
    auto banded = SpectralField2D::from_coeffs(n, n, L, L, std::move(c));
    // Rescale in coefficient space: the derivative's exact zero mean (and any
    // exact spectral zeros) must survive the normalisation.
    const double s = amp / banded.linf_norm();
    std::vector<cplx> cs(banded.coeffs());
    for (cplx& z : cs) z *= s;
    return SpectralField2D::from_coeffs(n, n, L, L, std::move(cs));
}

SpectralField2D random_hs_data(int n, double L, double decay, double amp, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> usign(0.0, 1.0);
    const auto probe = SpectralField2D::zero(n, n, L, L);
    const int kcap = (n - 1) / 3;
    std::vector<cplx> c(static_cast<std::size_t>(n) * n, 0.0);
    const cplx I{0.0, 1.0};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int k1 = probe.ktilde1(i), k2 = probe.ktilde2(j);
            if ((k1 == 0 && k2 == 0) || std::abs(k1) > kcap || std::abs(k2) > kcap) continue;
            const int im = (n - i) % n, jm = (n - j) % n;
            if (std::make_pair(i, j) > std::make_pair(im, jm)) continue; // partner writes it
            const double xin = std::hypot(probe.xi1(i), probe.xi2(j));
            const double mag = std::pow(1.0 + xin * xin, -0.5 * decay);
            const std::size_t idx = static_cast<std::size_t>(i) * n + j;
            const std::size_t idxm = static_cast<std::size_t>(im) * n + jm;
            if (idx == idxm) {
                c[idx] = usign(gen) < 0.5 ? -mag : mag;
            } else {
                const cplx z = mag * std::exp(I * uphase(gen));
                c[idx] = z;
                c[idxm] = std::conj(z);
            }
        }
    const auto f = SpectralField2D::from_coeffs(n, n, L, L, std::move(c));
    // As above: rescale the coefficients so the band limit stays exact.
    const double s = amp / f.linf_norm();
    std::vector<cplx> cs(f.coeffs());
    for (cplx& z : cs) z *= s;
    return SpectralField2D::from_coeffs(n, n, L, L, std::move(cs));
}

static_assert(std::endian::native == std::endian::little,
              "field snapshots are defined little-endian");

void write_field(const std::string& path, const SpectralField2D& f, double time) {
    unsigned char header[64] = {};
    std::memcpy(header, "FDKPFLD\0", 8);
    const std::uint32_t n1 = static_cast<std::uint32_t>(f.n1());
    const std::uint32_t n2 = static_cast<std::uint32_t>(f.n2());
    const double L1 = f.L1(), L2 = f.L2();
    std::memcpy(header + 8, &n1, 4);
    std::memcpy(header + 12, &n2, 4);
    std::memcpy(header + 16, &L1, 8);
    std::memcpy(header + 24, &L2, 8);
    std::memcpy(header + 32, &time, 8);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_field: cannot open " + tmp);
        out.write(reinterpret_cast<const char*>(header), sizeof header);
        out.write(reinterpret_cast<const char*>(f.values().data()),
                  static_cast<std::streamsize>(f.values().size() * sizeof(double)));
        if (!out) throw std::runtime_error("write_field: short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

SpectralField2D read_field(const std::string& path, double* time_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_field: cannot open " + path);
    unsigned char header[64];
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (!in || std::memcmp(header, "FDKPFLD\0", 8) != 0)
        throw std::runtime_error("read_field: bad magic in " + path);
    std::uint32_t n1, n2;
    double L1, L2, time;
    std::memcpy(&n1, header + 8, 4);
    std::memcpy(&n2, header + 12, 4);
    std::memcpy(&L1, header + 16, 8);
    std::memcpy(&L2, header + 24, 8);
    std::memcpy(&time, header + 32, 8);
    if (n1 > (1u << 20) || n2 > (1u << 20)) throw std::runtime_error("read_field: absurd grid size");

    std::vector<double> vals(static_cast<std::size_t>(n1) * n2);
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!in) throw std::runtime_error("read_field: truncated payload in " + path);
    if (time_out) *time_out = time;
    return SpectralField2D::from_values(static_cast<int>(n1), static_cast<int>(n2), L1, L2,
                                        std::move(vals));
}

} // namespace fdkp::spectral
