#include "qgsw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>
#include <nlohmann/json.hpp>

#include "qgsw/error.hpp"
#include "qgsw/quadrature.hpp"

namespace qgsw::diagnostics {

namespace {

constexpr double pi = std::numbers::pi;

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const size_t k = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + k, v.end());
    double m = v[k];
    if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + k));
    return m;
}

}  // namespace

SpectralField moving_transform(const FrontState& state) {
    SpectralField f = transform(state);
    if (state.frame == Frame::lab && state.time != 0.0) {
        const double shift = DispersionSpec::frame_shift * state.time;
        apply_multiplier(f, [shift](double xi) { return std::polar(1.0, -shift * xi); });
    }
    return f;
}

DiagnosticsRecord make_record(const FrontState& state, const RecordSpec& spec) {
    state.validate();
    const SpectralField f = moving_transform(state);
    DiagnosticsRecord r;
    r.time = state.time;
    r.l2 = l2_norm(state.grid, state.values);
    r.hs = norm(f, NormSpec::sobolev(spec.hs_index));
    r.z = norm(f, NormSpec::z(0.4, 11.0));
    r.b16 = norm(f, NormSpec::bab(1.0, 6.0));
    r.sup = sup_norm(f, spec.sup_pad);
    r.dxi_h = weighted_profile_norm(state);
    r.zero_mode = f.coeffs[0].real();
    r.tail = spectral_tail_fraction(f, spec.dealias);
    return r;
}

DecayFit decay_fit(const std::vector<double>& times, const std::vector<double>& values, double t_min, double t_max) {
    if (times.size() != values.size()) throw ShapeError("decay_fit: times and values differ in length");
    std::vector<double> lx, ly;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_min || times[i] > t_max) continue;
        if (!(values[i] > 0.0) || !(times[i] > 0.0))
            throw DomainError("decay_fit: values and times in the window must be positive");
        lx.push_back(std::log(times[i]));
        ly.push_back(std::log(values[i]));
    }
    const size_t n = lx.size();
    if (n < 8) throw DomainError("decay_fit: need at least 8 samples in the window, got " + std::to_string(n));
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("decay_fit: window has no spread in t");
    DecayFit fit;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    fit.samples = int(n);
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double e = ly[i] - fit.intercept - fit.exponent * lx[i];
        rss += e * e;
    }
    const double se = std::sqrt(rss / double(n - 2) / sxx);
    const boost::math::students_t dist(double(n - 2));
    fit.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
    return fit;
}

double weighted_profile_norm(const FrontState& state) {
    state.validate();
    SpectralField h = to_profile(moving_transform(state), state.time);
    h.coeffs[state.grid.n / 2] = 0.0;
    const std::vector<double> v = inverse(h);
    const Grid& g = state.grid;
    double s = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double xv = g.x(j) * v[j];
        s += xv * xv;
    }
    return std::sqrt(s * g.dx() / (2.0 * pi));
}

int grid_index(const Grid& grid, double xi) {
    const double r = xi / grid.dxi();
    const double k = std::round(r);
    if (std::abs(r - k) > 1e-6 || std::abs(k) >= grid.n / 2)
        throw DomainError("frequency " + std::to_string(xi) + " is not resolved on the grid (spacing " +
                          std::to_string(grid.dxi()) + ")");
    const int m = int(k);
    return m >= 0 ? m : m + grid.n;
}

cplx profile_at(const FrontState& state, double xi) {
    const int m = grid_index(state.grid, xi);
    const SpectralField f = moving_transform(state);
    return f.coeffs[m] * std::polar(1.0, -state.time * dispersion(f.grid.xi(m)));
}

ScatteringSeries scattering_extract(const std::vector<FrontState>& states, double xi_star,
                                    symbols::ThetaNormalization norm) {
    ScatteringSeries s;
    s.xi = xi_star;
    if (states.empty()) return s;
    std::vector<double> abs2;
    for (size_t k = 0; k < states.size(); ++k) {
        const FrontState& st = states[k];
        if (k > 0) {
            if (!(st.time > s.times.back())) throw DomainError("scattering_extract: times must increase");
            if (st.time - s.times.back() > 0.5 + 1e-12 && s.warning.empty())
                s.warning = "cadence " + std::to_string(st.time - s.times.back()) +
                            " exceeds 0.5; Theta integral may be inaccurate";
        }
        const cplx h = profile_at(st, xi_star);
        s.times.push_back(st.time);
        abs2.push_back(std::norm(h));
        const double th = symbols::theta_phase(s.times, abs2, xi_star, st.time, norm);
        s.theta.push_back(th);
        s.h.push_back(h);
        s.v.push_back(std::polar(1.0, th) * h);
    }
    return s;
}

double phase_total_variation(const std::vector<double>& times, const std::vector<cplx>& z, double t_min,
                             double t_max) {
    if (times.size() != z.size()) throw ShapeError("phase_total_variation: length mismatch");
    double tv = 0.0;
    for (size_t k = 0; k + 1 < z.size(); ++k) {
        if (times[k] < t_min || times[k + 1] > t_max) continue;
        if (z[k] == 0.0 || z[k + 1] == 0.0) continue;
        tv += std::abs(std::arg(z[k + 1] / z[k]));
    }
    return tv;
}

double resonance_integral(double b) {
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("resonance_integral: B must be positive");
    auto w = [](double x) { return std::exp(-x * x); };
    // W(u) = int w(x) cos(x u) dx over |x| <= 8 (w < 1e-27 beyond).
    auto w_hat = [&](double u) {
        return integrate_panels([&](double x) { return w(x) * std::cos(x * u); }, -8.0, 8.0, 32);
    };
    // Outer integrand is even; W decays like a Gaussian.
    const double b2 = b * b;
    const double s = integrate_panels([&](double u) { return w(u / b2) * w_hat(u); }, 0.0, 16.0, 64);
    return 2.0 * s;
}

double resonance_integral_check(double xi, double t, double rho) {
    if (!(t >= 0.0) || !(rho > 0.0)) throw DomainError("resonance_integral_check: need t >= 0 and rho > 0");
    const double b = std::sqrt(std::abs(symbols::frak_a(xi)) * t) * rho;
    if (!(b >= 4.0)) throw RegimeError("resonance_integral_check: B = " + std::to_string(b) + " is below 4");
    return std::abs(resonance_integral(b) - 2.0 * pi);
}

void EnergyMonitor::add(const FrontState& state) {
    const SpectralField f = moving_transform(state);
    const double hs = norm(f, NormSpec::sobolev(hs_index));
    const double e = hs * hs;
    const double b26 = norm(f, NormSpec::bab(2.0, 6.0));
    const double b12 = norm(f, NormSpec::bab(1.0, 2.0));
    double sum = 0.0;
    for (int mu = 1; mu <= mu_max; ++mu) sum += std::pow(b12, 2 * mu - 1);
    const double den = e * b26 * sum;
    if (have_prev_ && state.time > prev_t_) {
        const double d = 0.5 * (den + prev_den_);
        if (d > 0.0) {
            times.push_back(0.5 * (state.time + prev_t_));
            ratios.push_back(std::abs(e - prev_e_) / (state.time - prev_t_) / d);
        }
    }
    have_prev_ = true;
    prev_t_ = state.time;
    prev_e_ = e;
    prev_den_ = den;
}

double EnergyMonitor::max_ratio() const { return ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end()); }

double EnergyMonitor::median_ratio() const { return median(ratios); }

bool EnergyMonitor::within(double factor) const { return max_ratio() <= factor * median_ratio(); }

RecordWriter::RecordWriter(const std::string& csv_path, const std::string& jsonl_path,
                           const std::vector<double>& tracked_xi)
    : csv_(csv_path), jsonl_(jsonl_path), tracked_(tracked_xi.size()) {
    if (!csv_) throw std::runtime_error("cannot open " + csv_path);
    if (!jsonl_) throw std::runtime_error("cannot open " + jsonl_path);
    csv_ << std::setprecision(17);
    if (!tracked_xi.empty()) {
        csv_ << "# tracked_xi";
        for (double x : tracked_xi) csv_ << ' ' << x;
        csv_ << '\n';
    }
    csv_ << csv_header(tracked_) << '\n';
}

std::string RecordWriter::csv_header(size_t tracked) {
    std::string h = "time,l2,hs,z,b16,sup,dxi_h,zero_mode,tail";
    for (size_t i = 0; i < tracked; ++i) {
        const std::string k = std::to_string(i);
        h += ",theta_" + k + ",h_re_" + k + ",h_im_" + k + ",v_re_" + k + ",v_im_" + k;
    }
    return h;
}

void RecordWriter::write(const DiagnosticsRecord& r) {
    if (r.tracked.size() != tracked_) throw ShapeError("RecordWriter: tracked count changed");
    csv_ << r.time << ',' << r.l2 << ',' << r.hs << ',' << r.z << ',' << r.b16 << ',' << r.sup << ',' << r.dxi_h
         << ',' << r.zero_mode << ',' << r.tail;
    for (const auto& t : r.tracked)
        csv_ << ',' << t.theta << ',' << t.h.real() << ',' << t.h.imag() << ',' << t.v.real() << ',' << t.v.imag();
    csv_ << '\n';
    csv_.flush();

    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["time"] = r.time;
    j["l2"] = r.l2;
    j["hs"] = r.hs;
    j["z"] = r.z;
    j["b16"] = r.b16;
    j["sup"] = r.sup;
    j["dxi_h"] = r.dxi_h;
    j["zero_mode"] = r.zero_mode;
    j["tail"] = r.tail;
    j["tracked"] = nlohmann::json::array();
    for (const auto& t : r.tracked)
        j["tracked"].push_back({{"xi", t.xi},
                                {"theta", t.theta},
                                {"h", {t.h.real(), t.h.imag()}},
                                {"v", {t.v.real(), t.v.imag()}}});
    jsonl_ << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    jsonl_.flush();
}

RecordStream::RecordStream(RecordSpec spec, std::vector<double> tracked_xi, symbols::ThetaNormalization norm)
    : spec_(spec), xi_(std::move(tracked_xi)), norm_(norm), abs2_(xi_.size()) {}

DiagnosticsRecord RecordStream::add(const FrontState& state) {
    DiagnosticsRecord r = make_record(state, spec_);
    if (!times_.empty() && !(state.time > times_.back())) throw DomainError("RecordStream: times must increase");
    times_.push_back(state.time);
    const bool from_zero = std::abs(times_.front()) <= 1e-12;
    for (size_t i = 0; i < xi_.size(); ++i) {
        TrackedValue tv;
        tv.xi = xi_[i];
        tv.h = profile_at(state, xi_[i]);
        abs2_[i].push_back(std::norm(tv.h));
        tv.theta = from_zero ? symbols::theta_phase(times_, abs2_[i], xi_[i], state.time, norm_)
                             : std::numeric_limits<double>::quiet_NaN();
        tv.v = std::polar(1.0, from_zero ? tv.theta : 0.0) * tv.h;
        r.tracked.push_back(tv);
    }
    records_.push_back(r);
    return r;
}

}  // namespace qgsw::diagnostics
