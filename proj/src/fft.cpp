#include "prh/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "prh/errors.hpp"

namespace prh {

namespace {

// FFTW planner calls are not thread-safe; executing a plan on fresh buffers
// is.  Plans are created once per (dim, n, sign) with FFTW_ESTIMATE (which is
// deterministic and needs no warm-up buffers) and FFTW_UNALIGNED so they can
// run on any caller-provided storage via fftw_execute_dft.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    fftw_plan get(int dim, int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(dim, n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<fftw_complex> buf(static_cast<std::size_t>(std::pow(n, dim)));
        int dims[3] = {n, n, n};
        fftw_plan p = fftw_plan_dft(dim, dims, buf.data(), buf.data(), sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw InvariantError("fftw plan creation failed");
        plans_[key] = p;
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void run_dft(const Lattice& lat, std::vector<std::complex<double>>& data, int sign) {
    fftw_plan p = PlanCache::instance().get(lat.dim, lat.points_per_axis, sign);
    auto* raw = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, raw, raw);
}

}  // namespace

SpectralField forward_transform(const Field& f) {
    SpectralField out;
    out.lattice = f.lattice;
    out.coefficients.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out.coefficients[i] = f.values[i];
    run_dft(f.lattice, out.coefficients, FFTW_FORWARD);
    const double cv = f.lattice.cell_volume;
    for (auto& c : out.coefficients) c *= cv;
    return out;
}

Field inverse_transform(const SpectralField& F) {
    std::vector<std::complex<double>> data = F.coefficients;
    run_dft(F.lattice, data, FFTW_BACKWARD);
    const double scale = 1.0 / F.lattice.volume();
    Field out(F.lattice);
    double max_mod = 0.0, max_imag = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] *= scale;
        out.values[i] = data[i].real();
        max_mod = std::max(max_mod, std::abs(data[i]));
        max_imag = std::max(max_imag, std::abs(data[i].imag()));
    }
    if (max_mod > 0.0 && max_imag > 1e-10 * max_mod)
        throw InvariantError("inverse_transform: coefficients are not conjugate-symmetric");
    return out;
}

Field apply_multiplier(const Field& f, const std::vector<double>& multiplier) {
    if (multiplier.size() != f.size())
        throw InvariantError("apply_multiplier: multiplier size does not match lattice");
    std::vector<std::complex<double>> data(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) data[i] = f.values[i];
    run_dft(f.lattice, data, FFTW_FORWARD);
    for (std::size_t i = 0; i < f.size(); ++i) data[i] *= multiplier[i];
    run_dft(f.lattice, data, FFTW_BACKWARD);
    const double scale = 1.0 / f.lattice.size(); // cv/L^N cancels to 1/n^N
    Field out(f.lattice);
    for (std::size_t i = 0; i < f.size(); ++i) out.values[i] = data[i].real() * scale;
    return out;
}

}  // namespace prh
