#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "linc/lindblad.hpp"

namespace linc {

void parallel_for(Index n, int jobs, const std::function<void(Index)>& body) {
  if (jobs < 1) throw ConfigurationError("parallel_for: jobs must be >= 1");
  const int workers = int(std::min<Index>(jobs, std::max<Index>(n, 1)));
  std::atomic<Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (Index i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

ImpurityMap impurity_map(const MapSpec& spec, const CircuitParams& linc, const SnailParams& snail,
                         const EnvironmentSpec& env) {
  env.validate();
  if (spec.omegas.size() == 0 || spec.amplitudes.size() == 0)
    throw ConfigurationError("impurity_map: empty grid");
  if (spec.dim < 3) throw InvalidDimension("impurity_map: coupler dimension must be >= 3");
  const auto model = std::make_shared<const DriveModel>(
      spec.circuit == Circuit::linc ? linc_model(linc, pi / 2, spec.dim) : snail_model(snail, spec.dim));
  const RVec e = eig_hermitian(model->h0).energies;

  ImpurityMap out;
  out.omegas = spec.omegas;
  out.amplitudes = spec.amplitudes;
  out.omega_c = e(1) - e(0);
  out.impurity = RMat::Constant(spec.omegas.size(), spec.amplitudes.size(),
                                std::numeric_limits<double>::quiet_NaN());
  EnvironmentSpec envq = env;
  if (!(envq.omega_q > 0)) envq.omega_q = out.omega_c;

  const Index nw = spec.omegas.size(), na = spec.amplitudes.size();
  std::vector<std::string> notes(nw * na);
  parallel_for(nw * na, spec.jobs, [&](Index idx) {
    const Index i = idx / na, j = idx % na;
    const double w = spec.omegas(i), a = spec.amplitudes(j);
    FluxDrive drive;
    drive.phi_dc = pi / 2;
    drive.tones.push_back(Tone{a, w, 0.0});
    if (spec.two_tone) drive.tones.push_back(Tone{a, 2.0 * w, 0.0});
    try {
      const RateModel r = floquet_markov(DrivenHamiltonian{model, drive}, envq, spec.samples, spec.propagator);
      out.impurity(i, j) = r.impurity();
      if (r.steady.degenerate) {
        std::ostringstream os;
        os << "omega_d=" << w << " phi_ac=" << a << ": degenerate steady state";
        notes[idx] = os.str();
      }
    } catch (const Error& ex) {
      std::ostringstream os;
      os << "omega_d=" << w << " phi_ac=" << a << ": " << ex.what();
      notes[idx] = os.str();
    }
  });
  for (auto& n : notes)
    if (!n.empty()) out.diagnostics.push_back(std::move(n));
  return out;
}

std::vector<Peak> find_peaks(const RVec& x, const RVec& y, double threshold) {
  if (x.size() != y.size()) throw DimensionMismatch("find_peaks: x and y differ in length");
  std::vector<Peak> peaks;
  for (Index i = 1; i + 1 < y.size(); ++i) {
    const double l = y(i - 1), c = y(i), r = y(i + 1);
    if (!(c > threshold) || !(c > l) || !(c >= r)) continue;
    Peak p;
    p.index = i;
    p.height = c;
    p.position = x(i);
    const double denom = l - 2.0 * c + r;
    if (denom < 0) {
      const double off = 0.5 * (l - r) / denom;
      p.position = x(i) + off * 0.5 * (x(i + 1) - x(i - 1));
      p.height = c - 0.25 * (l - r) * off;
    }
    peaks.push_back(p);
  }
  return peaks;
}

}  // namespace linc
