#include "vilenkin/transform.hpp"

#include "vilenkin/characters.hpp"

namespace vilenkin {

namespace {

void require_index(Index n, Index limit, const char* what) {
  if (n > limit) {
    throw_capacity(std::string(what) + " index " + std::to_string(n) + " exceeds M_N = " +
                   std::to_string(limit));
  }
}

// Applies the length-m_j DFT along every axis. `conjugate` selects the
// analysis direction (conj roots) used by the forward transform.
void axis_passes(const RadixSequence& radix, std::size_t resolution, std::span<Complex> data,
                 bool conjugate) {
  std::vector<Complex> line;
  std::vector<Complex> out;
  const Index total = data.size();
  for (std::size_t j = 0; j < resolution; ++j) {
    const unsigned mj = radix.m(j);
    const Index stride = radix.order(j);
    const Index block = radix.order(j + 1);
    line.resize(mj);
    out.resize(mj);
    for (Index outer = 0; outer < total; outer += block) {
      for (Index a = 0; a < stride; ++a) {
        const Index base = outer + a;
        for (unsigned u = 0; u < mj; ++u) line[u] = data[base + u * stride];
        for (unsigned k = 0; k < mj; ++k) {
          Complex acc{};
          for (unsigned u = 0; u < mj; ++u) {
            const Complex& w = radix.root(j, (k * u) % mj);
            acc += line[u] * (conjugate ? std::conj(w) : w);
          }
          out[k] = acc;
        }
        for (unsigned k = 0; k < mj; ++k) data[base + k * stride] = out[k];
      }
    }
  }
}

}  // namespace

Complex fourier_coefficient(const CylinderFunction& f, Index k) {
  if (k >= f.size()) {
    throw_capacity("coefficient index " + std::to_string(k) + " is not below M_N = " +
                   std::to_string(f.size()));
  }
  Complex acc{};
  for (Index x = 0; x < f.size(); ++x) {
    acc += f[x] * std::conj(character(*f.radix(), f.resolution(), k, x));
  }
  return acc / static_cast<double>(f.size());
}

Spectrum forward(const CylinderFunction& f) {
  std::vector<Complex> data(f.values().begin(), f.values().end());
  axis_passes(*f.radix(), f.resolution(), data, true);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
  return Spectrum(f.radix(), f.resolution(), std::move(data));
}

CylinderFunction inverse(const Spectrum& spectrum) {
  std::vector<Complex> data(spectrum.values().begin(), spectrum.values().end());
  axis_passes(*spectrum.radix(), spectrum.resolution(), data, false);
  return CylinderFunction(spectrum.radix(), spectrum.resolution(), std::move(data));
}

CylinderFunction partial_sum(const Spectrum& spectrum, Index n) {
  require_index(n, spectrum.size(), "partial sum");
  if (n == 0) return CylinderFunction(spectrum.radix(), spectrum.resolution());
  Spectrum truncated = spectrum;
  for (Index k = n; k < truncated.size(); ++k) truncated[k] = Complex{};
  return inverse(truncated);
}

CylinderFunction partial_sum(const CylinderFunction& f, Index n) {
  require_index(n, f.size(), "partial sum");
  return partial_sum(forward(f), n);
}

CylinderFunction partial_sum_via_kernel(const CylinderFunction& f, Index n) {
  require_index(n, f.size(), "partial sum");
  const auto& radix = *f.radix();
  const std::size_t N = f.resolution();
  std::vector<Complex> kernel(f.size());
  for (Index x = 0; x < f.size(); ++x) {
    Complex acc{};
    for (Index k = 0; k < n; ++k) acc += character(radix, N, k, x);
    kernel[x] = acc;
  }
  CylinderFunction out(f.radix(), N);
  const double scale = 1.0 / static_cast<double>(f.size());
  for (Index x = 0; x < f.size(); ++x) {
    Complex acc{};
    for (Index t = 0; t < f.size(); ++t) acc += f[t] * kernel[sub_ranks(radix, N, x, t)];
    out[x] = acc * scale;
  }
  return out;
}

}  // namespace vilenkin
