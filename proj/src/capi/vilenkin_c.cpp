#include "vilenkin/vilenkin.h"

#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "vilenkin/harness.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/martingale.hpp"
#include "vilenkin/transform.hpp"

struct vl_radix {
  vilenkin::Radix radix;
};
struct vl_function {
  vilenkin::CylinderFunction f;
};
struct vl_config {
  vilenkin::SuiteConfig config;
};
struct vl_report {
  vilenkin::Report report;
};

namespace {

thread_local std::string last_error;

vl_status fail(vl_status status, const char* what) {
  last_error = what;
  return status;
}

template <class Fn>
vl_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return VL_OK;
  } catch (const vilenkin::Error& e) {
    switch (e.kind()) {
      case vilenkin::ErrorKind::Domain: return fail(VL_ERR_DOMAIN, e.what());
      case vilenkin::ErrorKind::Capacity: return fail(VL_ERR_CAPACITY, e.what());
      case vilenkin::ErrorKind::Usage: return fail(VL_ERR_USAGE, e.what());
      case vilenkin::ErrorKind::Io: return fail(VL_ERR_IO, e.what());
    }
    return fail(VL_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VL_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(VL_ERR_INTERNAL, e.what());
  }
}

void require(const void* pointer, const char* name) {
  if (!pointer) vilenkin::throw_usage(std::string(name) + " is null");
}

vl_function* wrap(vilenkin::CylinderFunction f) { return new vl_function{std::move(f)}; }

vilenkin::Spectrum as_spectrum(const vilenkin::CylinderFunction& f) {
  return vilenkin::Spectrum(f.radix(), f.resolution(),
                            std::vector<vilenkin::Complex>(f.values().begin(), f.values().end()));
}

}  // namespace

extern "C" {

const char* vl_version(void) { return vilenkin::kVersion; }
const char* vl_last_error(void) { return last_error.c_str(); }
void vl_string_free(char* text) { delete[] text; }

vl_status vl_radix_parse(const char* list, size_t repeat, vl_radix** out) {
  return guarded([&] {
    require(list, "list");
    require(out, "out");
    *out = new vl_radix{vilenkin::parse_radix(list, repeat)};
  });
}

void vl_radix_free(vl_radix* radix) { delete radix; }

size_t vl_radix_capacity(const vl_radix* radix) { return radix ? radix->radix->capacity() : 0; }

uint64_t vl_radix_order(const vl_radix* radix, size_t k) {
  if (!radix || k > radix->radix->capacity()) return 0;
  return radix->radix->order(k);
}

vl_status vl_function_new(const vl_radix* radix, size_t resolution, const double* interleaved,
                          vl_function** out) {
  return guarded([&] {
    require(radix, "radix");
    require(out, "out");
    if (resolution > radix->radix->capacity()) {
      vilenkin::throw_capacity("resolution exceeds radix capacity");
    }
    vilenkin::CylinderFunction f(radix->radix, resolution);
    if (interleaved) {
      for (vilenkin::Index t = 0; t < f.size(); ++t) {
        f[t] = {interleaved[2 * t], interleaved[2 * t + 1]};
      }
    }
    *out = wrap(std::move(f));
  });
}

void vl_function_free(vl_function* f) { delete f; }

uint64_t vl_function_size(const vl_function* f) { return f ? f->f.size() : 0; }

vl_status vl_function_values(const vl_function* f, double* interleaved, size_t capacity) {
  return guarded([&] {
    require(f, "f");
    require(interleaved, "interleaved");
    if (capacity < 2 * f->f.size()) vilenkin::throw_usage("output buffer too small");
    for (vilenkin::Index t = 0; t < f->f.size(); ++t) {
      interleaved[2 * t] = f->f[t].real();
      interleaved[2 * t + 1] = f->f[t].imag();
    }
  });
}

vl_status vl_forward(const vl_function* f, vl_function** spectrum) {
  return guarded([&] {
    require(f, "f");
    require(spectrum, "spectrum");
    const auto s = vilenkin::forward(f->f);
    *spectrum = wrap(vilenkin::CylinderFunction(
        s.radix(), s.resolution(), std::vector<vilenkin::Complex>(s.values().begin(), s.values().end())));
  });
}

vl_status vl_inverse(const vl_function* spectrum, vl_function** f) {
  return guarded([&] {
    require(spectrum, "spectrum");
    require(f, "f");
    *f = wrap(vilenkin::inverse(as_spectrum(spectrum->f)));
  });
}

vl_status vl_partial_sum(const vl_function* f, uint64_t n, vl_function** out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = wrap(vilenkin::partial_sum(f->f, n));
  });
}

vl_status vl_dirichlet(const vl_radix* radix, size_t resolution, uint64_t n, vl_function** out) {
  return guarded([&] {
    require(radix, "radix");
    require(out, "out");
    *out = wrap(vilenkin::dirichlet_closed(n, resolution, radix->radix));
  });
}

vl_status vl_hardy_norm(const vl_function* f, double p, double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = vilenkin::hardy_norm(f->f, p);
  });
}

vl_status vl_weak_lp_norm(const vl_function* f, double p, double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = vilenkin::weak_lp_norm(f->f, p);
  });
}

vl_status vl_config_new(vl_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new vl_config{};
  });
}

void vl_config_free(vl_config* config) { delete config; }

vl_status vl_config_set(vl_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->config.set(key, value);
  });
}

vl_status vl_run(const vl_config* config, const char* command, const char* argument,
                 vl_report** out) {
  return guarded([&] {
    require(config, "config");
    require(command, "command");
    require(out, "out");
    *out = new vl_report{vilenkin::run_command(command, argument ? argument : "", config->config)};
  });
}

void vl_report_free(vl_report* report) { delete report; }

int vl_report_passed(const vl_report* report) { return report && report->report.passed() ? 1 : 0; }

vl_status vl_report_render(const vl_report* report, const char* format, char** text) {
  return guarded([&] {
    require(report, "report");
    require(format, "format");
    require(text, "text");
    const auto rendered = vilenkin::render(report->report, format);
    char* buffer = new char[rendered.size() + 1];
    std::memcpy(buffer, rendered.c_str(), rendered.size() + 1);
    *text = buffer;
  });
}

vl_status vl_report_write(const vl_report* report, const char* format, const char* path) {
  return guarded([&] {
    require(report, "report");
    require(format, "format");
    require(path, "path");
    vilenkin::emit(report->report, format, path);
  });
}

vl_status vl_report_constant(const vl_report* report, const char* key, double* out) {
  return guarded([&] {
    require(report, "report");
    require(key, "key");
    require(out, "out");
    const auto it = report->report.constants.find(key);
    if (it == report->report.constants.end()) {
      vilenkin::throw_usage(std::string("report has no constant '") + key + "'");
    }
    *out = it->second.value;
  });
}

vl_status vl_regression_compare(vl_report* report, const char* path) {
  return guarded([&] {
    require(report, "report");
    require(path, "path");
    vilenkin::RegressionStore::load(path).compare(report->report);
  });
}

vl_status vl_regression_record(const vl_report* report, const char* path) {
  return guarded([&] {
    require(report, "report");
    require(path, "path");
    auto store = std::filesystem::exists(path) ? vilenkin::RegressionStore::load(path)
                                               : vilenkin::RegressionStore{};
    store.record(report->report);
    store.save(path);
  });
}

}  // extern "C"
