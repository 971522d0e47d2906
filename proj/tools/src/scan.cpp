#include "kgdelta/app/scan.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

namespace kgdelta::app {

double Axis::at(std::size_t i) const {
  if (n == 1) return lo;
  const double d = static_cast<double>(n - 1);
  return (lo * static_cast<double>(n - 1 - i) + hi * static_cast<double>(i)) / d;
}

Axis Axis::from_step(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("scan step must be positive");
  if (hi < lo) throw std::invalid_argument("scan range has max < min");
  const auto k = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  const double end = lo + static_cast<double>(k) * step;
  // Keep the requested endpoint when the step divides the range.
  return {lo, std::abs(end - hi) <= 1e-9 * step ? hi : end, k + 1};
}

unsigned effective_threads(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("KGDELTA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && v > 0) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

std::vector<CellResult> scan_cells(const ScanConfig& cfg) {
  for (std::size_t i = 0; i < cfg.omega.n; ++i) {
    if (!(std::abs(cfg.omega.at(i)) < cfg.m)) throw DomainError("scan omega range must lie inside (-m, m)");
  }
  const std::size_t total = cfg.omega.n * cfg.kappa.n;
  std::vector<CellResult> cells(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      try {
        const double w = cfg.omega.at(idx / cfg.kappa.n);
        const double k = cfg.kappa.at(idx % cfg.kappa.n);
        cells[idx] = classify_cell(cfg.m, w, k, cfg.region);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned n = std::min<std::size_t>(effective_threads(cfg.threads), std::max<std::size_t>(total, 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return cells;
}

namespace {

void put(std::string& line, double v) {
  char buf[32];
  // A negative zero would make +-omega rows differ in text.
  if (v == 0.0) v = 0.0;
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, res.ptr);
}

void put(std::string& line, const std::optional<double>& v) {
  if (v) put(line, *v);
}

}  // namespace

void write_scan_csv(const std::vector<CellResult>& cells, std::ostream& out) {
  out << "# schema=1\n";
  out << "omega,kappa,region_code,lambda_re,lambda_im,Delta,K_omega,T_kappa,Omega_kappa\n";
  std::string line;
  for (const auto& c : cells) {
    line.clear();
    put(line, c.omega);
    line += ',';
    put(line, c.kappa);
    line += ',';
    line += to_string(c.code);
    line += ',';
    put(line, c.lambda.real());
    line += ',';
    put(line, c.lambda.imag());
    line += ',';
    put(line, c.delta);
    line += ',';
    put(line, c.k_omega);
    line += ',';
    put(line, c.t_kappa);
    line += ',';
    put(line, c.omega_kappa);
    line += '\n';
    out << line;
  }
}

void write_scan_file(const std::vector<CellResult>& cells, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    write_scan_csv(cells, f);
    f.flush();
    if (!f) {
      f.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace kgdelta::app
