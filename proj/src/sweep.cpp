#include <tryinfo/sweep.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace tryinfo {

std::string format_float(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void validate_table(const SweepTable& t) {
  if (t.columns.empty()) {
    throw std::invalid_argument("sweep table has no columns");
  }
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    if (row.size() != t.columns.size()) {
      throw std::invalid_argument("sweep row " + std::to_string(r) + " has " +
                                  std::to_string(row.size()) +
                                  " fields, expected " +
                                  std::to_string(t.columns.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c])) {
        throw std::invalid_argument("sweep row " + std::to_string(r) +
                                    " column " + t.columns[c] +
                                    " is not finite");
      }
    }
    if (!(row[0] >= prev)) {
      throw std::invalid_argument("sweep rows are not sorted by " +
                                  t.columns[0] + " at row " +
                                  std::to_string(r));
    }
    prev = row[0];
  }
}

void write_csv(const SweepTable& t, std::ostream& os) {
  validate_table(t);
  os << "# command=" << t.command << "\n";
  for (const auto& [key, value] : t.metadata) {
    os << "# " << key << "=" << value << "\n";
  }
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    os << (c ? "," : "") << t.columns[c];
  }
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << format_float(row[c]);
    }
    os << "\n";
  }
}

void write_csv_file(const SweepTable& t, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw IoError("cannot open " + path + " for writing");
  }
  write_csv(t, os);
  os.flush();
  if (!os) {
    throw IoError("write to " + path + " failed");
  }
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  unsigned workers = threads == 0 ? std::thread::hardware_concurrency()
                                  : threads;
  if (workers == 0) workers = 1;
  if (workers > count) workers = static_cast<unsigned>(count);

  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

} // namespace tryinfo
