#pragma once
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tryinfo {

/// Filesystem failure distinct from validation failure, so the CLI can map
/// it to its own exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One sweep's worth of figure data: '#'-prefixed key=value metadata
/// lines, a column header row, then one data row per sweep point. Floats
/// are written with 17 significant digits so rereading reproduces them
/// bit for bit.
struct SweepTable {
  std::string command;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Shortest decimal form that round-trips a double ("%.17g").
std::string format_float(double x);

/// Rejects ragged rows, non-finite entries, and rows out of order in the
/// first column.
void validate_table(const SweepTable& t);

void write_csv(const SweepTable& t, std::ostream& os);
void write_csv_file(const SweepTable& t, const std::string& path);

/// Runs fn(i) for i in [0, count) on `threads` workers (0 = hardware
/// concurrency). Execution order is unspecified; callers get determinism
/// by writing results into per-index slots. Worker exceptions are
/// rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

} // namespace tryinfo
