#pragma once

#include <fdkp/errors.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

// Shared plumbing: grids, least-squares fits, golden-section search, a bounded
// worker pool honouring FDKP_THREADS, deterministic 17-significant-digit CSV
// emission with atomic temp+rename writes, and a flat key=value config reader.

namespace fdkp::util {

std::vector<double> linspace(double a, double b, int n);
std::vector<double> geomspace(double a, double b, int n); // log-uniform, a,b > 0

struct LinFit {
    double slope = 0.0, intercept = 0.0;
};
LinFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);
LinFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> v);

// Golden-section maximisation of a unimodal f on [a,b].
double golden_max(const std::function<double(double)>& f, double a, double b, int iters,
                  double* arg_out = nullptr);

// Worker count: FDKP_THREADS if set (>=1), else hardware concurrency.
int thread_count();
// Runs fn(i) for i in [0,n); chunked over the worker pool.  Callers keep
// determinism by writing results per-index and reducing sequentially.
void parallel_for(int n, const std::function<void(int)>& fn);

std::string format_g17(double v); // %.17g, locale-independent

// Writes rows to <path>.tmp and atomically renames on commit so no partial
// file is ever observed.  All values are emitted with 17 significant digits.
class CsvWriter {
public:
    CsvWriter(std::string path, std::vector<std::string> columns);
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);
    void commit();
    ~CsvWriter();

private:
    std::string path_, tmp_path_;
    std::string buffer_;
    size_t ncols_;
    bool committed_ = false;
};

void atomic_write_text(const std::string& path, const std::string& content);

// Flat "key = value" config lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& path);
double config_num(const std::map<std::string, std::string>& cfg, const std::string& key,
                  double fallback);
std::string config_str(const std::map<std::string, std::string>& cfg, const std::string& key,
                       const std::string& fallback);

} // namespace fdkp::util
