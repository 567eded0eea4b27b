#include "ofdm_sensing/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ofdm_sensing/experiment.hpp"
#include "ofdm_sensing/metrics.hpp"

namespace ofdmsense {
namespace {

std::string format_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double level_db(cplx v) {
    const double mag = std::abs(v);
    return mag > 0.0 ? 20.0 * std::log10(mag) : -300.0;
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string detections_csv(std::span<const MethodDetections> detections) {
    std::string out = "method,peak_idx,range_bin,doppler_bin,r_hat_m,v_hat_mps,peak_db\n";
    for (const auto& [method, dets] : detections) {
        for (std::size_t i = 0; i < dets.size(); ++i) {
            const auto& d = dets[i];
            out += std::string(to_string(method)) + ',' + std::to_string(i) + ',' +
                   std::to_string(d.range_bin) + ',' + std::to_string(d.doppler_bin_signed) + ',' +
                   format_number(d.range_m) + ',' + format_number(d.velocity_mps) + ',' +
                   format_number(20.0 * std::log10(d.peak_mag)) + '\n';
        }
    }
    return out;
}

std::string rdm_csv(const Rdm& rdm) {
    std::string out = "velocity_mps\\range_m";
    for (std::size_t k = 0; k < rdm.range_bins(); ++k) out += ',' + format_number(rdm.range_of_bin(k));
    out += '\n';
    for (std::size_t b = 0; b < rdm.doppler_bins(); ++b) {
        out += format_number(rdm.velocity_of_bin(b));
        for (std::size_t k = 0; k < rdm.range_bins(); ++k)
            out += ',' + format_number(level_db(rdm.values(b, k)));
        out += '\n';
    }
    return out;
}

std::string range_cut_csv(const Rdm& rdm, std::size_t doppler_bin) {
    const auto cut = range_cut_db(rdm, doppler_bin);
    std::string out = "method,range_bin,range_m,level_db\n";
    for (std::size_t k = 0; k < cut.size(); ++k)
        out += std::string(to_string(rdm.method)) + ',' + std::to_string(k) + ',' +
               format_number(rdm.range_of_bin(k)) + ',' + format_number(cut[k]) + '\n';
    return out;
}

std::string velocity_cut_csv(const Rdm& rdm, std::size_t range_bin) {
    const auto cut = doppler_cut_db(rdm, range_bin);
    std::string out = "method,doppler_bin,velocity_mps,level_db\n";
    for (std::size_t b = 0; b < cut.size(); ++b)
        out += std::string(to_string(rdm.method)) + ',' + std::to_string(rdm.signed_doppler_bin(b)) +
               ',' + format_number(rdm.velocity_of_bin(b)) + ',' + format_number(cut[b]) + '\n';
    return out;
}

std::string echo_grid_csv(const CMatrix& grid) {
    std::string out = "m,n,re,im\n";
    for (std::size_t m = 0; m < grid.rows(); ++m)
        for (std::size_t n = 0; n < grid.cols(); ++n)
            out += std::to_string(m) + ',' + std::to_string(n) + ',' +
                   format_exact(grid(m, n).real()) + ',' + format_exact(grid(m, n).imag()) + '\n';
    return out;
}

CMatrix parse_echo_grid_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("m,n,re,im", 0) != 0)
        throw std::invalid_argument("echo grid CSV: missing 'm,n,re,im' header");

    struct Entry {
        std::size_t m, n;
        double re, im;
    };
    std::vector<Entry> entries;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        Entry e{};
        unsigned long long m = 0;
        unsigned long long n = 0;
        if (std::sscanf(line.c_str(), "%llu,%llu,%lf,%lf", &m, &n, &e.re, &e.im) != 4)
            throw std::invalid_argument("echo grid CSV: malformed line " + std::to_string(line_no));
        e.m = m;
        e.n = n;
        rows = std::max(rows, e.m + 1);
        cols = std::max(cols, e.n + 1);
        entries.push_back(e);
    }
    if (entries.size() != rows * cols)
        throw std::invalid_argument("echo grid CSV: expected " + std::to_string(rows * cols) +
                                    " entries for a " + std::to_string(rows) + "x" +
                                    std::to_string(cols) + " grid, found " +
                                    std::to_string(entries.size()));
    CMatrix grid(rows, cols);
    for (const auto& e : entries) grid(e.m, e.n) = {e.re, e.im};
    return grid;
}

std::string taps_csv(const DecimatorSpec& spec) {
    std::string out = "l,re,im\n";
    for (std::size_t l = 0; l < spec.taps.size(); ++l)
        out += std::to_string(l) + ',' + format_number(spec.taps[l].real()) + ',' +
               format_number(spec.taps[l].imag()) + '\n';
    return out;
}

std::string sweep_p_csv(std::span<const SweepRow> rows) {
    std::string out = "P,mean_snr_db,std_db,trials,gamma_db\n";
    for (const auto& r : rows)
        out += std::to_string(r.taps_per_branch) + ',' + format_number(r.mean_snr_db) + ',' +
               format_number(r.std_db) + ',' + std::to_string(r.trials) + ',' +
               format_number(r.gamma_db) + '\n';
    return out;
}

std::string snr_sweep_csv(std::span<const SnrSweepRow> rows) {
    std::string out = "gamma_db,fos_snr_db,dfos_snr_db\n";
    for (const auto& r : rows)
        out += format_number(r.gamma_db) + ',' + format_number(r.fos.snr_rdm_db) + ',' +
               format_number(r.dfos.snr_rdm_db) + '\n';
    return out;
}

std::string bench_csv(const BenchReport& report) {
    std::string out = "stage,median_s,min_s,repetitions\n";
    for (const auto& s : report.stages)
        out += s.stage + ',' + format_number(s.median_s) + ',' + format_number(s.min_s) + ',' +
               std::to_string(s.repetitions) + '\n';
    return out;
}

std::string complexity_csv(const ComplexityReport& r) {
    std::string out = "quantity,value\n";
    out += "fos_rdm_ops," + std::to_string(r.fos_rdm_ops) + '\n';
    out += "dfos_rdm_ops," + std::to_string(r.dfos_rdm_ops) + '\n';
    out += "decimation_ops_once," + std::to_string(r.decimation_ops_once) + '\n';
    out += "decimation_ops_per_frame," + std::to_string(r.decimation_ops_per_frame) + '\n';
    out += "fft_size," + std::to_string(r.fft_size) + '\n';
    out += "ratio_once_accounting," + format_number(r.ratio_once_accounting) + '\n';
    out += "ratio_per_symbol_accounting," + format_number(r.ratio_per_symbol_accounting) + '\n';
    return out;
}

}  // namespace ofdmsense
