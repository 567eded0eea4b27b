#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ofdm_sensing/cmatrix.hpp"
#include "ofdm_sensing/decimator.hpp"
#include "ofdm_sensing/fos.hpp"

namespace ofdmsense {

struct SweepRow;
struct SnrSweepRow;
struct BenchReport;
struct ComplexityReport;

// All CSV output: 9 significant digits, '.' decimal point, LF line endings,
// mandatory header row.
std::string format_number(double v);

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

using MethodDetections = std::pair<RdmMethod, std::vector<Detection>>;

// method,peak_idx,range_bin,doppler_bin,r_hat_m,v_hat_mps,peak_db
std::string detections_csv(std::span<const MethodDetections> detections);

// Header: "velocity_mps\range_m" followed by the range of every column;
// one row per stored Doppler bin led by its velocity; cells are 20 log10|Y|.
std::string rdm_csv(const Rdm& rdm);

// method,range_bin,range_m,level_db
std::string range_cut_csv(const Rdm& rdm, std::size_t doppler_bin);
// method,doppler_bin,velocity_mps,level_db
std::string velocity_cut_csv(const Rdm& rdm, std::size_t range_bin);

// m,n,re,im with one line per entry; re/im are printed with 17 significant
// digits so an import restores the grid exactly.
std::string echo_grid_csv(const CMatrix& grid);
CMatrix parse_echo_grid_csv(std::string_view text);

// l,re,im
std::string taps_csv(const DecimatorSpec& spec);

// P,mean_snr_db,std_db,trials,gamma_db
std::string sweep_p_csv(std::span<const SweepRow> rows);
// gamma_db,fos_snr_db,dfos_snr_db
std::string snr_sweep_csv(std::span<const SnrSweepRow> rows);
// stage,median_s,min_s,repetitions
std::string bench_csv(const BenchReport& report);
// quantity,value
std::string complexity_csv(const ComplexityReport& report);

}  // namespace ofdmsense
