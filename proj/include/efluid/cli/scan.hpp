#pragma once

#include "efluid/hydro/generic.hpp"
#include "efluid/linear/biwave.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace efluid::cli {

/// One regime-map row. Parameter fields are empty for menu pairings.
struct ScanRow {
    std::string point;
    std::optional<hydro::ConjugateParams> params;
    double a = 0.0;
    double b = 0.0;
    linear::Regime regime = linear::Regime::degenerate;
    /// Largest Im(omega) at the scan wavenumber; 0 when nothing grows.
    double max_growth = 0.0;
};

/// Runs `count` independent tasks on `threads` workers (0 = hardware
/// concurrency). Results are returned in task order; the exception of the
/// lowest failing task index is rethrown.
std::vector<ScanRow> run_tasks(std::size_t count, unsigned threads, const std::function<ScanRow(std::size_t)>& task);

/// Row for one conjugate parameter point at wavenumber k.
ScanRow scan_params_point(const hydro::ConjugateParams& p, double k, std::string point);

/// Row for one single-term menu pairing. The pairing's right-hand side is
/// also evaluated once on a small 3D grid to exercise the operators.
ScanRow scan_menu_point(hydro::TermKind q1, hydro::TermKind q2, double k);

/// The 4 x 5 single-term pairings in menu order.
std::vector<std::pair<hydro::TermKind, hydro::TermKind>> menu_pairings();

/// Parses a scan configuration and computes all rows.
std::vector<ScanRow> run_scan(const std::filesystem::path& scan_cfg);

/// `point,alpha_i,alpha_c,beta_i,beta_c,u_i0,u_c0,a,b,disc,regime,max_growth`
void write_scan_csv(const std::filesystem::path& path, const std::vector<ScanRow>& rows);
std::vector<ScanRow> read_scan_csv(const std::filesystem::path& path);

} // namespace efluid::cli
