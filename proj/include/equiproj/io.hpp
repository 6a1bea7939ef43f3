#pragma once

#include "equiproj/dense_matrix.hpp"
#include "equiproj/groups.hpp"
#include "equiproj/projector_svd.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace equiproj {

// ---------------------------------------------------------------------------
// File formats: DMAT1 dense-matrix text, group-description JSON, verification
// report JSON, projector metadata JSON, PGM images, and CSV tables. All
// writers are deterministic: identical values produce identical bytes.
// ---------------------------------------------------------------------------

// --- DMAT1 ------------------------------------------------------------------
// Line 1: the magic "DMAT1". Line 2: "<rows> <cols>". Then rows lines of cols
// space-separated reals printed with 17 significant digits, which makes the
// write→read→write cycle bit-for-bit stable for IEEE doubles.

void write_dmat(std::ostream& os, const DenseMatrix& m);
void write_dmat(const std::string& path, const DenseMatrix& m);
DenseMatrix read_dmat(std::istream& is);
DenseMatrix read_dmat(const std::string& path);

/// 17-significant-digit decimal rendering used across all text formats.
std::string format_real(double v);

// --- group descriptions -------------------------------------------------------
// JSON schema: {"kind": string, "params": {…}, "r_g"?: number,
//               "generators_in"?: [[[…]]], "generators_out"?: [[[…]]]}.
// Catalog kinds take their parameters from "params" (so_n: {"n"};
// cyclic_grid: {"k","n_rot"}; cyclic_vec / shift_circulant: {"n"}) and must
// not supply explicit generators; "custom" requires generators_in and r_g.
// An "r_g" override is accepted for continuous kinds only. Unknown keys are
// rejected.

GroupSpec parse_group_spec(const std::string& json_text);
GroupSpec read_group_spec(const std::string& path);

// --- verification reports -----------------------------------------------------

struct ReportFile {
    std::string command;
    std::string group;
    std::string route;
    double cutoff_b = 0.0;
    std::optional<double> softness;
    std::vector<double> spectrum;
    double max_relative_error = 0.0;
    double bound_eta = 0.0;
    double fitted_quadratic = 0.0;
    bool pass = false;
    // Name → seconds; serialized only when nonempty. Excluded from the
    // byte-determinism guarantee.
    std::vector<std::pair<std::string, double>> timings;
};

std::string report_to_json(const ReportFile& report);
void write_report(const std::string& path, const ReportFile& report);

// --- projector metadata sidecar ------------------------------------------------

/// JSON next to a projector DMAT: group label, kind (inv|eq), route, cutoff,
/// requested softness (when used), smoothing scale (when used), shape, and
/// the (σ, γ) spectrum.
std::string projector_meta_json(const Projector& p, const std::string& group,
                                const std::string& kind,
                                std::optional<double> softness);
void write_projector_meta(const std::string& path, const Projector& p,
                          const std::string& group, const std::string& kind,
                          std::optional<double> softness);

// --- images --------------------------------------------------------------------

/// PGM P2 with linear scaling (min → 0, max → 255; constant images map to 0)
/// plus a JSON sidecar at path + ".json" recording the scaling bounds.
void write_pgm_with_sidecar(const std::string& path, const DenseMatrix& image);

// --- CSV -------------------------------------------------------------------------

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

} // namespace equiproj
