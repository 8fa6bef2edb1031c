#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "listrec/frs.hpp"
#include "listrec/instance.hpp"
#include "listrec/prune.hpp"
#include "listrec/recovery.hpp"
#include "listrec/sumset.hpp"
#include "listrec/verify.hpp"
#include "listrec/vspace.hpp"

namespace listrec {

/// Key order is preserved so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

// Conventions: rationals are "a/b" strings, coordinates in pinned/agreement
// sets are 1-based, codewords nest as n arrays of s integers, and subspace
// basis rows / sum-set vectors stay flat (length n*s).

Json shape_to_json(const Shape& shape);
Shape shape_from_json(const Json& j);

Json rational_to_json(const Rational& x);
Rational rational_from_json(const Json& j);

Json code_to_json(const FrsCode& code);
FrsCode code_from_json(const Json& j);

Json codeword_to_json(const Shape& shape, const Vec& v);
Vec codeword_from_json(const Shape& shape, const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

Json subspace_to_json(const Subspace& space);
Subspace subspace_from_json(const Json& j);

Json affine_to_json(const AffineSpace& space);
AffineSpace affine_from_json(const Json& j);

Json trace_to_json(const PruneTrace& trace);
PruneTrace trace_from_json(const Json& j);

Json sumset_to_json(const SumSet& p);
SumSet sumset_from_json(const Json& j);

Json instance_to_json(const ListRecoveryInstance& inst);
ListRecoveryInstance instance_from_json(const Json& j);

/// {config, code_params, step1, runs, coverage?, bounds}. coverage appears
/// only when planted targets are supplied; covered says whether every target
/// is represented by some run's sum-set.
Json recovery_report(const FrsCode& code, const ListRecoveryInstance& inst,
                     const RecoveryOutput& out, const std::optional<std::vector<Vec>>& planted,
                     std::optional<bool> covered);

Json design_report_json(const DesignReport& report);
Json estimator_report_json(const EstimatorReport& report);
Json monotonicity_report_json(const MonotonicityReport& report);
Json bounds_table_json(const std::vector<BoundsRow>& table);

/// Write to a sibling temp file, then rename over the target, so a failed run
/// never leaves a partial file.
void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

}  // namespace listrec
