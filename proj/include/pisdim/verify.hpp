#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pisdim/metric_dim.hpp"
#include "pisdim/ring_model.hpp"

namespace pisdim {

struct VerifyRow {
  std::string spec;  // canonical "[c1,...]"
  std::uint64_t vertices = 0;
  std::optional<int> diameter;
  std::optional<std::int64_t> formula;
  std::string theorem;  // empty when not covered
  std::optional<std::int64_t> constructed;
  std::optional<bool> constructed_resolving;
  std::optional<std::int64_t> exact;  // set only when the search completed
  std::string status;                 // exact / upper_bound / infeasible_budget / skipped / error
  std::optional<std::int64_t> twin;
  std::optional<std::int64_t> info;
  bool all_agree = true;
  std::int64_t millis = 0;
  std::string note;

  friend bool operator==(const VerifyRow&, const VerifyRow&) = default;
};

struct VerifyOptions {
  std::chrono::milliseconds budget{600'000};
  std::uint64_t exact_cap = 100;  // skip the exact stage above this many vertices
  unsigned threads = 1;
};

enum class Family { Reduced, Three, Chain, Custom };

Family parse_family(std::string_view name);

// Parameters per family:
//   reduced, three: "a..b" or "n" (component count; defaults 3..6 and 1..4)
//   chain:          "c1,c2,...:max_product" (default "4,5:80"), all
//                   nondecreasing multisets of the listed counts
//   custom:         ring specs separated by ';'
std::vector<RingSpec> family_specs(Family family, std::string_view params);

VerifyRow verify_spec(const RingSpec& spec, const VerifyOptions& options = {});
std::vector<VerifyRow> run_family(Family family, std::string_view params, const VerifyOptions& options = {});

// [3,2] and [3,2,2], with the side-condition-free mixed formula in the note.
std::vector<VerifyRow> run_counterexamples(const VerifyOptions& options = {});

enum class ReportFormat { Csv, Json, Markdown };
ReportFormat parse_report_format(std::string_view name);

std::string emit_report(const std::vector<VerifyRow>& rows, ReportFormat format);
std::vector<VerifyRow> parse_report_json(std::string_view text);

}  // namespace pisdim
