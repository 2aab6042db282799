#include "pisdim/verify.hpp"

#include <sstream>

#include "json.hpp"
#include "pisdim/constructions.hpp"
#include "pisdim/error.hpp"

namespace pisdim {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

std::pair<int, int> parse_range(std::string_view params, int lo, int hi) {
  if (params.empty()) return {lo, hi};
  const std::string p(params);
  try {
    const auto dots = p.find("..");
    if (dots == std::string::npos) {
      const int n = std::stoi(p);
      return {n, n};
    }
    return {std::stoi(p.substr(0, dots)), std::stoi(p.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::SyntaxError, "expected 'a..b' or 'n', got '" + p + "'");
  }
}

void multisets(const std::vector<int>& values, std::size_t from, std::uint64_t product, std::uint64_t max_product,
               std::vector<int>& cur, std::vector<RingSpec>& out) {
  if (!cur.empty()) out.push_back(RingSpec::from_counts(cur));
  for (std::size_t i = from; i < values.size(); ++i) {
    const auto next = product * static_cast<std::uint64_t>(values[i]);
    if (next > max_product) continue;
    cur.push_back(values[i]);
    multisets(values, i, next, max_product, cur, out);
    cur.pop_back();
  }
}

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

template <typename T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>)
    return *v ? "true" : "false";
  else
    return std::to_string(*v);
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "reduced") return Family::Reduced;
  if (name == "three") return Family::Three;
  if (name == "chain") return Family::Chain;
  if (name == "custom" || name == "custom-list") return Family::Custom;
  throw Error(ErrorKind::SyntaxError, "unknown family '" + std::string(name) + "'");
}

std::vector<RingSpec> family_specs(Family family, std::string_view params) {
  std::vector<RingSpec> out;
  switch (family) {
    case Family::Reduced:
    case Family::Three: {
      const bool reduced = family == Family::Reduced;
      const auto [lo, hi] = parse_range(params, reduced ? 3 : 1, reduced ? 6 : 4);
      if (lo < 1 || hi > 64) throw Error(ErrorKind::SyntaxError, "component count out of range");
      for (int n = lo; n <= hi; ++n) out.push_back(RingSpec::from_counts(std::vector<int>(n, reduced ? 2 : 3)));
      break;
    }
    case Family::Chain: {
      std::string p(params.empty() ? std::string_view("4,5:80") : params);
      const auto colon = p.find(':');
      std::uint64_t max_product = 80;
      std::vector<int> values;
      try {
        if (colon != std::string::npos) max_product = std::stoull(p.substr(colon + 1));
        std::stringstream ss(p.substr(0, colon));
        for (std::string item; std::getline(ss, item, ',');) values.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw Error(ErrorKind::SyntaxError, "expected 'c1,c2,...:max_product', got '" + p + "'");
      }
      std::ranges::sort(values);
      const auto [first, last] = std::ranges::unique(values);
      values.erase(first, last);
      if (values.empty() || values.front() < 2) throw Error(ErrorKind::SyntaxError, "ideal counts must be >= 2");
      std::vector<int> cur;
      multisets(values, 0, 1, max_product, cur, out);
      std::ranges::stable_sort(out, [](const RingSpec& a, const RingSpec& b) {
        return std::pair(a.arity(), a.counts()) < std::pair(b.arity(), b.counts());
      });
      break;
    }
    case Family::Custom: {
      std::string_view rest = params;
      while (!rest.empty()) {
        const auto semi = rest.find(';');
        const auto item = rest.substr(0, semi);
        if (item.find_first_not_of(" \t") != std::string_view::npos) out.push_back(parse_ring_spec(item));
        if (semi == std::string_view::npos) break;
        rest = rest.substr(semi + 1);
      }
      break;
    }
  }
  return out;
}

VerifyRow verify_spec(const RingSpec& spec, const VerifyOptions& options) {
  const auto start = Clock::now();
  VerifyRow row;
  row.spec = spec.canonical();
  row.vertices = spec.vertex_count();

  const auto formula = formula_metric_dim(spec);
  if (formula) {
    row.formula = formula->value;
    row.theorem = std::string(theorem_name(formula->theorem));
  }

  try {
    const auto g = build(spec);
    const auto d = all_pairs_distances(g.graph, options.threads);
    row.diameter = diameter(d);
    row.twin = static_cast<std::int64_t>(twin_lower_bound(twin_partition(g.graph)));
    row.info = static_cast<std::int64_t>(info_lower_bound(g.graph, d));

    if (formula) {
      const auto w = construct_resolving(spec);
      row.constructed = static_cast<std::int64_t>(w.members.size());
      row.constructed_resolving = static_cast<bool>(is_resolving(d, w.indices(spec)));
    }

    if (row.vertices <= options.exact_cap) {
      const auto r = metric_dimension_exact(g.graph, d, {options.budget, options.threads});
      row.status = std::string(status_name(r.status));
      if (r.status == SolveStatus::Exact) {
        row.exact = static_cast<std::int64_t>(r.size);
      } else if (r.status == SolveStatus::UpperBound) {
        row.note = "best found " + std::to_string(r.size) + " within budget";
      }
    } else {
      row.status = "skipped";
      row.note = "exact stage skipped: " + std::to_string(row.vertices) + " vertices above cap " +
                 std::to_string(options.exact_cap);
    }
  } catch (const Error& e) {
    row.status = "error";
    row.note = e.what();
  }

  std::vector<std::int64_t> values;
  for (const auto& v : {row.formula, row.constructed, row.exact})
    if (v) values.push_back(*v);
  row.all_agree = std::ranges::all_of(values, [&](auto x) { return x == values.front(); });
  row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  return row;
}

std::vector<VerifyRow> run_family(Family family, std::string_view params, const VerifyOptions& options) {
  std::vector<VerifyRow> rows;
  for (const auto& spec : family_specs(family, params)) rows.push_back(verify_spec(spec, options));
  return rows;
}

std::vector<VerifyRow> run_counterexamples(const VerifyOptions& options) {
  std::vector<VerifyRow> rows;
  for (const char* text : {"Z4 x Z2", "Z4 x Z2 x Z2"}) {
    const auto spec = parse_ring_spec(text);
    auto row = verify_spec(spec, options);
    const auto naive = mixed_formula_unchecked(spec);
    std::string note = std::string(text) + ": group sizes (" + std::to_string(spec.n_big()) + "," +
                       std::to_string(spec.n_three()) + "," + std::to_string(spec.n_field()) +
                       ") violate the mixed side condition; mixed formula without it gives " +
                       std::to_string(naive);
    if (row.exact) note += (naive == *row.exact ? ", equal to exact " : ", exact is ") + std::to_string(*row.exact);
    row.note = row.note.empty() ? note : row.note + "; " + note;
    rows.push_back(std::move(row));
  }
  return rows;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "md" || name == "markdown") return ReportFormat::Markdown;
  throw Error(ErrorKind::UnknownFormat, "unknown report format '" + std::string(name) + "'");
}

std::string emit_report(const std::vector<VerifyRow>& rows, ReportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ReportFormat::Csv:
      os << "spec,V,diam,formula,constructed,resolving,exact,twin,info,agree,millis\n";
      for (const auto& r : rows)
        os << '"' << r.spec << "\"," << r.vertices << ',' << cell(r.diameter) << ',' << cell(r.formula) << ','
           << cell(r.constructed) << ',' << cell(r.constructed_resolving) << ',' << cell(r.exact) << ','
           << cell(r.twin) << ',' << cell(r.info) << ',' << (r.all_agree ? "true" : "false") << ',' << r.millis
           << '\n';
      break;
    case ReportFormat::Json: {
      json doc = json::array();
      for (const auto& r : rows)
        doc.push_back({{"spec", r.spec},
                       {"V", r.vertices},
                       {"diameter", opt(r.diameter)},
                       {"formula", opt(r.formula)},
                       {"theorem", r.theorem},
                       {"constructed", opt(r.constructed)},
                       {"constructed_resolving", opt(r.constructed_resolving)},
                       {"exact", opt(r.exact)},
                       {"status", r.status},
                       {"bounds", {{"twin", opt(r.twin)}, {"info", opt(r.info)}}},
                       {"all_agree", r.all_agree},
                       {"millis", r.millis},
                       {"note", r.note}});
      os << doc.dump(2) << '\n';
      break;
    }
    case ReportFormat::Markdown:
      os << "| spec | V | diam | formula | theorem | constructed | resolving | exact | status | twin | info | agree "
            "| ms | note |\n";
      os << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
      for (const auto& r : rows)
        os << "| " << r.spec << " | " << r.vertices << " | " << cell(r.diameter) << " | " << cell(r.formula)
           << " | " << r.theorem << " | " << cell(r.constructed) << " | " << cell(r.constructed_resolving) << " | "
           << cell(r.exact) << " | " << r.status << " | " << cell(r.twin) << " | " << cell(r.info) << " | "
           << (r.all_agree ? "yes" : "**no**") << " | " << r.millis << " | " << r.note << " |\n";
      break;
  }
  return os.str();
}

std::vector<VerifyRow> parse_report_json(std::string_view text) {
  std::vector<VerifyRow> rows;
  try {
    const auto doc = json::parse(text);
    if (!doc.is_array()) throw Error(ErrorKind::MalformedDocument, "report must be a JSON array");
    for (const auto& j : doc) {
      VerifyRow r;
      r.spec = j.at("spec").get<std::string>();
      r.vertices = j.at("V").get<std::uint64_t>();
      r.diameter = get_opt<int>(j, "diameter");
      r.formula = get_opt<std::int64_t>(j, "formula");
      r.theorem = j.value("theorem", "");
      r.constructed = get_opt<std::int64_t>(j, "constructed");
      r.constructed_resolving = get_opt<bool>(j, "constructed_resolving");
      r.exact = get_opt<std::int64_t>(j, "exact");
      r.status = j.value("status", "");
      if (j.contains("bounds")) {
        r.twin = get_opt<std::int64_t>(j["bounds"], "twin");
        r.info = get_opt<std::int64_t>(j["bounds"], "info");
      }
      r.all_agree = j.at("all_agree").get<bool>();
      r.millis = j.at("millis").get<std::int64_t>();
      r.note = j.value("note", "");
      rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedDocument, e.what());
  }
  return rows;
}

}  // namespace pisdim
