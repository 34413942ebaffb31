#include "sftpij/gallery.hpp"

#include <filesystem>
#include <sstream>

namespace sftpij {

std::vector<GalleryEntry> load_gallery(const std::string& dir) {
  nlohmann::json manifest = load_json_file(dir + "/gallery.json");
  std::vector<GalleryEntry> entries;
  for (const auto& j : manifest.at("entries")) {
    GalleryEntry e;
    e.name = j.at("name").get<std::string>();
    e.matrix_file = j.value("matrix", "");
    e.external = j.value("external", false);
    e.note = j.value("note", "");
    e.measure_mode = j.value("measure", "parry");
    e.expected_verdict = j.value("expected_verdict", "");
    e.expected_witness = j.value("expected_witness", "");
    if (j.contains("expect_period")) e.expect_period = j.at("expect_period").get<int>();
    if (j.contains("expect_integer_perron"))
      e.expect_integer_perron = j.at("expect_integer_perron").get<bool>();
    if (j.contains("expect_uniform_n"))
      e.expect_uniform_n = j.at("expect_uniform_n").get<int>();
    if (j.contains("expect_mk_constant_k"))
      e.expect_mk_constant_k = j.at("expect_mk_constant_k").get<int>();
    if (j.contains("rules"))
      for (const auto& r : j.at("rules")) e.rule_files.push_back(r.get<std::string>());
    if (j.contains("expect_rules_verified_depth"))
      e.expect_rules_verified_depth = j.at("expect_rules_verified_depth").get<int>();
    if (j.contains("expect_pij_star_q"))
      e.expect_pij_star_q = j.at("expect_pij_star_q").get<int>();
    entries.push_back(std::move(e));
  }
  return entries;
}

namespace {

void expect(GalleryOutcome& out, const std::string& what, bool ok,
            const std::string& detail) {
  std::ostringstream os;
  os << (ok ? "  ok   " : "  FAIL ") << what << ": " << detail;
  out.lines.push_back(os.str());
  if (!ok) out.matched = false;
}

}  // namespace

GalleryOutcome run_gallery_entry(const GalleryEntry& entry, const std::string& dir,
                                 std::int64_t budget) {
  GalleryOutcome out;
  out.name = entry.name;
  std::string matrix_path = dir + "/" + entry.matrix_file;
  if (entry.external && !std::filesystem::exists(matrix_path)) {
    out.skipped = true;
    out.lines.push_back("  skipped: matrix externally sourced (" + entry.note + ")");
    return out;
  }
  AdjacencyMatrix m = matrix_from_json(load_json_file(matrix_path));

  if (entry.expect_period) {
    int per = period(m);
    expect(out, "period", per == *entry.expect_period,
           "got " + std::to_string(per) + ", expected " + std::to_string(*entry.expect_period));
  }
  if (entry.expect_uniform_n) {
    auto n = is_uniform(m);
    expect(out, "uniform", n && *n == *entry.expect_uniform_n,
           n ? "n = " + std::to_string(*n) : "not uniform");
  }
  if (entry.expect_integer_perron) {
    PerronData pd = perron(m);
    expect(out, "integer-perron", pd.integer == *entry.expect_integer_perron,
           pd.integer ? "integer " + pd.integer_value.str()
                      : "bracket [" + rational_to_string(pd.lo) + ", " +
                            rational_to_string(pd.hi) + "]");
  }

  PijReport rep = run_battery(m);
  if (!entry.expected_verdict.empty())
    expect(out, "battery verdict", rep.verdict() == entry.expected_verdict,
           "got " + rep.verdict() + ", expected " + entry.expected_verdict);
  if (!entry.expected_witness.empty())
    expect(out, "battery witness", rep.first_failure() == entry.expected_witness,
           "first failing condition: " +
               (rep.first_failure().empty() ? "<none>" : rep.first_failure()));
  if (entry.expect_mk_constant_k) {
    const CheckResult* mk = rep.find("mk-constant");
    std::string want = "M^" + std::to_string(*entry.expect_mk_constant_k);
    bool ok = mk && mk->status == CheckStatus::pass &&
              mk->witness.find(want + " ") != std::string::npos;
    expect(out, "mk-constant", ok, mk ? mk->witness : "check missing");
  }

  if (!entry.rule_files.empty()) {
    MarkovMeasure mu = entry.measure_mode == "uniform"
                           ? MarkovMeasure::uniform_measure(m)
                           : MarkovMeasure(m, perron(m));
    for (const auto& rf : entry.rule_files) {
      LocalRule rule = rule_from_json(load_json_file(dir + "/" + rf));
      if (entry.expect_rules_verified_depth) {
        JoiningVerdict v = verify_pij(mu, rule, *entry.expect_rules_verified_depth, budget);
        expect(out, "rule " + rf, v.verified, v.summary());
      }
      if (entry.expect_pij_star_q) {
        auto q = check_pij_star(mu, rule, std::max(2, *entry.expect_pij_star_q), budget);
        expect(out, "pij-star " + rf, q && *q == *entry.expect_pij_star_q,
               q ? "q = " + std::to_string(*q) : "no q found");
      }
    }
  }
  return out;
}

}  // namespace sftpij
